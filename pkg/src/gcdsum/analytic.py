"""High-precision special functions and constants.

Everything here runs on an ``mpmath.MPContext`` owned by a
:class:`PrecisionContext`, never on the global ``mpmath.mp``, so several
precisions can coexist in one process and a context can be shared read-only
between threads.

Bernoulli numbers are exact :class:`fractions.Fraction` values (always in
lowest terms with a positive denominator).  ``log_gamma`` is a shifted
Stirling series and ``zeta``/``hurwitz_zeta`` are Euler-Maclaurin sums; none
of them calls the corresponding mpmath routine, so mpmath's own
``loggamma``/``zeta`` stay usable as independent oracles in the tests.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

import mpmath

__all__ = [
    "PrecisionContext",
    "default_context",
    "bernoulli_number",
    "bernoulli_poly",
    "log_gamma",
    "digamma",
    "zeta",
    "hurwitz_zeta",
    "euler_gamma",
    "theta_saw",
    "gauss_log_gamma_sum",
    "LogGammaGrid",
    "BERNOULLI_CAP",
]

BERNOULLI_CAP = 200
GUARD_DIGITS = 10


class PrecisionContext:
    """Working precision plus the tolerance derived from it.

    ``digits`` is the certified precision; arithmetic runs with
    ``GUARD_DIGITS`` extra digits.  ``identity_tol`` is ``10**-(digits-10)``.
    """

    def __init__(self, digits: int = 40, em_cutoff: int | None = None):
        digits = int(digits)
        if digits < 20:
            raise ValueError(f"digits must be >= 20, got {digits}")
        self.digits = digits
        self.mp = mpmath.MPContext()
        self.mp.dps = digits + GUARD_DIGITS
        self.identity_tol = self.mp.mpf(10) ** (-(digits - 10))
        # Euler-Maclaurin head length; None selects it from the precision.
        self.em_cutoff = em_cutoff
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"PrecisionContext(digits={self.digits})"

    # -- conversions --------------------------------------------------------

    def real(self, x):
        """Convert int/Fraction/float/str/mpf to a working-precision real."""
        if isinstance(x, Fraction):
            return self.mp.mpf(x.numerator) / x.denominator
        if isinstance(x, self.mp.mpf):
            return x
        return self.mp.mpf(x)

    @property
    def eps(self):
        return self.mp.mpf(2) ** (-self.mp.prec)

    def cached(self, key, factory):
        """Write-once cache; the factory may run twice under a race but the
        stored value is the first one written."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = factory()
        with self._lock:
            return self._cache.setdefault(key, value)

    # -- cached constants ---------------------------------------------------

    def log(self, n: int):
        """ln n for a positive integer, memoized."""
        if n == 1:
            return self.mp.zero
        table = self._cache.get("ln")
        if table is None:
            table = self.cached("ln", dict)
        v = table.get(n)
        if v is None:
            v = self.mp.log(n)
            table[n] = v
        return v

    @property
    def pi(self):
        return self.cached("pi", lambda: +self.mp.pi)

    @property
    def log_sqrt_2pi(self):
        return self.cached("lsq2pi", lambda: self.mp.log(2 * self.mp.pi) / 2)

    @property
    def log_2pi(self):
        return self.cached("l2pi", lambda: self.mp.log(2 * self.mp.pi))


_DEFAULT: PrecisionContext | None = None


def default_context() -> PrecisionContext:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = PrecisionContext()
    return _DEFAULT


# -- Bernoulli numbers ----------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_table(n_max: int) -> tuple[Fraction, ...]:
    # Akiyama-Tanigawa; it yields the B_1 = +1/2 convention, flipped below.
    out = []
    row: list[Fraction] = []
    for m in range(n_max + 1):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    if n_max >= 1:
        out[1] = -out[1]
    return tuple(out)


def bernoulli_number(n: int) -> Fraction:
    """Exact B_n with B_1 = -1/2 (generating function t e^{xt}/(e^t-1) at x=0)."""
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > BERNOULLI_CAP:
        raise ValueError(f"Bernoulli index {n} exceeds cap {BERNOULLI_CAP}")
    return _bernoulli_table(BERNOULLI_CAP)[n]


def bernoulli_poly(m: int, x, ctx: PrecisionContext | None = None):
    """B_m(x) = sum_k C(m,k) B_k x^(m-k).

    Exact (a Fraction) for int/Fraction ``x``; a working-precision real
    otherwise.
    """
    if m < 0 or m > BERNOULLI_CAP:
        raise ValueError(f"m={m} outside [0, {BERNOULLI_CAP}]")
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        acc = Fraction(0)
        for k in range(m + 1):
            acc = acc * x + math.comb(m, k) * bernoulli_number(k)
        return acc
    ctx = ctx or default_context()
    x = ctx.real(x)
    acc = ctx.mp.zero
    for k in range(m + 1):
        acc = acc * x + ctx.real(math.comb(m, k) * bernoulli_number(k))
    return acc


def _bernoulli_real(ctx: PrecisionContext, n: int):
    return ctx.cached(("B", n), lambda: ctx.real(bernoulli_number(n)))


# -- log Gamma and digamma ------------------------------------------------------

def _stirling_coefficients(ctx: PrecisionContext) -> list:
    """B_2k / (2k (2k-1)) for k = 1.. up to the Bernoulli cap."""
    return ctx.cached("stirling", lambda: [
        ctx.real(bernoulli_number(2 * k)) / ((2 * k) * (2 * k - 1))
        for k in range(1, BERNOULLI_CAP // 2 + 1)])


def _stirling_shift(ctx: PrecisionContext) -> int:
    # The smallest Stirling term is about exp(-2 pi z); shift z past that.
    return int(0.37 * (ctx.mp.dps + 2)) + 2


def log_gamma(x, ctx: PrecisionContext | None = None):
    """ln Gamma(x) for real x > 0.

    Shift x up to x + K >= K0, sum the Stirling series there, then subtract
    ln(x (x+1) ... (x+K-1)).
    """
    ctx = ctx or default_context()
    mp = ctx.mp
    if isinstance(x, (int, Fraction)):
        if x <= 0:
            raise ValueError(f"log_gamma needs x > 0, got {x}")
        if x == 1 or x == 2:
            return mp.zero
    k0 = _stirling_shift(ctx)
    log_prod = None
    if isinstance(x, (int, Fraction)) and x < 4 * k0:
        # exact shift: x (x+1) ... (x+K-1) = prod(p + i q) / q^K
        p, q = Fraction(x).numerator, Fraction(x).denominator
        # integer shifts are cheap, so go further and shorten the series
        K = 4 * k0 - int(x)
        num = 1
        for i in range(K):
            num *= p + i * q
        log_prod = mp.log(num) - K * ctx.log(q) if q > 1 else mp.log(num)
        z = ctx.real(x + K)
    else:
        x = ctx.real(x)
        if x <= 0:
            raise ValueError(f"log_gamma needs x > 0, got {x}")
        if x == 1 or x == 2:
            return mp.zero
        z = x
        prod = mp.one
        while z < k0:
            prod *= z
            z += 1
        if prod != 1:
            log_prod = mp.log(prod)
    eps = ctx.eps
    inv = 1 / z
    inv2 = inv * inv
    series = mp.zero
    power = inv
    kmax = int(math.pi * float(z)) + 1
    for k, c in enumerate(_stirling_coefficients(ctx), start=1):
        term = c * power
        series += term
        if abs(term) < eps or k > kmax:
            break
        power *= inv2
    result = (z - 0.5) * mp.log(z) - z + ctx.log_sqrt_2pi + series
    if log_prod is not None:
        result -= log_prod
    return result


def digamma(x, ctx: PrecisionContext | None = None):
    """psi(x) = Gamma'/Gamma for real x > 0 (shift plus asymptotic series)."""
    ctx = ctx or default_context()
    mp = ctx.mp
    x = ctx.real(x)
    if x <= 0:
        raise ValueError("digamma needs x > 0")
    k0 = _stirling_shift(ctx)
    z = x
    shift = mp.zero
    while z < k0:
        shift += 1 / z
        z += 1
    eps = ctx.eps
    inv2 = 1 / (z * z)
    power = inv2
    acc = mp.log(z) - 1 / (2 * z)
    k = 1
    while True:
        term = _bernoulli_real(ctx, 2 * k) / (2 * k) * power
        acc -= term
        if abs(term) < eps or 2 * k > 2 * math.pi * float(z) + 2:
            break
        power *= inv2
        k += 1
    return acc - shift


def gauss_log_gamma_sum(n: int, ctx: PrecisionContext | None = None):
    """sum_{j=1}^{n} ln Gamma(j/n) via the Gauss product:
    ((n-1)/2) ln(2 pi) - (1/2) ln n.  The j = n term is ln Gamma(1) = 0."""
    ctx = ctx or default_context()
    return (n - 1) * ctx.log_sqrt_2pi - ctx.log(n) / 2


# -- zeta -------------------------------------------------------------------------

def _em_cutoff(ctx: PrecisionContext, cutoff: int | None) -> int:
    if cutoff is not None:
        return int(cutoff)
    if ctx.em_cutoff is not None:
        return ctx.em_cutoff
    return max(20, ctx.mp.dps)


def _euler_maclaurin(sigma, q, deriv: int, ctx: PrecisionContext, cutoff: int | None):
    """Euler-Maclaurin for sum_{n>=0} (n+q)^(-sigma) (and its sigma-derivative).

    Valid for any real sigma != 1 once the head length M is large enough; the
    correction series is summed until terms fall below the working epsilon.
    """
    mp = ctx.mp
    sigma = ctx.real(sigma)
    M = _em_cutoff(ctx, cutoff)
    q_is_one = isinstance(q, int) and q == 1
    q = ctx.real(q)
    head = []
    for n in range(M):
        if q_is_one:
            lg = ctx.log(n + 1)
        else:
            lg = mp.log(n + q)
        t = mp.exp(-sigma * lg)
        head.append(-t * lg if deriv else t)
    s = mp.fsum(head)
    a = M + q
    lna = mp.log(a)
    a_pow = mp.exp(-sigma * lna)  # a^-sigma
    sm1 = sigma - 1
    if deriv:
        s += -a * a_pow * lna / sm1 - a * a_pow / (sm1 * sm1)
        s += -a_pow * lna / 2
    else:
        s += a * a_pow / sm1 + a_pow / 2
    eps = ctx.eps * (1 + abs(s))
    inv_a2 = 1 / (a * a)
    # Rising factorial (sigma)_{2k-1} and its log-derivative.
    rising = sigma
    dlog = 1 / sigma if sigma != 0 else mp.zero
    power = a_pow / a  # a^(-sigma-1)
    fact = mp.mpf(2)  # (2k)!
    k = 1
    prev = None
    while True:
        coef = _bernoulli_real(ctx, 2 * k) / fact
        if deriv:
            term = coef * power * rising * (dlog - lna)
        else:
            term = coef * rising * power
        s += term
        mag = abs(term)
        if mag < eps:
            break
        if prev is not None and mag > prev and k > 4:
            raise ArithmeticError("Euler-Maclaurin series diverging; raise the cutoff")
        if 2 * k >= BERNOULLI_CAP - 2:
            raise ArithmeticError("Euler-Maclaurin correction exceeded the Bernoulli cap")
        prev = mag
        for extra in (2 * k - 1, 2 * k):
            rising *= sigma + extra
            dlog += 1 / (sigma + extra)
        power *= inv_a2
        fact *= (2 * k + 1) * (2 * k + 2)
        k += 1
    return s


def zeta(sigma, deriv: int = 0, ctx: PrecisionContext | None = None, cutoff: int | None = None):
    """Riemann zeta (deriv=0) or zeta' (deriv=1) at a real argument.

    deriv=0 accepts sigma in (0,1) or (1, inf); deriv=1 needs sigma > 1.
    """
    ctx = ctx or default_context()
    if deriv not in (0, 1):
        raise ValueError("deriv must be 0 or 1")
    s = ctx.real(sigma)
    if s == 1:
        raise ValueError("zeta has a pole at 1")
    if s <= 0:
        raise ValueError(f"zeta needs sigma > 0, got {sigma}")
    if deriv == 1 and s <= 1:
        raise ValueError("zeta' is only provided for sigma > 1")
    if cutoff is None:
        key = ("zeta", deriv, s)
        return ctx.cached(key, lambda: _euler_maclaurin(s, 1, deriv, ctx, None))
    return _euler_maclaurin(s, 1, deriv, ctx, cutoff)


def hurwitz_zeta(sigma, q, ctx: PrecisionContext | None = None, cutoff: int | None = None):
    """Hurwitz zeta sum_{n>=0} (n+q)^-sigma for real sigma > 1, q > 0."""
    ctx = ctx or default_context()
    if ctx.real(sigma) <= 1:
        raise ValueError("hurwitz_zeta needs sigma > 1")
    return _euler_maclaurin(sigma, q, 0, ctx, cutoff)


def _hurwitz_integer_orders(q, n_max: int, ctx: PrecisionContext) -> dict:
    """{n: hurwitz_zeta(n, q)} for n = 2..n_max, sharing the head powers."""
    mp = ctx.mp
    M = int(0.4 * ctx.mp.dps) + 8
    inv = [1 / (q + i) for i in range(M)]
    powers = list(inv)
    out = {}
    a = M + q
    inv_a = 1 / a
    eps = ctx.eps
    for n in range(1, n_max + 1):
        if n >= 2:
            s = mp.fsum(powers)
            a_pow = inv_a ** n
            s += a * a_pow / (n - 1) + a_pow / 2
            rising = mp.mpf(n)
            power = a_pow * inv_a
            fact = mp.mpf(2)
            k = 1
            while True:
                term = _bernoulli_real(ctx, 2 * k) / fact * rising * power
                s += term
                if abs(term) < eps * abs(s):
                    break
                rising *= (n + 2 * k - 1) * (n + 2 * k)
                power *= inv_a * inv_a
                fact *= (2 * k + 1) * (2 * k + 2)
                k += 1
            out[n] = s
        powers = [p * v for p, v in zip(powers, inv)]
    return out


def euler_gamma(ctx: PrecisionContext | None = None):
    """Euler's constant from H_M - ln M with the Euler-Maclaurin tail."""
    ctx = ctx or default_context()

    def compute():
        mp = ctx.mp
        M = _em_cutoff(ctx, None)
        h = mp.fsum(mp.one / n for n in range(1, M + 1))
        g = h - ctx.log(M) - mp.one / (2 * M)
        inv2 = mp.one / (M * M)
        power = inv2
        eps = ctx.eps
        k = 1
        while True:
            term = _bernoulli_real(ctx, 2 * k) / (2 * k) * power
            g += term
            if abs(term) < eps:
                break
            power *= inv2
            k += 1
        return g

    return ctx.cached("euler_gamma", compute)


def theta_saw(x, ctx: PrecisionContext | None = None):
    """x - floor(x) - 1/2.  Exact for int/Fraction input."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x < 0:
            raise ValueError("theta_saw needs x >= 0")
        return x - math.floor(x) - Fraction(1, 2)
    ctx = ctx or default_context()
    x = ctx.real(x)
    if x < 0:
        raise ValueError("theta_saw needs x >= 0")
    return x - ctx.mp.floor(x) - ctx.mp.mpf(0.5)


# -- fixed-point batch log Gamma --------------------------------------------------

class LogGammaGrid:
    """ln Gamma(j/K) for j = 1..K in fixed point (integers scaled by 2**bits).

    Used only by brute-force oracles that need millions of values: per point
    it costs one short Horner pass of the Taylor expansion of ln Gamma(1+x)
    about the nearest of ``2**intervals_log2`` centres in [1, 2], minus a
    tabulated ln(j/K).  Integer accumulation makes every sum exact, so
    partitioned reductions are bit-identical whatever the chunking.
    """

    def __init__(self, ctx: PrecisionContext, intervals_log2: int = 9):
        self.ctx = ctx
        self.bits = int(math.ceil((ctx.digits + 5) * math.log2(10))) + 8
        self.q = intervals_log2
        half_width_log2 = intervals_log2 + 1
        # Taylor coefficients of ln Gamma about c satisfy |a_n| <= 2/n.
        self.degree = int(math.ceil((self.bits + 2) / half_width_log2))
        self._coeffs: list[list[int]] | None = None
        self._ln: list[int] = [0, 0]
        self._lock = threading.Lock()

    def _build_coeffs(self):
        ctx = self.ctx
        hi = PrecisionContext(ctx.digits + 15)
        scale = hi.mp.mpf(2) ** self.bits
        n_int = 1 << self.q
        coeffs = []
        for i in range(n_int):
            c = 1 + Fraction(2 * i + 1, 2 << self.q)
            cr = hi.real(c)
            row = [log_gamma(cr, hi), digamma(cr, hi)]
            hz = _hurwitz_integer_orders(cr, self.degree, hi)
            for n in range(2, self.degree + 1):
                row.append((-1) ** n * hz[n] / n)
            # Horner order: highest degree first.
            coeffs.append([int(hi.mp.nint(a * scale)) for a in reversed(row)])
        return coeffs

    def _ensure(self, k_max: int):
        with self._lock:
            if self._coeffs is None:
                self._coeffs = self._build_coeffs()
            if len(self._ln) <= k_max:
                self._extend_ln(k_max)

    def _extend_ln(self, n_max: int):
        # ln n from ln p over a smallest-prime-factor table.
        start = len(self._ln)
        spf = list(range(n_max + 1))
        for p in range(2, int(n_max ** 0.5) + 1):
            if spf[p] == p:
                for m in range(p * p, n_max + 1, p):
                    if spf[m] == m:
                        spf[m] = p
        hi = PrecisionContext(self.ctx.digits + 15)
        scale = hi.mp.mpf(2) ** self.bits
        ln = self._ln
        ln.extend([0] * (n_max + 1 - start))
        for n in range(2, n_max + 1):
            p = spf[n]
            if p == n:
                if n >= start:
                    ln[n] = int(hi.mp.nint(hi.mp.log(n) * scale))
            elif n >= start:
                ln[n] = ln[p] + ln[n // p]

    def ln_fixed(self, n: int) -> int:
        self._ensure(n)
        return self._ln[n]

    def values(self, K: int) -> list[int]:
        """[ln Gamma(j/K) * 2**bits rounded, j = 1..K] (index 0 holds j=1)."""
        self._ensure(K)
        bits, q = self.bits, self.q
        coeffs = self._coeffs
        ln = self._ln
        lnK = ln[K]
        shift = bits - q - 1
        out = [0] * K
        j = 1
        for i in range(1 << q):
            # j/K inside [i/2^q, (i+1)/2^q)
            j_end = min(K, -((-(i + 1) * K) >> q))
            if j >= j_end:
                continue
            row = coeffs[i]
            top, rest = row[0], row[1:]
            centre = (2 * i + 1) << shift
            for jj in range(j, j_end):
                t = ((jj << bits) // K) - centre
                acc = top
                for a in rest:
                    acc = ((acc * t) >> bits) + a
                out[jj - 1] = acc - ln[jj] + lnK
            j = j_end
        return out  # out[K-1] = ln Gamma(1) = 0

    def to_real(self, v: int):
        return self.ctx.mp.mpf(v) / (self.ctx.mp.mpf(2) ** self.bits)
