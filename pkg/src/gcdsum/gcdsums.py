"""Gcd-sum objects and the summatory left-hand sides.

Per-k objects: the Anderson-Apostol sums and their s-power variant, the
Cohen-Ramanujan sum, the Pillai function, and the log-Gamma and
Bernoulli weighted averages ``kappa`` and ``nu``.

Summatory sides, for a family f with F = f*mu:

* ``A_lhs``: sum over k <= x of k^-s sum_j ln Gamma(j/k^s) c(j, k)
* ``H_lhs``: sum over k <= x of k^-s sum_{j<k^s} B_m(j/k^s) c(j, k)
* ``M_lhs``: sum over k <= x of k^-s(r+1) sum_{j<=k^s} j^r c(j, k)

with c(j, k) = sum of F(d) over d | k, d^s | j.  Each has a fast path and a
direct path; the direct path enumerates j literally and serves as the oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

from .analytic import (
    LogGammaGrid,
    PrecisionContext,
    bernoulli_number,
    default_context,
    log_gamma,
)
from .arith import (
    ArithTable,
    dirichlet_convolve,
    divisor_lists,
    divisors,
    gcd_spower,
    mobius_of,
    sieve,
)

__all__ = [
    "FAMILIES",
    "SweepParams",
    "ResourceCapError",
    "DIRECT_CAP",
    "PER_K_CAP",
    "FamilyTables",
    "family_tables",
    "anderson_apostol",
    "anderson_apostol_spower",
    "cohen_ramanujan",
    "ramanujan_exponential",
    "pillai",
    "pillai_direct",
    "kappa",
    "nu",
    "A_terms",
    "A_lhs",
    "A_direct_terms_multi",
    "H_terms",
    "H_lhs",
    "M_terms",
    "M_lhs",
    "power_sum",
    "bernoulli_average",
    "cumulative",
    "kappa_values",
    "nu_values",
]

FAMILIES = ("phi_s", "psi_s", "phi_sa", "psi_sa", "one", "custom")

# Direct-path limits: total j-points per sweep, and j-points for one k.
DIRECT_CAP = 10 ** 8
PER_K_CAP = 10 ** 6

CHUNK = 8  # k values per work unit; fixed so results never depend on workers


class ResourceCapError(RuntimeError):
    """A direct (oracle) path would exceed its configured size limit."""


def _parse_a(a):
    if a is None:
        return None
    if isinstance(a, bool):
        raise TypeError("a must be numeric")
    if isinstance(a, Fraction):
        return a
    if isinstance(a, int):
        return Fraction(a)
    if isinstance(a, float):
        if not math.isfinite(a):
            raise ValueError("a must be finite")
        return Fraction(repr(a))
    return Fraction(str(a))


@dataclass(frozen=True)
class SweepParams:
    """Parameters shared by every sweep: s, a, m, r, the family and x grid."""

    s: int = 2
    a: Fraction | None = None
    m: int = 1
    r: int = 1
    family: str = "phi_s"
    x_grid: tuple = ()
    custom: ArithTable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "a", _parse_a(self.a))
        object.__setattr__(self, "x_grid", tuple(self.x_grid))
        if not isinstance(self.s, int) or self.s < 1:
            raise ValueError(f"s must be an integer >= 1, got {self.s!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be an integer >= 1, got {self.m!r}")
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be an integer >= 1, got {self.r!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family in ("phi_sa", "psi_sa"):
            if self.a is None:
                raise ValueError(f"family {self.family} needs a")
        if self.a is not None and not (-1 < self.a < 0):
            raise ValueError(f"a must lie in (-1, 0), got {self.a}")
        if self.family == "custom" and self.custom is None:
            raise ValueError("family 'custom' needs a table")
        xs = self.x_grid
        if any(x < 1 for x in xs):
            raise ValueError("grid points must be >= 1")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("grid must be strictly increasing")

    def with_(self, **kw) -> "SweepParams":
        d = dict(s=self.s, a=self.a, m=self.m, r=self.r, family=self.family,
                 x_grid=self.x_grid, custom=self.custom)
        d.update(kw)
        return SweepParams(**d)

    @property
    def x_max(self) -> int:
        return math.floor(self.x_grid[-1]) if self.x_grid else 1

    def family_label(self) -> str:
        if self.family == "custom":
            return self.custom.name
        return self.family


# -- family tables ----------------------------------------------------------------

class FamilyTables:
    """Lazily built tables for one family: f, F = f*mu, f*phi_s, f*Lambda, ..."""

    def __init__(self, params: SweepParams, N: int, ctx: PrecisionContext):
        self.params = params
        self.N = N
        self.ctx = ctx
        self._t: dict[str, ArithTable] = {}

    def _get(self, key: str, build: Callable[[], ArithTable]) -> ArithTable:
        t = self._t.get(key)
        if t is None:
            t = self._t[key] = build()
        return t

    def basic(self, name: str) -> ArithTable:
        return self._get(name, lambda: sieve(name, self.N, self.ctx))

    @property
    def f(self) -> ArithTable:
        p = self.params

        def build():
            if p.family == "custom":
                if p.custom.N < self.N:
                    raise ValueError(f"custom table has {p.custom.N} values, need {self.N}")
                return p.custom.truncate(self.N)
            if p.family == "one":
                return sieve("one", self.N, self.ctx)
            expo = p.s if p.family in ("phi_s", "psi_s") else p.s + p.a
            name = "jordan_phi" if p.family.startswith("phi") else "dedekind_psi_gen"
            return sieve(name, self.N, self.ctx, expo)
        return self._get("f", build)

    @property
    def F(self) -> ArithTable:
        """f*mu, the coefficient table of every left-hand side."""
        return self._get("F", lambda: dirichlet_convolve(self.f, self.basic("mobius")))

    @property
    def f_phi(self) -> ArithTable:
        return self._get("f_phi", lambda: dirichlet_convolve(
            self.f, sieve("jordan_phi", self.N, self.ctx, self.params.s)))

    @property
    def f_lambda(self) -> ArithTable:
        return self._get("f_lambda", lambda: dirichlet_convolve(self.f, self.basic("mangoldt")))


def family_tables(params: SweepParams, N: int, ctx: PrecisionContext | None = None) -> FamilyTables:
    """Per-context FamilyTables of length >= N (a longer cached set is reused)."""
    ctx = ctx or default_context()
    if params.family == "custom":
        return FamilyTables(params, N, ctx)
    store = ctx.cached("family-tables", dict)
    key = (params.family, params.s, params.a)
    ft = store.get(key)
    if ft is None or ft.N < N:
        ft = store[key] = FamilyTables(params.with_(x_grid=(), m=1, r=1), N, ctx)
    return ft


def _need(table: ArithTable, n: int):
    if n > table.N:
        raise ValueError(f"table {table.name} has length {table.N}, need {n}")


# -- per-k objects ----------------------------------------------------------------

def anderson_apostol(j: int, k: int, f: ArithTable, g: ArithTable):
    """s_k(j) = sum over d | gcd(k, j) of f(d) g(k/d)."""
    if j < 1 or k < 1:
        raise ValueError("j, k must be >= 1")
    _need(f, k)
    _need(g, k)
    return sum(f[d] * g[k // d] for d in divisors(math.gcd(k, j)))


def _iroot(n: int, s: int) -> int:
    r = round(n ** (1.0 / s))
    while r ** s > n:
        r -= 1
    while (r + 1) ** s <= n:
        r += 1
    return r


def anderson_apostol_spower(j: int, k: int, s: int, f: ArithTable, g: ArithTable):
    """s-power variant: sum of f(d) g(k/d) over d with d^s | (j, k^s)_s."""
    if j < 1 or k < 1:
        raise ValueError("j, k must be >= 1")
    _need(f, k)
    _need(g, k)
    root = _iroot(gcd_spower(j, k, s), s)
    return sum(f[d] * g[k // d] for d in divisors(root))


def cohen_ramanujan(j: int, k: int, s: int) -> int:
    """c_k^(s)(j) = sum over d^s | (j, k^s)_s of d^s mu(k/d), exactly."""
    if j < 1 or k < 1:
        raise ValueError("j, k must be >= 1")
    root = _iroot(gcd_spower(j, k, s), s)
    return sum(d ** s * mobius_of(k // d) for d in divisors(root))


def ramanujan_exponential(j: int, k: int, ctx: PrecisionContext | None = None):
    """c_k(j) as the sum of e(jh/k) over h <= k coprime to k (real part)."""
    ctx = ctx or default_context()
    mp = ctx.mp
    two_pi = 2 * ctx.pi
    return mp.fsum(mp.cos(two_pi * (h * j % k) / k) for h in range(1, k + 1) if math.gcd(h, k) == 1)


def pillai(n: int, f: ArithTable | None = None):
    """P_f(n) = sum over k <= n of f(gcd(k, n)), via sum_{d|n} f(d) phi(n/d)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if f is not None:
        _need(f, n)
    total = 0
    for d in divisors(n):
        e = n // d
        phi = sum(dd * mobius_of(e // dd) for dd in divisors(e))
        total += (d if f is None else f[d]) * phi
    return total


def pillai_direct(n: int, f: ArithTable | None = None):
    if f is not None:
        _need(f, n)
    return sum((math.gcd(k, n) if f is None else f[math.gcd(k, n)]) for k in range(1, n + 1))


def _check_per_k(K: int):
    if K > PER_K_CAP:
        raise ResourceCapError(f"direct loop over {K} points exceeds the per-k cap {PER_K_CAP}")


def _pairs(k: int, f: ArithTable, g: ArithTable):
    return [(d, f[d] * g[k // d]) for d in divisors(k)]


def kappa(k: int, s: int, f: ArithTable, g: ArithTable, ctx: PrecisionContext | None = None,
          mode: str = "closed"):
    """k^-s sum over j <= k^s of s_k^(s)(j) ln Gamma(j/k^s).

    ``closed`` uses the divisor-sum evaluation; ``direct`` loops over j.
    """
    ctx = ctx or default_context()
    _need(f, k)
    _need(g, k)
    mp = ctx.mp
    if k == 1:
        return mp.zero
    ks = k ** s
    if mode == "closed":
        l2 = ctx.log_sqrt_2pi
        t1 = mp.fsum(ctx.real(f[d]) / d ** s * g[k // d] for d in divisors(k))
        fg = mp.fsum(ctx.real(f[d] * g[k // d]) for d in divisors(k))
        flog = mp.fsum(ctx.real(f[d] * g[k // d]) * ctx.log(k // d) for d in divisors(k))
        return l2 * t1 - l2 * fg / ks - mp.mpf(s) / (2 * ks) * flog
    if mode != "direct":
        raise ValueError(f"unknown mode {mode!r}")
    _check_per_k(ks)
    coeff = _spower_coefficients(k, s, _pairs(k, f, g), ks, start=1)
    return mp.fsum(ctx.real(c) * log_gamma(ctx.real(Fraction(j, ks)), ctx)
                   for j, c in enumerate(coeff, start=1) if c) / ks


def _spower_coefficients(k: int, s: int, pairs, K: int, start: int) -> list:
    """c[j] for j = start..start+K-1: sum of w over (d, w) with d^s | j."""
    coeff = [0] * K
    for d, w in pairs:
        step = d ** s
        first = (-start) % step
        for idx in range(first, K, step):
            coeff[idx] += w
    return coeff


def _bernoulli_int_poly(m: int, K: int) -> tuple[list[int], int]:
    """Integer coefficients P (highest first) and D with B_m(j/K) = P(j)/D."""
    bs = [bernoulli_number(i) for i in range(m + 1)]
    den = 1
    for b in bs:
        den = den * b.denominator // math.gcd(den, b.denominator)
    # B_m(j/K) K^m = sum_i C(m,i) B_i K^i j^(m-i)
    coeffs = [int(comb(m, i) * bs[i] * den) * K ** i for i in range(m + 1)]
    return coeffs, den * K ** m


def _bernoulli_progression_sum(coeffs: list[int], K: int, step: int) -> int:
    """sum of P(j) over j = 0, step, 2 step, ... < K."""
    total = 0
    for j in range(0, K, step):
        acc = 0
        for c in coeffs:
            acc = acc * j + c
        total += acc
    return total


def nu(k: int, s: int, m: int, f: ArithTable, g: ArithTable, ctx: PrecisionContext | None = None,
       mode: str = "closed"):
    """k^-s sum over 0 <= j < k^s of B_m(j/k^s) s_k^(s)(j).

    ``closed`` is B_m sum_{d l = k} f(d) d^-s g(l) l^-ms; ``direct`` sums the
    Bernoulli polynomial over j with the coefficient read off d | k, d^s | j.
    """
    ctx = ctx or default_context()
    _need(f, k)
    _need(g, k)
    if mode == "closed":
        bm = bernoulli_number(m)
        if bm == 0:
            return ctx.mp.zero
        terms = [(f[d], g[k // d], Fraction(1, d ** s * (k // d) ** (m * s))) for d in divisors(k)]
        if all(isinstance(a, int) and isinstance(b, int) for a, b, _ in terms):
            return ctx.real(bm * sum(a * b * w for a, b, w in terms))
        return ctx.real(bm) * ctx.mp.fsum(ctx.real(a) * b * ctx.real(w) for a, b, w in terms)
    if mode != "direct":
        raise ValueError(f"unknown mode {mode!r}")
    K = k ** s
    _check_per_k(K)
    return bernoulli_average(k, s, m, _pairs(k, f, g), ctx)


def bernoulli_average(k: int, s: int, m: int, pairs, ctx: PrecisionContext):
    """k^-s sum_{0<=j<k^s} B_m(j/k^s) sum_{(d,w): d^s | j} w, by direct enumeration."""
    K = k ** s
    coeffs, den = _bernoulli_int_poly(m, K)
    exact = all(isinstance(w, (int, Fraction)) for _, w in pairs)
    parts = [(w, _bernoulli_progression_sum(coeffs, K, d ** s)) for d, w in pairs]
    if exact:
        return ctx.real(Fraction(sum(w * t for w, t in parts)) / (den * K))
    return ctx.mp.fsum(ctx.real(w) * t for w, t in parts) / (den * K)


# -- power sums -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _faulhaber(p: int) -> tuple[tuple[int, ...], int]:
    """Integer coefficients (highest power first) and denominator of sum_{i<n} i^p."""
    terms = [Fraction(comb(p + 1, i)) * bernoulli_number(i) / (p + 1) for i in range(p + 1)]
    den = 1
    for c in terms:
        den = den * c.denominator // math.gcd(den, c.denominator)
    # coefficient of n^(p+1-i); the constant term is zero
    return tuple(int(c * den) for c in terms) + (0,), den


def power_sum(p: int, n: int) -> int:
    """sum_{i=0}^{n-1} i^p (0^0 = 1) from the Bernoulli/Faulhaber formula."""
    if n <= 0:
        return 0
    coeffs, den = _faulhaber(p)
    acc = 0
    for c in coeffs:
        acc = acc * n + c
    q, r = divmod(acc, den)
    assert r == 0
    return q


@lru_cache(maxsize=None)
def _bernoulli_sum_coeffs(m: int) -> tuple[tuple[int, ...], int]:
    bs = [Fraction(comb(m, i)) * bernoulli_number(i) for i in range(m + 1)]
    den = 1
    for b in bs:
        den = den * b.denominator // math.gcd(den, b.denominator)
    return tuple(int(b * den) for b in bs), den


def _bernoulli_sum_scaled(m: int, n: int) -> tuple[int, int]:
    """(N, D) with W_m(n) = sum_{i<n} B_m(i/n) = N / (D n^m), via power sums."""
    coeffs, den = _bernoulli_sum_coeffs(m)
    num = sum(c * n ** i * power_sum(m - i, n) for i, c in enumerate(coeffs) if c)
    return num, den


def _bernoulli_sum(m: int, n: int) -> Fraction:
    num, den = _bernoulli_sum_scaled(m, n)
    return Fraction(num, den * n ** m)


# -- sweep machinery --------------------------------------------------------------

def _chunks(k_max: int):
    return [range(lo, min(lo + CHUNK, k_max + 1)) for lo in range(1, k_max + 1, CHUNK)]


def _map_k(fn: Callable[[int], object], k_max: int, workers: int) -> list:
    """[fn(1), ..., fn(k_max)] computed in fixed chunks, collected in k order."""
    def run(rng):
        return [fn(k) for k in rng]
    chunks = _chunks(k_max)
    if workers <= 1 or len(chunks) <= 1:
        parts = [run(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(run, chunks))
    return [v for part in parts for v in part]


def cumulative(terms: Sequence, ctx: PrecisionContext) -> list:
    """[0, t1, t1+t2, ...], summed left to right."""
    acc = ctx.mp.zero
    out = [acc]
    for t in terms:
        acc = acc + t
        out.append(acc)
    return out


def _direct_budget(k_max: int, s: int, cap: int):
    total = sum(k ** s for k in range(1, k_max + 1))
    if total > cap:
        raise ResourceCapError(f"direct path needs {total} points, cap is {cap}")


def _resolve(params: SweepParams, x, ctx, tables):
    ctx = ctx or default_context()
    k_max = math.floor(x)
    if k_max < 1:
        raise ValueError("x must be >= 1")
    if tables is None:
        tables = family_tables(params, max(k_max, params.x_max), ctx)
    _need(tables.F, k_max)
    return ctx, k_max, tables


def A_terms(k_max: int, params: SweepParams, mode: str = "gauss-fast", ctx=None, tables=None,
            workers: int = 1, cap: int = DIRECT_CAP, grid: LogGammaGrid | None = None) -> list:
    """Per-k contributions to A(x) for k = 1..k_max."""
    ctx, k_max, tables = _resolve(params, k_max, ctx, tables)
    if mode == "direct":
        return A_direct_terms_multi(k_max, params.s, [tables.F], ctx, workers, cap, grid)[0]
    if mode != "gauss-fast":
        raise ValueError(f"unknown mode {mode!r}")
    s, F, mp = params.s, tables.F.padded(), ctx.mp
    l2 = ctx.log_sqrt_2pi
    half_s = mp.mpf(s) / 2
    divs = divisor_lists(k_max)

    def term(k):
        if k == 1:
            return mp.zero
        acc = []
        for d in divs[k]:
            if not F[d]:
                continue
            e = k // d
            # Gauss product: sum_{l<n} ln Gamma(l/n) = (n-1) ln sqrt(2 pi) - (1/2) ln n
            acc.append(F[d] * ((e ** s - 1) * l2 - half_s * ctx.log(e)))
        return mp.fsum(acc) / k ** s

    return _map_k(term, k_max, workers)


def A_direct_terms_multi(k_max: int, s: int, F_tables: Sequence[ArithTable], ctx: PrecisionContext,
                         workers: int = 1, cap: int = DIRECT_CAP, grid: LogGammaGrid | None = None) -> list[list]:
    """Direct A terms for several coefficient tables sharing one ln Gamma grid per k."""
    _direct_budget(k_max, s, cap)
    grid = grid or ctx.cached("lggrid", lambda: LogGammaGrid(ctx))
    grid._ensure(k_max ** s)
    Fs = [t.padded() for t in F_tables]
    mp = ctx.mp
    divs = divisor_lists(k_max)
    scale = mp.mpf(2) ** grid.bits

    def term(k):
        K = k ** s
        vals = grid.values(K)
        # S_d = sum of ln Gamma(j/K) over j <= K with d^s | j
        sums = {d: sum(vals[d ** s - 1::d ** s]) for d in divs[k]}
        out = []
        for F in Fs:
            acc_int, acc_real = 0, []
            for d in divs[k]:
                w = F[d]
                if not w:
                    continue
                if isinstance(w, int):
                    acc_int += w * sums[d]
                else:
                    acc_real.append(w * sums[d])
            total = mp.fsum([mp.mpf(acc_int)] + acc_real) / scale
            out.append(total / K)
        return out

    rows = _map_k(term, k_max, workers)
    return [[row[i] for row in rows] for i in range(len(Fs))]


def A_lhs(x, params: SweepParams, mode: str = "gauss-fast", ctx=None, tables=None, workers: int = 1,
          cap: int = DIRECT_CAP):
    """A(x) with coefficients F = f*mu; ``direct`` enumerates every j <= k^s."""
    ctx, k_max, tables = _resolve(params, x, ctx, tables)
    return ctx.mp.fsum(A_terms(k_max, params, mode, ctx, tables, workers, cap))


def H_terms(k_max: int, params: SweepParams, mode: str = "power-sum", ctx=None, tables=None,
            workers: int = 1, cap: int = DIRECT_CAP) -> list:
    ctx, k_max, tables = _resolve(params, k_max, ctx, tables)
    s, m, F = params.s, params.m, tables.F.padded()
    divs = divisor_lists(k_max)
    if mode == "direct":
        _direct_budget(k_max, s, cap)
        return _map_k(lambda k: bernoulli_average(k, s, m, [(d, F[d]) for d in divs[k] if F[d]], ctx),
                      k_max, workers)
    if mode != "power-sum":
        raise ValueError(f"unknown mode {mode!r}")
    if m > 1 and m % 2 == 1:
        return [ctx.mp.zero] * k_max

    def term(k):
        # j = d^s l with 0 <= l < (k/d)^s, and j/k^s = l/(k/d)^s
        pairs = [(F[d], d, _bernoulli_sum_scaled(m, (k // d) ** s)) for d in divs[k] if F[d]]
        if not pairs:
            return ctx.mp.zero
        den = pairs[0][2][1]
        if all(isinstance(w, int) for w, _, _ in pairs):
            # common denominator D k^(sm) k^s since (k/d)^(sm) d^(sm) = k^(sm)
            num = sum(w * nb * d ** (s * m) for w, d, (nb, _) in pairs)
            return ctx.real(Fraction(num, den * k ** (s * m + s)))
        mp = ctx.mp
        return mp.fsum(w * (mp.mpf(nb * d ** (s * m)) / den) for w, d, (nb, _) in pairs) / mp.mpf(k) ** (s * m + s)

    return _map_k(term, k_max, workers)


def H_lhs(x, params: SweepParams, mode: str = "power-sum", ctx=None, tables=None, workers: int = 1,
          cap: int = DIRECT_CAP):
    """H_m(x): Bernoulli-weighted average of the coefficients c(j, k)."""
    ctx, k_max, tables = _resolve(params, x, ctx, tables)
    return ctx.mp.fsum(H_terms(k_max, params, mode, ctx, tables, workers, cap))


def M_terms(k_max: int, params: SweepParams, mode: str = "faulhaber", ctx=None, tables=None,
            workers: int = 1, cap: int = DIRECT_CAP) -> list:
    ctx, k_max, tables = _resolve(params, k_max, ctx, tables)
    s, r, F = params.s, params.r, tables.F.padded()
    divs = divisor_lists(k_max)
    if mode == "direct":
        _direct_budget(k_max, s, cap)

        def inner(k, d):
            step = d ** s
            return sum(j ** r for j in range(step, k ** s + 1, step))
    elif mode == "faulhaber":
        def inner(k, d):
            n = (k // d) ** s
            # sum_{l=1}^{n} (d^s l)^r
            return d ** (s * r) * (power_sum(r, n) + n ** r)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    def term(k):
        den = k ** (s * (r + 1))
        pairs = [(F[d], inner(k, d)) for d in divs[k] if F[d]]
        if all(isinstance(w, int) for w, _ in pairs):
            return ctx.real(Fraction(sum(w * t for w, t in pairs), den))
        return ctx.mp.fsum(w * t for w, t in pairs) / den

    return _map_k(term, k_max, workers)


def M_lhs(x, params: SweepParams, mode: str = "faulhaber", ctx=None, tables=None, workers: int = 1,
          cap: int = DIRECT_CAP):
    """M_r(x): power-weighted average of the coefficients c(j, k)."""
    ctx, k_max, tables = _resolve(params, x, ctx, tables)
    return ctx.mp.fsum(M_terms(k_max, params, mode, ctx, tables, workers, cap))


def kappa_values(N: int, s: int, F: ArithTable, ctx: PrecisionContext | None = None,
                 workers: int = 1) -> list:
    """[kappa(k; F, 1) for k = 1..N], the divisor-sum evaluation for g = 1."""
    ctx = ctx or default_context()
    _need(F, N)
    mp = ctx.mp
    Fp = F.padded()
    divs = divisor_lists(N)
    l2 = ctx.log_sqrt_2pi
    half_s = mp.mpf(s) / 2

    def term(k):
        if k == 1:
            return mp.zero
        ks = mp.mpf(k) ** s
        t1, fg, flog = [], [], []
        for d in divs[k]:
            w = Fp[d]
            if not w:
                continue
            wr = ctx.real(w)
            t1.append(wr / mp.mpf(d) ** s)
            fg.append(wr)
            flog.append(wr * ctx.log(k // d))
        return l2 * mp.fsum(t1) - l2 * mp.fsum(fg) / ks - half_s * mp.fsum(flog) / ks

    return _map_k(term, N, workers)


def nu_values(N: int, s: int, m: int, F: ArithTable, ctx: PrecisionContext | None = None,
              workers: int = 1) -> list:
    """[nu_m(k; F, 1) for k = 1..N] = B_m sum_{d l = k} F(d) d^-s l^-ms."""
    ctx = ctx or default_context()
    _need(F, N)
    mp = ctx.mp
    bm = bernoulli_number(m)
    if bm == 0:
        return [mp.zero] * N
    Fp = F.padded()
    divs = divisor_lists(N)
    B = ctx.real(bm)

    def term(k):
        acc = [ctx.real(Fp[d]) / (mp.mpf(d) ** s * mp.mpf(k // d) ** (m * s)) for d in divs[k] if Fp[d]]
        return B * mp.fsum(acc)

    return _map_k(term, N, workers)
