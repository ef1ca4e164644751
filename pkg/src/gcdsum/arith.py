"""Sieved arithmetic-function tables and Dirichlet-convolution machinery.

Tables are 1-indexed and immutable.  Integer-valued families stay exact
(Python ints); families with a real exponent, and the von Mangoldt function,
hold working-precision reals from the table's :class:`PrecisionContext`.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .analytic import PrecisionContext, default_context

__all__ = [
    "ArithTable",
    "FUNCTION_IDS",
    "parse_function_id",
    "sieve",
    "table_from_values",
    "dirichlet_convolve",
    "pointwise",
    "gcd_spower",
    "weighted_partial_sum",
    "prefix_sums",
    "dump_csv",
    "mobius_list",
    "smallest_prime_factors",
    "divisor_lists",
    "divisors",
    "mobius_of",
]

EXACT_INTEGER = "exact-integer"
EXACT_RATIONAL = "exact-rational"
REAL = "real"

FUNCTION_IDS = (
    "mobius", "abs_mobius", "mangoldt", "tau", "one", "unit",
    "id_a", "sigma_a", "jordan_phi", "dedekind_psi_gen",
)
_PARAMETRIZED = {"id_a", "sigma_a", "jordan_phi", "dedekind_psi_gen"}


@dataclass(frozen=True)
class ArithTable:
    """Values of an arithmetic function on 1..N.

    ``values[n-1]`` holds f(n); use ``table[n]`` for 1-based access.
    ``tags`` optionally carries exact side data (the (p, e) of each prime
    power for the von Mangoldt table).
    """

    name: str
    N: int
    values: tuple
    value_kind: str
    ctx: PrecisionContext | None = field(default=None, repr=False, compare=False)
    tags: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("table length must be >= 1")
        if len(self.values) != self.N:
            raise ValueError(f"{self.name}: expected {self.N} values, got {len(self.values)}")

    def __getitem__(self, n: int):
        if n < 1 or n > self.N:
            raise IndexError(f"{self.name}[{n}] outside 1..{self.N}")
        return self.values[n - 1]

    def __len__(self):
        return self.N

    @property
    def exact(self) -> bool:
        return self.value_kind != REAL

    def padded(self) -> list:
        """Values as a 0-based list with a dummy slot 0, for tight loops."""
        return [0, *self.values]

    def truncate(self, N: int) -> "ArithTable":
        if N > self.N:
            raise ValueError(f"cannot extend {self.name} from {self.N} to {N}")
        return ArithTable(self.name, N, self.values[:N], self.value_kind, self.ctx, self.tags and self.tags[:N])


def _kind_of(values: Iterable) -> str:
    kind = EXACT_INTEGER
    for v in values:
        if isinstance(v, int):
            continue
        if isinstance(v, Fraction):
            kind = EXACT_RATIONAL
            continue
        return REAL
    return kind


def table_from_values(name: str, values: Sequence, ctx: PrecisionContext | None = None) -> ArithTable:
    """Wrap a sequence of f(1..N) as a table (custom families)."""
    values = tuple(values)
    kind = _kind_of(values)
    if kind == EXACT_RATIONAL:
        values = tuple(v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v for v in values)
    elif kind == REAL:
        ctx = ctx or default_context()
        values = tuple(ctx.real(v) for v in values)
    return ArithTable(name, len(values), values, kind, ctx)


# -- sieves -----------------------------------------------------------------------

def smallest_prime_factors(N: int) -> list[int]:
    spf = list(range(N + 1))
    for p in range(2, math.isqrt(N) + 1):
        if spf[p] == p:
            for m in range(p * p, N + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def mobius_list(N: int) -> list[int]:
    """[0, mu(1), ..., mu(N)] by a linear sieve."""
    mu = [0] * (N + 1)
    if N >= 1:
        mu[1] = 1
    is_comp = bytearray(N + 1)
    primes: list[int] = []
    for i in range(2, N + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > N:
                break
            is_comp[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


def _power_list(N: int, a, ctx: PrecisionContext) -> list:
    """[0, 1^a, ..., N^a]; exact ints for integer a >= 0, else exp(a ln n)."""
    if isinstance(a, int) and a >= 0:
        return [0] + [n ** a for n in range(1, N + 1)]
    mp = ctx.mp
    ar = ctx.real(a)
    return [mp.zero, mp.one] + [mp.exp(ar * ctx.log(n)) for n in range(2, N + 1)]


def _sweep(f: list, g: list, N: int, zero) -> list:
    """Divisor sweep: h[n] = sum_{de=n} f[d] g[e]."""
    h = [zero] * (N + 1)
    for d in range(1, N + 1):
        fd = f[d]
        if not fd:
            continue
        if fd == 1:
            for e, m in enumerate(range(d, N + 1, d), start=1):
                h[m] += g[e]
        elif fd == -1:
            for e, m in enumerate(range(d, N + 1, d), start=1):
                h[m] -= g[e]
        else:
            for e, m in enumerate(range(d, N + 1, d), start=1):
                h[m] += fd * g[e]
    return h


def _normalize_exponent(x):
    """Integers (incl. 2.0) become int; other reals are kept for the context."""
    if isinstance(x, bool):
        raise TypeError("exponent must be numeric")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("exponent must be finite")
        return int(x) if x.is_integer() else x
    if isinstance(x, str):
        try:
            return _normalize_exponent(Fraction(x))
        except ValueError:
            return _normalize_exponent(float(x))
    return x  # mpf


_ID_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def parse_function_id(spec: str) -> tuple[str, object]:
    """'jordan_phi(2)' -> ('jordan_phi', 2); 'mobius' -> ('mobius', None)."""
    m = _ID_RE.match(spec)
    if not m:
        raise ValueError(f"bad function id {spec!r}")
    name, arg = m.group(1), m.group(2)
    if name not in FUNCTION_IDS:
        raise ValueError(f"unknown function {name!r}")
    if name in _PARAMETRIZED:
        if arg is None or arg == "":
            raise ValueError(f"{name} needs a parameter")
        return name, _normalize_exponent(arg)
    if arg:
        raise ValueError(f"{name} takes no parameter")
    return name, None


def _fmt_param(p) -> str:
    if isinstance(p, Fraction):
        return f"{p.numerator}/{p.denominator}"
    return str(p)


def sieve(name: str, N: int, ctx: PrecisionContext | None = None, param=None) -> ArithTable:
    """Tabulate a named arithmetic function on 1..N.

    ``name`` is one of FUNCTION_IDS, optionally with its parameter inline
    (``"jordan_phi(2)"``) or passed as ``param``.
    """
    if "(" in name:
        name, param = parse_function_id(name)
    elif name not in FUNCTION_IDS:
        raise ValueError(f"unknown function {name!r}")
    N = int(N)
    if N < 1:
        raise ValueError("N must be >= 1")
    ctx = ctx or default_context()
    if name in _PARAMETRIZED:
        if param is None:
            raise ValueError(f"{name} needs a parameter")
        param = _normalize_exponent(param)
        label = f"{name}({_fmt_param(param)})"
    else:
        label = name

    if name == "mobius":
        return ArithTable(label, N, tuple(mobius_list(N)[1:]), EXACT_INTEGER, ctx)
    if name == "abs_mobius":
        return ArithTable(label, N, tuple(abs(v) for v in mobius_list(N)[1:]), EXACT_INTEGER, ctx)
    if name == "one":
        return ArithTable(label, N, (1,) * N, EXACT_INTEGER, ctx)
    if name == "unit":
        return ArithTable(label, N, (1,) + (0,) * (N - 1), EXACT_INTEGER, ctx)
    if name == "tau":
        h = [0] * (N + 1)
        for d in range(1, N + 1):
            for m in range(d, N + 1, d):
                h[m] += 1
        return ArithTable(label, N, tuple(h[1:]), EXACT_INTEGER, ctx)
    if name == "mangoldt":
        spf = smallest_prime_factors(N)
        vals = [ctx.mp.zero] * N
        tags: list = [None] * N
        for n in range(2, N + 1):
            p = spf[n]
            m, e = n, 0
            while m % p == 0:
                m //= p
                e += 1
            if m == 1:
                vals[n - 1] = ctx.log(p)
                tags[n - 1] = (p, e)
        return ArithTable(label, N, tuple(vals), REAL, ctx, tuple(tags))

    a = param
    if name == "jordan_phi" and a <= 0:
        raise ValueError("jordan_phi needs a positive exponent")
    powers = _power_list(N, a, ctx)
    exact = isinstance(a, int) and a >= 0
    zero = 0 if exact else ctx.mp.zero
    kind = EXACT_INTEGER if exact else REAL
    if name == "id_a":
        return ArithTable(label, N, tuple(powers[1:]), kind, ctx)
    if name == "sigma_a":
        one = [0] + [1] * N
        return ArithTable(label, N, tuple(_sweep(powers, one, N, zero)[1:]), kind, ctx)
    mu = mobius_list(N)
    if name == "jordan_phi":
        h = _sweep(mu, powers, N, zero)
    else:  # dedekind_psi_gen
        h = _sweep([abs(v) for v in mu], powers, N, zero)
    return ArithTable(label, N, tuple(h[1:]), kind, ctx)


# -- algebra ----------------------------------------------------------------------

def _zero_for(*tables: ArithTable):
    for t in tables:
        if not t.exact:
            return (t.ctx or default_context()).mp.zero
    if any(t.value_kind == EXACT_RATIONAL for t in tables):
        return Fraction(0)
    return 0


def _ctx_for(*tables: ArithTable):
    for t in tables:
        if t.ctx is not None:
            return t.ctx
    return default_context()


def dirichlet_convolve(f: ArithTable, g: ArithTable, name: str | None = None) -> ArithTable:
    """(f*g)(n) = sum_{d|n} f(d) g(n/d) on 1..N (exact when both are exact)."""
    if f.N != g.N:
        raise ValueError(f"length mismatch: {f.name} has {f.N}, {g.name} has {g.N}")
    N = f.N
    zero = _zero_for(f, g)
    # Sweep over the sparser side.
    fl, gl = f.padded(), g.padded()
    if sum(1 for v in fl if v) > sum(1 for v in gl if v):
        fl, gl = gl, fl
    vals = _sweep(fl, gl, N, zero)[1:]
    kind = _kind_of(vals) if f.exact and g.exact else REAL
    return ArithTable(name or f"({f.name}*{g.name})", N, tuple(vals), kind, _ctx_for(f, g))


def pointwise(f: ArithTable, weight, name: str | None = None) -> ArithTable:
    """n -> f(n) * weight(n); weight is a callable on positive integers."""
    vals = tuple(f.values[n - 1] * weight(n) for n in range(1, f.N + 1))
    return table_from_values(name or f"{f.name}*w", vals, _ctx_for(f))


def gcd_spower(j: int, k: int, s: int) -> int:
    """(j, k^s)_s = max{d^s : d^s | j and d | k}."""
    if j < 1 or k < 1 or s < 1:
        raise ValueError("gcd_spower needs j, k, s >= 1")
    if s == 1:
        return math.gcd(j, k)
    # Largest d | k with d^s | j, built prime by prime over the primes of k.
    result = 1
    m = k
    p = 2
    while p * p <= m:
        if m % p == 0:
            e_k = 0
            while m % p == 0:
                m //= p
                e_k += 1
            e_j = 0
            jj = j
            while jj % p == 0 and e_j < s * e_k:
                jj //= p
                e_j += 1
            result *= p ** (s * min(e_k, e_j // s))
        p += 1
    if m > 1 and j % (m ** s) == 0:
        result *= m ** s
    return result


def prefix_sums(values: Sequence, ctx: PrecisionContext | None = None) -> list:
    """[0, v1, v1+v2, ...]; exact for exact input, left-to-right otherwise."""
    vals = list(values)
    exact = all(isinstance(v, (int, Fraction)) for v in vals)
    if not exact:
        ctx = ctx or default_context()
        vals = [ctx.real(v) for v in vals]
    acc = 0 if exact else ctx.mp.zero
    out = [acc]
    for v in vals:
        acc += v
        out.append(acc)
    return out


def weighted_partial_sum(f: ArithTable, x, s_weight, ctx: PrecisionContext | None = None):
    """sum_{n<=x} f(n)/n^s_weight at working precision."""
    ctx = ctx or f.ctx or default_context()
    n_max = math.floor(x)
    if n_max > f.N:
        raise ValueError(f"x={x} exceeds table length {f.N}")
    if n_max < 1:
        return ctx.mp.zero
    w = _normalize_exponent(s_weight)
    mp = ctx.mp
    terms = []
    for n in range(1, n_max + 1):
        v = f.values[n - 1]
        if not v:
            continue
        if isinstance(w, int) and w >= 0:
            terms.append(ctx.real(v) / (n ** w) if w else ctx.real(v))
        else:
            terms.append(ctx.real(v) * mp.exp(-ctx.real(w) * ctx.log(n)))
    return mp.fsum(terms)


def dump_csv(table: ArithTable, out=None) -> str | None:
    """CSV with header ``n,value``; reals printed to ctx.digits significant digits."""
    buf = out if out is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "value"])
    ctx = table.ctx or default_context()
    for n, v in enumerate(table.values, start=1):
        if isinstance(v, int):
            w.writerow([n, v])
        elif isinstance(v, Fraction):
            w.writerow([n, f"{v.numerator}/{v.denominator}"])
        else:
            w.writerow([n, ctx.mp.nstr(v, ctx.digits, strip_zeros=False)])
    if out is None:
        return buf.getvalue()
    return None


def divisor_lists(N: int) -> list[list[int]]:
    """[[], divisors(1), ..., divisors(N)], each ascending."""
    divs: list[list[int]] = [[] for _ in range(N + 1)]
    for d in range(1, N + 1):
        for m in range(d, N + 1, d):
            divs[m].append(d)
    return divs


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius_of(n: int) -> int:
    """mu(n) for a single n by trial division."""
    if n < 1:
        raise ValueError("mobius_of needs n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result
