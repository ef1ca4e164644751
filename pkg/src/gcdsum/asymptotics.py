"""Divisor-problem error terms, main terms, residuals and empirical O-checks.

Grid points may be ints, Fractions or floats (floats are read through their
decimal repr).  Step-function parts are evaluated exactly at floor(x/d) and
sawtooth values are exact rationals before rounding to working precision.

Besides the main terms as stated, ``main_term(..., corrected=True)`` adds the
bounded sawtooth term the Bernoulli-weighted sums carry for even index, and
``y_formula(..., corrected=True)`` evaluates the explicit Y formula for the
psi family with the von Mangoldt weights |mu|*Lambda and the constant
-s zeta'(s)/(4 zeta(2s)).  Both are reported next to the uncorrected forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .analytic import (
    PrecisionContext,
    bernoulli_number,
    default_context,
    euler_gamma,
    theta_saw,
    zeta,
)
from .arith import ArithTable, dirichlet_convolve, sieve
from .gcdsums import (
    A_terms,
    H_terms,
    SweepParams,
    cumulative,
    family_tables,
)
from .reporting import format_real, render_csv

__all__ = [
    "ErrorTermSeries",
    "THEOREM_TAGS",
    "HELPER_TAGS",
    "Y_TAGS",
    "geometric_grid",
    "delta",
    "delta_a",
    "D_s",
    "main_term",
    "lhs_values",
    "residual_series",
    "y_formula",
    "y_residual",
    "helper_sum_check",
    "error_term_series",
    "envelope_no_growth",
    "c_fit_check",
    "loglog_slope",
    "leading_ratio",
]

THEOREM_TAGS = (
    "A-phi", "A-phi-a", "A-psi", "A-psi-a",
    "H1-phi", "H1-psi", "H2m-phi", "H2m-psi",
    "H1-phi-a", "H1-psi-a", "H2m-phi-a", "H2m-psi-a",
)
Y_TAGS = {"A-phi": "Y1", "A-phi-a": "Y2", "A-psi": "Y3", "A-psi-a": "Y4"}
HELPER_TAGS = (
    "mu-mu", "mu-mu-log", "mu-absmu", "sigma-neg", "sigma-shift",
    "power-sum", "totient-sum", "totient-sum-a",
)
_TAG_FAMILY = {"phi": "phi_s", "psi": "psi_s", "phi-a": "phi_sa", "psi-a": "psi_sa"}


@dataclass
class ErrorTermSeries:
    """A residual sampled on a grid, with the claimed bound x^e (ln x)^L."""

    label: str
    grid: tuple
    values: tuple
    claimed_exponent: object
    log_factor_power: int
    ctx: PrecisionContext = field(repr=False)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.grid = tuple(self.grid)
        self.values = tuple(self.values)
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values differ in length")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")
        mp = self.ctx.mp
        if not all(mp.isfinite(v) for v in self.values):
            raise ValueError(f"{self.label}: non-finite value")

    def bound(self, x):
        mp = self.ctx.mp
        xr = _real(x, self.ctx)
        b = mp.power(xr, self.ctx.real(self.claimed_exponent))
        if self.log_factor_power:
            b *= mp.log(xr) ** self.log_factor_power
        return b

    @property
    def claimed_bounds(self) -> list:
        return [self.bound(x) for x in self.grid]

    @property
    def normalized(self) -> list:
        return [abs(v) / b for v, b in zip(self.values, self.claimed_bounds)]

    def to_csv(self, timestamp: bool = True) -> str:
        ctx = self.ctx
        meta = {"label": self.label, "claimed_exponent": self.claimed_exponent,
                "log_factor_power": self.log_factor_power, **self.meta, "digits": ctx.digits}
        rows = ([_fmt_x(x), format_real(v, ctx), format_real(n, ctx), format_real(b, ctx)]
                for x, v, n, b in zip(self.grid, self.values, self.normalized, self.claimed_bounds))
        return render_csv(meta, ("x", "value", "normalized", "claimed_bound"), rows, timestamp)


def _fmt_x(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _exact_x(x):
    """int/Fraction stay exact, floats via repr, anything else via str."""
    if isinstance(x, bool):
        raise TypeError("x must be numeric")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x))


def _real(x, ctx):
    return ctx.real(_exact_x(x))


def geometric_grid(lo, hi, points: int = 25) -> tuple[int, ...]:
    """About ``points`` integers from lo to hi, evenly spaced in log x."""
    if not (1 <= lo < hi):
        raise ValueError("need 1 <= lo < hi")
    if points < 2:
        raise ValueError("need at least two points")
    ratio = (hi / lo) ** (1 / (points - 1))
    xs = sorted({round(lo * ratio ** i) for i in range(points - 1)} | {round(lo), round(hi)})
    return tuple(xs)


# -- shared tables ----------------------------------------------------------------

def _table(ctx: PrecisionContext, key: str, N: int, build) -> ArithTable:
    """Per-context table cache; a longer cached table is truncated on demand."""
    store = ctx.cached("asym-tables", dict)
    t = store.get(key)
    if t is None or t.N < N:
        # grow geometrically so an increasing grid does not re-sieve per point
        t = build(max(N, 16, 2 * t.N if t is not None else 0))
        store[key] = t
    return t if t.N == N else t.truncate(N)


def _named(ctx, name: str, N: int, param=None) -> ArithTable:
    return _table(ctx, f"{name}:{param}", N, lambda n: sieve(name, n, ctx, param))


def _conv(ctx, a: str, b: str, N: int) -> ArithTable:
    return _table(ctx, f"{a}*{b}", N, lambda n: dirichlet_convolve(_named(ctx, a, n), _named(ctx, b, n)))


def _tau_prefix(ctx, n_max: int) -> list[int]:
    store = ctx.cached("tau-prefix", lambda: {"v": [0]})
    pref = store["v"]
    if len(pref) <= n_max:
        tau = _named(ctx, "tau", max(n_max, 2 * len(pref))).values
        acc = 0
        out = [0]
        for v in tau:
            acc += v
            out.append(acc)
        store["v"] = pref = out
    return pref


def _sigma_prefix(ctx, a: Fraction, n_max: int) -> list:
    store = ctx.cached(("sigma-prefix", a), lambda: {"v": [ctx.mp.zero]})
    pref = store["v"]
    if len(pref) <= n_max:
        pref = cumulative(_named(ctx, "sigma_a", max(n_max, 2 * len(pref)), a).values, ctx)
        store["v"] = pref
    return pref


# -- error terms ------------------------------------------------------------------

def delta(x, ctx: PrecisionContext | None = None):
    """Delta(x) = sum_{n<=x} tau(n) - x ln x - (2 gamma - 1) x."""
    ctx = ctx or default_context()
    xe = _exact_x(x)
    if xe < 1:
        raise ValueError("delta needs x >= 1")
    n = math.floor(xe)
    xr = ctx.real(xe)
    T = _tau_prefix(ctx, n)[n]
    return T - xr * ctx.mp.log(xr) - (2 * euler_gamma(ctx) - 1) * xr


def delta_a(x, a, ctx: PrecisionContext | None = None):
    """Delta_a(x) = sum sigma_a(n) - zeta(1-a) x - zeta(1+a) x^(1+a)/(1+a) + zeta(-a)/2."""
    ctx = ctx or default_context()
    a = Fraction(a) if not isinstance(a, float) else Fraction(repr(a))
    if not (-1 < a < 0):
        raise ValueError("delta_a needs -1 < a < 0")
    xe = _exact_x(x)
    if xe < 1:
        raise ValueError("delta_a needs x >= 1")
    n = math.floor(xe)
    xr = ctx.real(xe)
    S = _sigma_prefix(ctx, a, n)[n]
    ar = ctx.real(a)
    return (S - zeta(1 - a, 0, ctx) * xr
            - zeta(1 + a, 0, ctx) / (1 + ar) * ctx.mp.power(xr, 1 + ar)
            + zeta(-a, 0, ctx) / 2)


def _saw_sum(weights: ArithTable, x, s: int, ctx, power=None):
    """sum_{d<=x} w(d) d^-s theta(x/d) with exact sawtooth values."""
    xe = _exact_x(x)
    n = math.floor(xe)
    mp = ctx.mp
    terms = []
    for d in range(1, n + 1):
        w = weights[d]
        if w:
            terms.append(ctx.real(w) * ctx.real(theta_saw(xe / d)) / mp.mpf(d) ** s)
    return mp.fsum(terms)


def D_s(x, s: int, variant: str = "mobius", ctx: PrecisionContext | None = None):
    """-sum_{d<=x} mu(d) d^-s theta(x/d) - 1/(2 zeta(s)); |mu| variant uses zeta(s)/(2 zeta(2s))."""
    ctx = ctx or default_context()
    if s < 2:
        raise ValueError("D_s needs s >= 2")
    n = max(1, math.floor(_exact_x(x)))
    if variant == "mobius":
        w = _named(ctx, "mobius", n)
        const = 1 / (2 * zeta(s, 0, ctx))
    elif variant == "abs_mobius":
        w = _named(ctx, "abs_mobius", n)
        const = zeta(s, 0, ctx) / (2 * zeta(2 * s, 0, ctx))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return -_saw_sum(w, x, s, ctx) - const


# -- main terms -------------------------------------------------------------------

def _split_tag(tag: str) -> tuple[str, str]:
    if tag not in THEOREM_TAGS:
        raise ValueError(f"unsupported theorem tag {tag!r}; choose from {', '.join(THEOREM_TAGS)}")
    kind, fam = tag.split("-", 1)
    return kind, fam


def _bern_index(kind: str, params: SweepParams) -> int:
    return 1 if kind == "H1" else 2 * params.m


def _h2m_saw(x, s: int, m: int, absmu: bool, ctx):
    """sum_{n<=x} h(n) theta(x/n), h = (mu*mu or mu*|mu|)/id_s * id_{-2ms}."""
    xe = _exact_x(x)
    n = max(1, math.floor(xe))
    mp = ctx.mp
    key = ("h2m", absmu, s, m)
    store = ctx.cached(key, dict)
    h = store.get("h")
    if h is None or len(h) <= n:
        N = max(n, 16, 2 * len(h) if h else 0)
        wt = _conv(ctx, "mobius", "abs_mobius" if absmu else "mobius", N)
        exact = [Fraction(0)] * (N + 1)
        for d in range(1, N + 1):
            if wt[d]:
                c = Fraction(wt[d], d ** s)
                for e in range(1, N // d + 1):
                    exact[d * e] += c / e ** (2 * m * s)
        h = store["h"] = [ctx.real(v) if v else 0 for v in exact]
    return mp.fsum(h[k] * ctx.real(theta_saw(xe / k)) for k in range(1, n + 1) if h[k])


def main_term(tag: str, x, params: SweepParams, ctx: PrecisionContext | None = None,
              corrected: bool = False):
    """The stated main terms for each theorem tag, evaluated at x.

    For H2m tags ``params.m`` is m (the Bernoulli index is 2m).  With
    ``corrected=True`` the H2m-phi/H2m-psi terms also carry the bounded
    sawtooth term -B_2m sum_{n<=x} h(n) theta(x/n).
    """
    ctx = ctx or default_context()
    kind, fam = _split_tag(tag)
    s = params.s
    if s < 2:
        raise ValueError("theorems need s >= 2")
    mp = ctx.mp
    z = lambda v, d=0: zeta(v, d, ctx)  # noqa: E731
    xr = _real(x, ctx)
    l2 = ctx.log_sqrt_2pi
    g = euler_gamma(ctx)
    if fam.endswith("-a"):
        if params.a is None:
            raise ValueError(f"{tag} needs a")
        a = params.a
        ar = ctx.real(a)
        xa1 = mp.power(xr, 1 + ar)

    if tag == "A-phi":
        c = l2 / z(s + 1) ** 2
        return (c * xr * mp.log(xr) + s * z(s + 1, 1) / (2 * z(s + 1) ** 2) * xr
                + c * (2 * g - 1 - 2 * z(s + 1, 1) / z(s + 1) - z(s + 1)) * xr)
    if tag == "A-psi":
        c = l2 / z(2 * s + 2)
        return (c * xr * mp.log(xr) + s * z(s + 1, 1) / (2 * z(2 * s + 2)) * xr
                + c * (2 * g - 1 - 2 * z(2 * s + 2, 1) / z(2 * s + 2) - z(s + 1)) * xr)
    if tag == "A-phi-a":
        sa1 = s + a + 1
        return (l2 * z(1 - a) / z(s + 1) ** 2 * xr
                + s * z(sa1, 1) / (2 * (1 + ar) * z(sa1) ** 2) * xa1
                + l2 / (1 + ar) * (z(1 + a) / z(sa1) ** 2 - 1 / z(sa1)) * xa1)
    if tag == "A-psi-a":
        sa1, dbl = s + a + 1, 2 * s + 2 * a + 2
        return (l2 * z(1 - a) / z(2 * s + 2) * xr
                + s * z(sa1, 1) / (2 * (1 + ar) * z(dbl)) * xa1
                + l2 / (1 + ar) * (z(1 + a) / z(dbl) - z(sa1) / z(dbl)) * xa1)
    if tag == "H1-phi":
        return -xr / (2 * z(s + 1)) - D_s(x, s, "mobius", ctx) / 2
    if tag == "H1-psi":
        return -z(s + 1) * xr / (2 * z(2 * s + 2)) - D_s(x, s, "abs_mobius", ctx) / 2
    if tag == "H1-phi-a":
        return -xa1 / (2 * (1 + ar) * z(s + a + 1)) - z(-a) / (2 * z(s))
    if tag == "H1-psi-a":
        return (-z(s + a + 1) * xa1 / (2 * (1 + ar) * z(2 * s + 2 * a + 2))
                - z(-a) * z(s) / (2 * z(2 * s)))

    m = params.m
    B = ctx.real(bernoulli_number(2 * m))
    ms2 = 2 * m * s
    if tag == "H2m-phi":
        val = B * z(ms2 + 1) / z(s + 1) ** 2 * xr - B * z(ms2) / (2 * z(s) ** 2)
        if corrected:
            val -= B * _h2m_saw(x, s, m, False, ctx)
        return val
    if tag == "H2m-psi":
        val = B * z(ms2 + 1) / z(2 * s + 2) * xr - B * z(ms2) / (2 * z(2 * s))
        if corrected:
            val -= B * _h2m_saw(x, s, m, True, ctx)
        return val
    if tag == "H2m-phi-a":
        return (B * z(ms2 + a + 1) / ((1 + ar) * z(s + a + 1) ** 2) * xa1
                + B * z(-a) * z(ms2) / z(s) ** 2)
    # H2m-psi-a
    return (B * z(ms2 + a + 1) / ((1 + ar) * z(2 * s + 2 * a + 2)) * xa1
            + B * z(-a) * z(ms2) / z(2 * s))


def _claim(tag: str, params: SweepParams) -> tuple[object, int]:
    kind, fam = _split_tag(tag)
    a = params.a
    if kind == "A":
        # rates x^(1/2+eps), x^((1+a)/3+eps) with eps = 0.05
        if fam.endswith("-a"):
            return (1 + a) / 3 + Fraction(1, 20), 0
        return Fraction(11, 20), 0
    if fam.endswith("-a"):
        return a, 0
    return 1 - params.s, 1


def lhs_values(tag: str, params: SweepParams, grid: Sequence, ctx: PrecisionContext | None = None,
               workers: int = 1) -> list:
    """A or H left-hand side at every grid point (fast paths)."""
    ctx = ctx or default_context()
    kind, fam = _split_tag(tag)
    p = params.with_(family=_TAG_FAMILY[fam], x_grid=())
    n_max = max(1, math.floor(_exact_x(grid[-1])))
    tables = family_tables(p, n_max, ctx)
    if kind == "A":
        terms = A_terms(n_max, p, "gauss-fast", ctx, tables, workers)
    else:
        terms = H_terms(n_max, p.with_(m=_bern_index(kind, params)), "power-sum", ctx, tables, workers)
    acc = cumulative(terms, ctx)
    return [acc[max(1, math.floor(_exact_x(x)))] for x in grid]


def residual_series(tag: str, params: SweepParams, grid: Sequence | None = None,
                    ctx: PrecisionContext | None = None, corrected: bool = False,
                    workers: int = 1) -> ErrorTermSeries:
    """LHS(x) - main_term(x) on the grid, labelled with the claimed rate."""
    ctx = ctx or default_context()
    grid = tuple(grid if grid is not None else params.x_grid)
    if not grid:
        raise ValueError("empty grid")
    lhs = lhs_values(tag, params, grid, ctx, workers)
    values = [l - main_term(tag, x, params, ctx, corrected) for l, x in zip(lhs, grid)]
    e, L = _claim(tag, params)
    label = Y_TAGS.get(tag, f"{tag}-residual")
    meta = {"tag": tag, "s": params.s, "a": params.a, "m": params.m,
            "main_term": "corrected" if corrected else "stated"}
    return ErrorTermSeries(label, grid, values, e, L, ctx, meta)


# -- explicit Y formulas ----------------------------------------------------------

def y_formula(tag: str, x, params: SweepParams, ctx: PrecisionContext | None = None,
              corrected: bool = False):
    """Explicit expression for the A residual (O-term dropped).

    Uncorrected follows the stated forms; ``corrected`` changes only the psi
    tags: the sawtooth sum is weighted by |mu|*Lambda and the constant uses
    zeta(2s) in place of zeta(s)^2 (A-psi), and for A-psi-a the constant is
    -ln sqrt(2pi) zeta(-a) [1/(2 zeta(2s)) + zeta(s)/zeta(2s)] + s zeta(-a) zeta'(s)/(2 zeta(2s)).
    """
    ctx = ctx or default_context()
    kind, fam = _split_tag(tag)
    if kind != "A":
        raise ValueError("explicit Y formulas exist for the A tags only")
    s = params.s
    mp = ctx.mp
    z = lambda v, d=0: zeta(v, d, ctx)  # noqa: E731
    l2 = ctx.log_sqrt_2pi
    xe = _exact_x(x)
    n = max(1, math.floor(xe))
    psi = fam.startswith("psi")
    w = _conv(ctx, "mobius", "abs_mobius" if psi else "mobius", n)

    if fam.endswith("-a"):
        a = params.a
        main = l2 * mp.fsum(ctx.real(w[d]) / mp.mpf(d) ** s * delta_a(xe / d, a, ctx)
                            for d in range(1, n + 1) if w[d])
        if not psi:
            const = (-z(-a) / (2 * z(s) ** 2) * l2
                     - z(-a) / z(s) * (l2 - s * z(s, 1) / (2 * z(s))))
        elif corrected:
            const = (-l2 * z(-a) / (2 * z(2 * s)) - l2 * z(-a) * z(s) / z(2 * s)
                     + s * z(-a) * z(s, 1) / (2 * z(2 * s)))
        else:
            const = (-z(-a) / (2 * z(2 * s)) * l2
                     - z(-a) / z(s) * (l2 - s * z(s, 1) / (2 * z(s))))
        return main + const

    main = l2 * mp.fsum(ctx.real(w[d]) / mp.mpf(d) ** s * delta(xe / d, ctx)
                        for d in range(1, n + 1) if w[d])
    if not psi:
        saw_w = _conv(ctx, "mobius", "mangoldt", n)
        const = -s * z(s, 1) / (4 * z(s) ** 2)
        D = D_s(x, s, "mobius", ctx)
    elif corrected:
        saw_w = _conv(ctx, "abs_mobius", "mangoldt", n)
        const = -s * z(s, 1) / (4 * z(2 * s))
        D = D_s(x, s, "abs_mobius", ctx)
    else:
        saw_w = w
        const = -s * z(s, 1) / (4 * z(s) ** 2)
        D = D_s(x, s, "abs_mobius", ctx)
    return main + mp.mpf(s) / 2 * _saw_sum(saw_w, x, s, ctx) + const - l2 * D


def y_residual(tag: str, params: SweepParams, grid: Sequence, ctx: PrecisionContext | None = None,
               corrected: bool = False) -> ErrorTermSeries:
    """(LHS - main term) - explicit Y formula, against x^(1-s) (ln x)^2 or x^a."""
    ctx = ctx or default_context()
    grid = tuple(grid)
    res = residual_series(tag, params, grid, ctx)
    vals = [r - y_formula(tag, x, params, ctx, corrected) for r, x in zip(res.values, grid)]
    kind, fam = _split_tag(tag)
    e, L = (params.a, 0) if fam.endswith("-a") else (1 - params.s, 2)
    meta = {"tag": tag, "s": params.s, "a": params.a, "formula": "corrected" if corrected else "stated"}
    return ErrorTermSeries(f"{Y_TAGS[tag]}-formula-gap", grid, vals, e, L, ctx, meta)


# -- helper sums ------------------------------------------------------------------

def _helper_value(which: str, x, params: SweepParams, ctx, corrected: bool):
    mp = ctx.mp
    z = lambda v, d=0: zeta(v, d, ctx)  # noqa: E731
    s, a = params.s, params.a
    xe = _exact_x(x)
    n = max(1, math.floor(xe))
    xr = ctx.real(xe)

    def dsum(tab, expo, log=False):
        return mp.fsum(ctx.real(tab[d]) * (ctx.log(d) if log else 1) / mp.mpf(d) ** expo
                       for d in range(1, n + 1) if tab[d])

    if which == "mu-mu":
        return dsum(_conv(ctx, "mobius", "mobius", n), s + 1) - 1 / z(s + 1) ** 2
    if which == "mu-mu-log":
        return dsum(_conv(ctx, "mobius", "mobius", n), s + 1, log=True) - 2 * z(s + 1, 1) / z(s + 1) ** 3
    if which == "mu-absmu":
        return dsum(_conv(ctx, "mobius", "abs_mobius", n), s + 1) - 1 / z(2 * s + 2)
    if which == "sigma-neg":
        ms2 = 2 * params.m * s
        sig = _named(ctx, "sigma_a", n, -ms2)
        val = mp.fsum(ctx.real(v) for v in sig.values) - z(ms2 + 1) * xr + z(ms2) / 2
        if corrected:
            # sum_{l<=x} sigma_{-k}(l) carries -sum_{e<=x} e^-k theta(x/e)
            val += mp.fsum(ctx.real(theta_saw(xe / e)) / mp.mpf(e) ** ms2 for e in range(1, n + 1))
        return val
    if which == "sigma-shift":
        ms2 = 2 * params.m * s
        sig = _named(ctx, "sigma_a", n, a + ms2)
        ar = ctx.real(a)
        return (mp.fsum(sig[l] / mp.mpf(l) ** ms2 for l in range(1, n + 1))
                - z(a + ms2 + 1) / (a + 1) * mp.power(xr, a + 1) - z(-a) * z(ms2))
    if which == "power-sum":
        ar = ctx.real(a)
        return (mp.fsum(mp.power(l, ar) for l in range(1, n + 1))
                - mp.power(xr, 1 + ar) / (1 + ar) - z(-a))
    if which == "totient-sum":
        psi = params.family == "psi_s"
        f = family_tables(params.with_(family="psi_s" if psi else "phi_s", x_grid=()), n, ctx).f
        total = dsum(f, s)
        if psi:
            return total - z(s + 1) / z(2 * s + 2) * xr - D_s(x, s, "abs_mobius", ctx)
        return total - xr / z(s + 1) - D_s(x, s, "mobius", ctx)
    if which == "totient-sum-a":
        psi = params.family == "psi_sa"
        f = family_tables(params.with_(family="psi_sa" if psi else "phi_sa", x_grid=()), n, ctx).f
        total = dsum(f, s)
        ar = ctx.real(a)
        xa1 = mp.power(xr, 1 + ar)
        if psi:
            return (total - z(s + a + 1) / ((1 + ar) * z(2 * s + 2 * a + 2)) * xa1
                    - z(-a) * z(s) / z(2 * s))
        return total - xa1 / ((1 + ar) * z(s + a + 1)) - z(-a) / z(s)
    raise ValueError(f"unknown helper tag {which!r}; choose from {', '.join(HELPER_TAGS)}")


def _helper_claim(which: str, params: SweepParams) -> tuple[object, int]:
    s, a = params.s, params.a
    return {
        "mu-mu": (-s, 1),
        "mu-mu-log": (-s, 2),
        "mu-absmu": (-s, 1),
        "sigma-neg": (1 - 2 * params.m * s, 0),
        "sigma-shift": (a, 0),
        "power-sum": (a, 0),
        "totient-sum": (1 - s, 0),
        "totient-sum-a": (a, 0),
    }[which]


def helper_sum_check(which: str, params: SweepParams, grid: Sequence | None = None,
                     ctx: PrecisionContext | None = None, corrected: bool = False) -> ErrorTermSeries:
    """Residual of a helper asymptotic against its stated main and constant terms.

    ``totient-sum`` uses phi_s or psi_s and ``totient-sum-a`` uses phi_sa or psi_sa,
    chosen by ``params.family``.  ``corrected`` only affects ``sigma-neg``.
    """
    ctx = ctx or default_context()
    if which not in HELPER_TAGS:
        raise ValueError(f"unknown helper tag {which!r}; choose from {', '.join(HELPER_TAGS)}")
    if which in ("sigma-shift", "power-sum", "totient-sum-a") and params.a is None:
        raise ValueError(f"{which} needs a")
    grid = tuple(grid if grid is not None else params.x_grid)
    vals = [_helper_value(which, x, params, ctx, corrected) for x in grid]
    e, L = _helper_claim(which, params)
    meta = {"helper": which, "s": params.s, "a": params.a, "m": params.m, "family": params.family}
    return ErrorTermSeries(which, grid, vals, e, L, ctx, meta)


def error_term_series(label: str, grid: Sequence, params: SweepParams | None = None,
                      ctx: PrecisionContext | None = None) -> ErrorTermSeries:
    """Delta, Delta_a, D_s or Dtilde_s sampled on a grid."""
    ctx = ctx or default_context()
    params = params or SweepParams()
    grid = tuple(grid)
    if label == "Delta":
        return ErrorTermSeries("Delta", grid, [delta(x, ctx) for x in grid], Fraction(1, 3), 0, ctx)
    if label == "Delta_a":
        if params.a is None:
            raise ValueError("Delta_a needs a")
        e = (1 + params.a) / 3 + Fraction(1, 20)
        return ErrorTermSeries("Delta_a", grid, [delta_a(x, params.a, ctx) for x in grid], e, 0, ctx,
                               {"a": params.a})
    if label in ("D_s", "Dtilde_s"):
        variant = "mobius" if label == "D_s" else "abs_mobius"
        return ErrorTermSeries(label, grid, [D_s(x, params.s, variant, ctx) for x in grid], 0, 0, ctx,
                               {"s": params.s})
    raise ValueError(f"unknown error term {label!r}")


# -- empirical O-checks -----------------------------------------------------------

def envelope_no_growth(series: ErrorTermSeries) -> tuple[bool, object, object]:
    """max normalized value on the second half of the grid <= max on the first half."""
    norm = series.normalized
    h = len(norm) // 2
    first, second = max(norm[:h]), max(norm[h:])
    return bool(second <= first), first, second


def c_fit_check(series: ErrorTermSeries, x_fit=100, factor=2) -> tuple[bool, object, object]:
    """Fit C = |value|/bound at x_fit; pass if every normalized value is <= factor*C."""
    if x_fit not in series.grid:
        raise ValueError(f"x_fit={x_fit} is not a grid point")
    norm = series.normalized
    C = norm[series.grid.index(x_fit)]
    worst = max(norm)
    return bool(worst <= factor * C), C, worst


def loglog_slope(series: ErrorTermSeries) -> float:
    """Least-squares slope of ln|value| against ln x (zero values skipped)."""
    pts = [(math.log(float(_exact_x(x))), math.log(float(abs(v))))
           for x, v in zip(series.grid, series.values) if v]
    if len(pts) < 2:
        return float("nan")
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    return sxy / sxx


def leading_ratio(tag: str, x, params: SweepParams, ctx: PrecisionContext | None = None):
    """(A(x)/x ln x or A(x)/x, its limiting constant) for an A tag."""
    ctx = ctx or default_context()
    kind, fam = _split_tag(tag)
    if kind != "A":
        raise ValueError("limits are stated for the A tags")
    s = params.s
    z = lambda v: zeta(v, 0, ctx)  # noqa: E731
    l2 = ctx.log_sqrt_2pi
    xr = _real(x, ctx)
    A = lhs_values(tag, params, [x], ctx)[0]
    den = z(s + 1) ** 2 if fam.startswith("phi") else z(2 * s + 2)
    if fam.endswith("-a"):
        return A / xr, l2 * z(1 - params.a) / den
    return A / (xr * ctx.mp.log(xr)), l2 / den
