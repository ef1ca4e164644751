"""Dirichlet series of the kappa and nu averages against their zeta closed forms.

For a family f with F = f*mu the series are

    K(w; f)   = sum_k kappa(k; F, 1) k^-w
    L_m(w; f) = sum_k nu_m(k; F, 1) k^-w

and both collapse to products of zeta values.  Writing Z(t) for the Dirichlet
series of f itself (zeta(t - s)/zeta(t) for phi_s and so on):

    K   = ln sqrt(2pi) Z(w+s) (zeta(w)/zeta(w+s) - 1) + (s/2) Z(w+s) zeta'(w+s)/zeta(w+s)
    L_m = B_m Z(w+s) zeta(w+ms)/zeta(w+s)

Truncations are checked against a rigorous tail majorant, see :func:`tail_bound`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analytic import PrecisionContext, bernoulli_number, default_context, euler_gamma, zeta
from .gcdsums import SweepParams, family_tables, kappa_values, nu_values
from .reporting import format_real, render_csv

__all__ = [
    "SeriesCheck",
    "W_MIN",
    "N_MIN",
    "K_truncated",
    "K_closed",
    "L_truncated",
    "L_closed",
    "tail_bound",
    "check_series",
    "series_report",
    "DIRICHLET_FAMILIES",
]

W_MIN = 2
N_MIN = 10
DIRICHLET_FAMILIES = ("phi_s", "psi_s", "phi_sa", "psi_sa", "one")
HEADER = ("w", "N", "truncated", "closed", "tail_bound", "pass")


@dataclass(frozen=True)
class SeriesCheck:
    w: object
    N: int
    truncated_sum: object
    closed_form: object
    tail_bound: object
    passed: bool


def _check_w(w):
    if not w >= W_MIN:
        raise ValueError(f"w must be >= {W_MIN}, got {w}")


def _check_params(params: SweepParams):
    if params.family not in DIRICHLET_FAMILIES:
        raise ValueError(f"no closed form for family {params.family!r}")
    if params.s < 2:
        raise ValueError("closed forms need s >= 2")


# per-context cache of kappa / nu values, grown geometrically
def _values(kind: str, N: int, params: SweepParams, ctx: PrecisionContext, workers: int):
    key = ("dirichlet", kind, params.family, params.s, params.a, params.m if kind == "nu" else None)
    store = ctx.cached(key, dict)
    have = store.get("vals")
    if have is None or len(have) < N:
        n = max(N, 2 * len(have) if have else N)
        F = family_tables(params, n, ctx).F
        if kind == "kappa":
            store["vals"] = kappa_values(n, params.s, F, ctx, workers)
        else:
            store["vals"] = nu_values(n, params.s, params.m, F, ctx, workers)
    return store["vals"]


def _truncate(vals, w, N, ctx):
    mp = ctx.mp
    wr = ctx.real(w)
    return mp.fsum(vals[k - 1] / mp.mpf(k) ** wr for k in range(2, N + 1) if vals[k - 1])


def K_truncated(w, N: int, params: SweepParams, ctx: PrecisionContext | None = None,
                workers: int = 1):
    """sum_{k <= N} kappa(k; f*mu, 1) / k^w."""
    ctx = ctx or default_context()
    _check_w(w)
    _check_params(params)
    if N == 1:
        return ctx.mp.zero
    if N < N_MIN:
        raise ValueError(f"N must be 1 or >= {N_MIN}")
    return _truncate(_values("kappa", N, params, ctx, workers), w, N, ctx)


def L_truncated(w, m: int, N: int, params: SweepParams, ctx: PrecisionContext | None = None,
                workers: int = 1):
    """sum_{k <= N} nu_m(k; f*mu, 1) / k^w."""
    ctx = ctx or default_context()
    _check_w(w)
    _check_params(params)
    p = params.with_(m=m)
    if N == 1:
        return ctx.real(bernoulli_number(m))
    if N < N_MIN:
        raise ValueError(f"N must be 1 or >= {N_MIN}")
    if bernoulli_number(m) == 0:
        return ctx.mp.zero
    vals = _values("nu", N, p, ctx, workers)
    return vals[0] + _truncate(vals, w, N, ctx)


def _family_series(t, params: SweepParams, ctx):
    """Dirichlet series of f at t (t = w + s)."""
    s = params.s
    a = ctx.real(params.a) if params.a is not None else None
    z = lambda u: zeta(u, ctx=ctx)
    fam = params.family
    if fam == "phi_s":
        return z(t - s) / z(t)
    if fam == "psi_s":
        return z(t - s) * z(t) / z(2 * t)
    if fam == "phi_sa":
        return z(t - s - a) / z(t)
    if fam == "psi_sa":
        return z(t - s - a) * z(t) / z(2 * t)
    return z(t)  # one


def K_closed(w, params: SweepParams, ctx: PrecisionContext | None = None):
    ctx = ctx or default_context()
    _check_w(w)
    _check_params(params)
    s = params.s
    t = ctx.real(w) + s
    Zf = _family_series(t, params, ctx)
    zt = zeta(t, ctx=ctx)
    return (ctx.log_sqrt_2pi * Zf * (zeta(ctx.real(w), ctx=ctx) / zt - 1)
            + ctx.mp.mpf(s) / 2 * Zf * zeta(t, 1, ctx=ctx) / zt)


def L_closed(w, m: int, params: SweepParams, ctx: PrecisionContext | None = None):
    ctx = ctx or default_context()
    _check_w(w)
    _check_params(params)
    bm = bernoulli_number(m)
    if bm == 0:
        return ctx.mp.zero
    s = params.s
    wr = ctx.real(w)
    t = wr + s
    return ctx.real(bm) * _family_series(t, params, ctx) * zeta(wr + m * s, ctx=ctx) / zeta(t, ctx=ctx)


def _constants(params: SweepParams, ctx):
    """(B, M): sum_{d|k} |F(d)|/d^s <= B tau(k) and |f(k)| <= M k^s."""
    s = params.s
    a = ctx.real(params.a) if params.a is not None else None
    z = lambda u: zeta(u, ctx=ctx)
    fam = params.family
    if fam in ("phi_s", "phi_sa"):
        return (z(s) / z(2 * s)) ** 2, ctx.mp.one
    if fam == "psi_s":
        return z(2 * s) / z(4 * s), z(s) / z(2 * s)
    if fam == "psi_sa":
        return z(2 * s) / z(4 * s), z(s + a) / z(2 * s + 2 * a)
    return ctx.mp.one, ctx.mp.one


def _tau_tail(N: int, w, ctx):
    """Upper bound for sum_{k > N} tau(k) k^-w.

    Partial summation against U(t) = t ln t + (2 gamma - 1) t + 3 sqrt t + 1,
    which majorises sum_{n <= t} tau(n) for t >= 4.
    """
    mp = ctx.mp
    g = euler_gamma(ctx)
    A = mp.mpf(N + 1)
    U = A * mp.log(A) + (2 * g - 1) * A + 3 * mp.sqrt(A) + 1
    T = sum(N // n for n in range(1, N + 1))
    w1 = w - 1
    integral = (A ** (-w1) * (mp.log(A) / w1 + 1 / w1 ** 2)
                + 2 * g * A ** (-w1) / w1
                + mp.mpf(3) / 2 * A ** (mp.mpf(1) / 2 - w) / (w - mp.mpf(1) / 2))
    return (U - T) * A ** (-w) + integral


def tail_bound(w, N: int, params: SweepParams, series: str = "K", m: int = 1,
               ctx: PrecisionContext | None = None):
    """Rigorous bound on the remainder sum_{k > N} of the K or L series.

    |kappa(k)| <= ln sqrt(2pi) B tau(k) + M (ln sqrt(2pi) + (s/2)(-zeta'(s)/zeta(s)))
    |nu_m(k)|  <= |B_m| B tau(k)
    """
    ctx = ctx or default_context()
    _check_w(w)
    _check_params(params)
    if N < 4:
        raise ValueError("tail bound needs N >= 4")
    mp = ctx.mp
    wr = ctx.real(w)
    B, M = _constants(params, ctx)
    tt = _tau_tail(N, wr, ctx)
    if series == "L":
        return abs(ctx.real(bernoulli_number(m))) * B * tt
    s = params.s
    l2 = ctx.log_sqrt_2pi
    flat = M * (l2 - mp.mpf(s) / 2 * zeta(s, 1, ctx=ctx) / zeta(s, ctx=ctx))
    return l2 * B * tt + flat * mp.mpf(N) ** (1 - wr) / (wr - 1)


def check_series(series: str, w, N: int, params: SweepParams, m: int = 1,
                 ctx: PrecisionContext | None = None, workers: int = 1) -> SeriesCheck:
    ctx = ctx or default_context()
    if series == "K":
        tr = K_truncated(w, N, params, ctx, workers)
        cl = K_closed(w, params, ctx)
    elif series == "L":
        tr = L_truncated(w, m, N, params, ctx, workers)
        cl = L_closed(w, m, params, ctx)
    else:
        raise ValueError(f"unknown series {series!r}; choose K or L")
    tb = tail_bound(w, N, params, series, m, ctx)
    return SeriesCheck(w, N, tr, cl, tb, bool(abs(tr - cl) <= tb))


def series_report(checks: list[SeriesCheck], meta: dict, ctx: PrecisionContext,
                  timestamp: bool = True) -> str:
    rows = ([str(c.w), str(c.N), format_real(c.truncated_sum, ctx), format_real(c.closed_form, ctx),
             format_real(c.tail_bound, ctx), "true" if c.passed else "false"] for c in checks)
    return render_csv(meta, HEADER, rows, timestamp)
