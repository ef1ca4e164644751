"""Exact right-hand sides of the gcd-sum identities and the sweep that checks them.

Each identity pairs a summatory left-hand side from :mod:`gcdsum.gcdsums`
with a right-hand side built only from partial sums of f, f*phi_s, f*Lambda
and hyperbola sums over d*l <= x.  A row passes when
``|lhs - rhs| <= identity_tol * (1 + |lhs|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .analytic import PrecisionContext, bernoulli_number, default_context
from .arith import weighted_partial_sum
from .gcdsums import (
    A_terms,
    DIRECT_CAP,
    H_terms,
    M_terms,
    SweepParams,
    cumulative,
    family_tables,
)
from .reporting import format_real, read_csv_report, render_csv

__all__ = [
    "IdentityRow",
    "VerificationReport",
    "rhs_A",
    "rhs_H",
    "rhs_M",
    "hyperbola_sum",
    "verify_identity",
    "read_report",
    "IDENTITIES",
    "DEFAULT_MODES",
]

IDENTITIES = ("A", "H", "M")
DEFAULT_MODES = {"A": "gauss-fast", "H": "power-sum", "M": "faulhaber"}
HEADER = ("x", "lhs", "rhs", "abs_residual", "tolerance", "pass")


@dataclass(frozen=True)
class IdentityRow:
    x: int
    lhs: object
    rhs: object
    abs_residual: object
    tolerance: object
    passed: bool


@dataclass
class VerificationReport:
    which: str
    params: SweepParams
    rows: list[IdentityRow]
    digits: int
    mode: str
    ctx: PrecisionContext = field(repr=False)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def failures(self) -> list[IdentityRow]:
        return [r for r in self.rows if not r.passed]

    def metadata(self) -> dict:
        p = self.params
        return {
            "which": self.which, "s": p.s, "a": p.a, "m": p.m, "r": p.r,
            "family": p.family_label(), "digits": self.digits, "mode": self.mode,
        }

    def to_csv(self, timestamp: bool = True) -> str:
        rows = ([str(r.x), r.lhs, r.rhs, r.abs_residual, r.tolerance, "true" if r.passed else "false"]
                for r in self.rows)
        return render_csv(self.metadata(), HEADER, rows, timestamp)


def read_report(source) -> tuple[dict, list[dict]]:
    """Read back a report written by :meth:`VerificationReport.to_csv`."""
    return read_csv_report(source)


def _tables(params: SweepParams, x, ctx):
    return family_tables(params, max(math.floor(x), params.x_max), ctx)


def hyperbola_sum(x, F, s: int, weight_exp: int, ctx: PrecisionContext):
    """sum over d*l <= x of F(d) d^-s l^-weight_exp."""
    n = math.floor(x)
    mp = ctx.mp
    inner = [mp.zero]
    for l in range(1, n + 1):
        inner.append(inner[-1] + (mp.one / mp.mpf(l) ** weight_exp if weight_exp else mp.one))
    return mp.fsum(ctx.real(F[d]) / mp.mpf(d) ** s * inner[n // d] for d in range(1, n + 1) if F[d])


def rhs_A(x, params: SweepParams, ctx: PrecisionContext | None = None, tables=None):
    """ln sqrt(2pi) [S(f*phi_s) - S(f)] - (s/2) S(f*Lambda), S(g) = sum_{n<=x} g(n)/n^s."""
    ctx = ctx or default_context()
    t = tables or _tables(params, x, ctx)
    s = params.s
    l2 = ctx.log_sqrt_2pi
    return (l2 * weighted_partial_sum(t.f_phi, x, s, ctx)
            - l2 * weighted_partial_sum(t.f, x, s, ctx)
            - ctx.mp.mpf(s) / 2 * weighted_partial_sum(t.f_lambda, x, s, ctx))


def rhs_H(x, params: SweepParams, ctx: PrecisionContext | None = None, tables=None):
    """B_m sum over d*l <= x of (f*mu)(d) d^-s l^-ms."""
    ctx = ctx or default_context()
    bm = bernoulli_number(params.m)
    if bm == 0:
        return ctx.mp.zero
    t = tables or _tables(params, x, ctx)
    return ctx.real(bm) * hyperbola_sum(x, t.F, params.s, params.m * params.s, ctx)


def rhs_M(x, params: SweepParams, ctx: PrecisionContext | None = None, tables=None):
    """(1/2) S(f) + (1/(r+1)) [hyperbola(0) + sum_m C(r+1, 2m) B_2m hyperbola(2ms)]."""
    ctx = ctx or default_context()
    t = tables or _tables(params, x, ctx)
    s, r = params.s, params.r
    mp = ctx.mp
    parts = [weighted_partial_sum(t.f, x, s, ctx) / 2,
             hyperbola_sum(x, t.F, s, 0, ctx) / (r + 1)]
    for m in range(1, r // 2 + 1):
        c = Fraction(comb(r + 1, 2 * m)) * bernoulli_number(2 * m) / (r + 1)
        parts.append(ctx.real(c) * hyperbola_sum(x, t.F, s, 2 * m * s, ctx))
    return mp.fsum(parts)


_RHS = {"A": rhs_A, "H": rhs_H, "M": rhs_M}
_TERMS = {"A": A_terms, "H": H_terms, "M": M_terms}


def verify_identity(which: str, params: SweepParams, ctx: PrecisionContext | None = None,
                    mode: str | None = None, workers: int = 1, cap: int = DIRECT_CAP) -> VerificationReport:
    """One row per grid point; residuals are judged at identity_tol * (1 + |lhs|)."""
    if which not in IDENTITIES:
        raise ValueError(f"unknown identity {which!r}; choose from {', '.join(IDENTITIES)}")
    if not params.x_grid:
        raise ValueError("empty x grid")
    ctx = ctx or default_context()
    mode = mode or DEFAULT_MODES[which]
    tables = _tables(params, params.x_max, ctx)
    terms = _TERMS[which](params.x_max, params, mode, ctx, tables, workers, cap)
    lhs_at = cumulative(terms, ctx)
    mp = ctx.mp
    rows = []
    for x in params.x_grid:
        n = math.floor(x)
        lhs = lhs_at[n]
        rhs = _RHS[which](n, params, ctx, tables)
        res_s = format_real(abs(lhs - rhs), ctx)
        tol_s = format_real(ctx.identity_tol * (1 + abs(lhs)), ctx)
        # judged on the stored representations
        ok = mp.mpf(res_s) <= mp.mpf(tol_s)
        rows.append(IdentityRow(n, format_real(lhs, ctx), format_real(rhs, ctx), res_s, tol_s, bool(ok)))
    return VerificationReport(which, params, rows, ctx.digits, mode, ctx)
