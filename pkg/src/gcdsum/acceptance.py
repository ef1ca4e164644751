"""The acceptance matrix: eight numbered criteria, each returning a CriterionResult.

Shared by ``gcdsum report-all`` and the test suite.  Every criterion builds
its own PrecisionContext so results do not depend on what ran before.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .analytic import PrecisionContext, bernoulli_poly, log_gamma, zeta
from .asymptotics import (
    c_fit_check,
    envelope_no_growth,
    geometric_grid,
    helper_sum_check,
    residual_series,
    y_residual,
)
from .dirichlet import check_series, series_report
from .gcdsums import (
    A_direct_terms_multi,
    A_terms,
    SweepParams,
    cumulative,
    family_tables,
    nu,
)
from .identities import verify_identity
from .reporting import csv_body, render_csv

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_all", "summary_csv"]

DIGITS = 40
HALF = Fraction(-1, 2)
ID_FAMILIES = ("phi_s", "psi_s", "phi_sa", "psi_sa", "one")
SERIES_FAMILIES = ("phi_s", "psi_s", "phi_sa", "psi_sa")


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    budget: float | None = None
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    artifacts: list[str] = field(default_factory=list, repr=False)

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} [{status}] {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _params(s, family, **kw):
    return SweepParams(s=s, family=family, a=HALF if family.endswith("sa") else None, **kw)


def _fmt(v) -> str:
    return f"{float(v):.3g}"


def _finish(number, title, checks, budget, artifacts=(), extra=""):
    failed = [c for c in checks if not c[1]]
    passed = not failed
    if passed:
        detail = f"{len(checks)} checks passed"
    else:
        detail = f"{len(failed)}/{len(checks)} failed: " + "; ".join(f"{n} ({d})" for n, _, d in failed[:6])
    if extra:
        detail += f"; {extra}"
    return CriterionResult(number, title, passed, detail, budget=budget, checks=list(checks),
                           artifacts=list(artifacts))


# 1 ---------------------------------------------------------------------------------

def identity_suite(workers: int = 1) -> CriterionResult:
    ctx = PrecisionContext(DIGITS)
    checks, artifacts = [], []
    worst = 0
    for s, x_max in ((2, 100), (3, 30)):
        grid = tuple(range(1, x_max + 1))
        for fam in ID_FAMILIES:
            base = _params(s, fam, x_grid=grid)
            runs = [("A", base)]
            runs += [("H", base.with_(m=m)) for m in (1, 2, 4)]
            runs += [("M", base.with_(r=r)) for r in (1, 2, 3)]
            for which, p in runs:
                rep = verify_identity(which, p, ctx, workers=workers)
                for row in rep.rows:
                    rel = ctx.mp.mpf(row.abs_residual) / (1 + abs(ctx.mp.mpf(row.lhs)))
                    worst = max(worst, rel)
                name = f"{which} s={s} {fam} m={p.m} r={p.r}"
                bad = rep.failures()
                checks.append((name, rep.passed, f"{len(bad)} rows over tolerance" if bad else "ok"))
                artifacts.append(rep.to_csv(timestamp=False))
    return _finish(1, "exact identity suite", checks, 300, artifacts,
                   f"worst relative residual {_fmt(worst)} vs {_fmt(ctx.identity_tol)}")


# 2 ---------------------------------------------------------------------------------

def oracle_equivalence(workers: int = 1) -> CriterionResult:
    ctx = PrecisionContext(DIGITS)
    mp = ctx.mp
    tol = mp.mpf(10) ** -30
    checks, rows = [], []
    # largest x with sum_{k<=x} k^s <= 10^7
    for s, x_max in ((2, 310), (3, 79)):
        tabs = [family_tables(_params(s, f), x_max, ctx) for f in ID_FAMILIES]
        direct = A_direct_terms_multi(x_max, s, [t.F for t in tabs], ctx, workers)
        for fam, t, d in zip(ID_FAMILIES, tabs, direct):
            fast = A_terms(x_max, _params(s, fam), "gauss-fast", ctx, t, workers)
            cf, cd = cumulative(fast, ctx), cumulative(d, ctx)
            rel = max(abs(a - b) / max(1, abs(b)) for a, b in zip(cf[1:], cd[1:]))
            checks.append((f"A s={s} {fam} x<={x_max}", bool(rel <= tol), _fmt(rel)))
            rows.append([f"A s={s} {fam}", ctx.mp.nstr(rel, 5)])
    one = family_tables(_params(2, "one"), 100, ctx).basic("one")
    for s, k_max in ((2, 100), (3, 21)):
        for fam in ID_FAMILIES:
            F = family_tables(_params(s, fam), k_max, ctx).F
            for m in (1, 2, 3, 4):
                worst = max(abs(nu(k, s, m, F, one, ctx) - nu(k, s, m, F, one, ctx, "direct"))
                            for k in range(1, k_max + 1))
                checks.append((f"nu s={s} {fam} m={m}", bool(worst <= tol), _fmt(worst)))
                rows.append([f"nu s={s} {fam} m={m}", ctx.mp.nstr(worst, 5)])
    art = render_csv({"criterion": 2}, ("check", "max_abs_or_rel_diff"), rows, timestamp=False)
    return _finish(2, "oracle equivalence", checks, 120, [art])


# 3 ---------------------------------------------------------------------------------

def lemma_suite(workers: int = 1) -> CriterionResult:
    ctx = PrecisionContext(DIGITS)
    grid = geometric_grid(100, 10 ** 4)
    checks, artifacts, notes = [], [], []
    for which, fam in (("totient-sum", "phi_s"), ("totient-sum", "psi_s"),
                       ("totient-sum-a", "phi_sa"), ("totient-sum-a", "psi_sa")):
        series = helper_sum_check(which, _params(2, fam), grid, ctx)
        ok, C, worst = c_fit_check(series, 100, 2)
        checks.append((f"{which} {fam}", ok, f"C={_fmt(C)}, max={_fmt(worst)}, ratio {_fmt(worst / C)}"))
        env_ok, _, _ = envelope_no_growth(series)
        notes.append(f"{which} {fam} envelope {'flat' if env_ok else 'grows'}")
        artifacts.append(series.to_csv(timestamp=False))
    return _finish(3, "lemma residuals, C fitted at x=100", checks, 60, artifacts, ", ".join(notes))


# 4 ---------------------------------------------------------------------------------

def theorem_envelopes(workers: int = 1) -> CriterionResult:
    ctx = PrecisionContext(DIGITS)
    grid = geometric_grid(100, 10 ** 4)
    checks, artifacts = [], []
    for tag in ("A-phi", "A-phi-a", "A-psi", "A-psi-a"):
        series = residual_series(tag, _params(2, "phi_sa"), grid, ctx, workers=workers)
        ok, first, second = envelope_no_growth(series)
        checks.append((series.label, ok, f"first half {_fmt(first)}, second half {_fmt(second)}"))
        artifacts.append(series.to_csv(timestamp=False))
    tags = [("H1-phi", 1), ("H1-psi", 1), ("H1-phi-a", 1), ("H1-psi-a", 1)]
    tags += [(t, m) for t in ("H2m-phi", "H2m-psi", "H2m-phi-a", "H2m-psi-a") for m in (1, 2)]
    for tag, m in tags:
        series = residual_series(tag, _params(2, "phi_sa", m=m), grid, ctx, workers=workers)
        ok, C, worst = c_fit_check(series, 100, 2)
        name = tag if tag.startswith("H1") else f"{tag} m={m}"
        checks.append((name, ok, f"C={_fmt(C)}, max={_fmt(worst)}"))
        artifacts.append(series.to_csv(timestamp=False))
    return _finish(4, "theorem residual envelopes", checks, 600, artifacts)


# 5 ---------------------------------------------------------------------------------

def y_formula_check(workers: int = 1) -> CriterionResult:
    ctx = PrecisionContext(DIGITS)
    grid = (10, 50, 100, 500)
    checks, artifacts = [], []
    for tag in ("A-phi", "A-psi"):
        series = y_residual(tag, _params(2, "phi_s"), grid, ctx)
        # C fitted at the first point, never exceeded by more than 2x
        ok, C, worst = c_fit_check(series, grid[0], 2)
        norm = ", ".join(_fmt(v) for v in series.normalized)
        checks.append((series.label, ok, f"normalized {norm}"))
        artifacts.append(series.to_csv(timestamp=False))
    return _finish(5, "Y-formula cross-check", checks, 120, artifacts)


# 6 ---------------------------------------------------------------------------------

def dirichlet_suite(workers: int = 1, N: int = 10 ** 4) -> CriterionResult:
    ctx = PrecisionContext(DIGITS)
    checks, artifacts = [], []
    for fam in SERIES_FAMILIES:
        for s in (2, 3):
            p = _params(s, fam)
            for series, m in (("K", 1), ("L", 1), ("L", 2)):
                rows = [check_series(series, w, N, p, m, ctx, workers) for w in (2, 3, 5)]
                for c in rows:
                    name = f"{series}{m if series == 'L' else ''} {fam} s={s} w={c.w}"
                    gap = abs(c.truncated_sum - c.closed_form)
                    checks.append((name, c.passed, f"gap {_fmt(gap)} vs bound {_fmt(c.tail_bound)}"))
                meta = {"series": series, "family": p.family_label(), "s": s, "a": p.a, "m": m}
                artifacts.append(series_report(rows, meta, ctx, timestamp=False))
    return _finish(6, "Dirichlet series closed forms", checks, 180, artifacts)


# 7 ---------------------------------------------------------------------------------

def special_functions(workers: int = 1) -> CriterionResult:
    ctx = PrecisionContext(DIGITS)
    mp = ctx.mp
    tol = ctx.identity_tol
    checks = []
    worst = 0
    for n in range(2, 501):
        total = mp.fsum(log_gamma(Fraction(j, n), ctx) for j in range(1, n))
        ref = (n - 1) * ctx.log_sqrt_2pi - ctx.log(n) / 2
        worst = max(worst, abs(total - ref) / (1 + abs(ref)))
    checks.append(("Gauss product n<=500", bool(worst <= tol), _fmt(worst)))
    worst = 0
    for j in range(1, 100):
        x = Fraction(j, 100)
        lhs = log_gamma(x, ctx) + log_gamma(1 - x, ctx)
        rhs = mp.log(mp.pi) - mp.log(mp.sin(mp.pi * ctx.real(x)))
        worst = max(worst, abs(lhs - rhs))
    checks.append(("reflection j/100", bool(worst <= tol), _fmt(worst)))
    bad = 0
    for x in (Fraction(0), Fraction(2, 7), Fraction(-3, 5), Fraction(11, 3)):
        for m in range(1, 13):
            for n in range(1, 65):
                lhs = bernoulli_poly(m, n * x, ctx)
                rhs = n ** (m - 1) * sum(bernoulli_poly(m, x + Fraction(k, n), ctx) for k in range(n))
                bad += lhs != rhs
    checks.append(("multiplication theorem m<=12 n<=64", bad == 0, f"{bad} mismatches"))
    for k, ref in ((2, mp.pi ** 2 / 6), (4, mp.pi ** 4 / 90)):
        err = abs(zeta(k, ctx=ctx) - ref)
        checks.append((f"zeta({k})", bool(err <= mp.mpf(10) ** -35), _fmt(err)))
    return _finish(7, "special-function certification", checks, 60)


# 8 ---------------------------------------------------------------------------------

def _determinism_artifacts(workers: int) -> list[str]:
    ctx = PrecisionContext(DIGITS)
    out = []
    grid = tuple(range(1, 61))
    for which, p in (("A", _params(2, "psi_sa", x_grid=grid)),
                     ("H", _params(2, "phi_s", m=2, x_grid=grid)),
                     ("M", _params(3, "one", r=3, x_grid=tuple(range(1, 21))))):
        out.append(verify_identity(which, p, ctx, workers=workers).to_csv(timestamp=False))
    out.append(verify_identity("A", _params(2, "phi_s", x_grid=tuple(range(1, 41))), ctx,
                               mode="direct", workers=workers).to_csv(timestamp=False))
    out.append(residual_series("A-phi", _params(2, "phi_s"), geometric_grid(100, 3000), ctx,
                               workers=workers).to_csv(timestamp=False))
    rows = [check_series("K", w, 2000, _params(2, "phi_sa"), 1, ctx, workers) for w in (2, 3)]
    out.append(series_report(rows, {"series": "K"}, ctx, timestamp=False))
    return out


def determinism(workers: int = 8) -> CriterionResult:
    one = _determinism_artifacts(1)
    many = _determinism_artifacts(max(2, workers))
    checks = [(f"report {i + 1}", csv_body(a) == csv_body(b), "byte-identical" if a == b else "differs")
              for i, (a, b) in enumerate(zip(one, many))]
    return _finish(8, f"determinism, 1 vs {max(2, workers)} workers", checks, None, one)


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: identity_suite,
    2: oracle_equivalence,
    3: lemma_suite,
    4: theorem_envelopes,
    5: y_formula_check,
    6: dirichlet_suite,
    7: special_functions,
    8: determinism,
}


def run_criterion(number: int, workers: int = 1) -> CriterionResult:
    fn = CRITERIA[number]
    t0 = time.perf_counter()
    res = fn(workers=8 if number == 8 else workers)
    res.seconds = time.perf_counter() - t0
    return res


def run_all(workers: int = 1, only=None, progress: Callable[[CriterionResult], None] | None = None):
    results = []
    for n in sorted(only or CRITERIA):
        res = run_criterion(n, workers)
        if progress:
            progress(res)
        results.append(res)
    return results


def summary_csv(results: list[CriterionResult], timestamp: bool = True) -> str:
    rows = ([str(r.number), r.title, "true" if r.passed else "false", f"{r.seconds:.1f}",
             "" if r.budget is None else str(r.budget), r.detail] for r in results)
    meta = {"digits": DIGITS, "criteria": len(results),
            "passed": sum(r.passed for r in results)}
    return render_csv(meta, ("criterion", "title", "pass", "seconds", "budget_seconds", "detail"),
                      rows, timestamp)
