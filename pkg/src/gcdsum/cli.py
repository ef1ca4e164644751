"""gcdsum command line.

    gcdsum sieve --function "jordan_phi(2)" --N 20
    gcdsum verify-identity --which A --s 2 --family phi_s --x-max 100
    gcdsum verify-asymptotic --which H1-phi --x-max 10000 --ratio 1.3
    gcdsum verify-dirichlet --w 3 --N 10000 --family all
    gcdsum error-term --which Delta --x-max 100000
    gcdsum report-all

Exit codes: 0 every row passes, 1 some verification failed, 2 usage error,
3 I/O error, 4 a direct-path resource cap was hit.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analytic import PrecisionContext
from .arith import dump_csv, sieve
from .gcdsums import FAMILIES, ResourceCapError, SweepParams

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_CAP = 0, 1, 2, 3, 4

COMMANDS = ("sieve", "verify-identity", "verify-asymptotic", "verify-dirichlet", "error-term", "report-all")
THEOREM_COMMANDS = ("verify-asymptotic", "verify-dirichlet")
DIGITS_ENV = "GCDSUM_DIGITS"
DEFAULT_DIGITS = 40


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    which: str | None = None
    function: str | None = None
    s: int = 2
    a: Fraction | None = None
    m: int = 1
    r: int = 1
    family: str = "phi_s"
    x_min: Fraction | None = None
    x_max: Fraction | None = None
    step: Fraction | None = None
    ratio: float | None = None
    digits: int = DEFAULT_DIGITS
    N: int | None = None
    w: tuple = (2, 3, 5)
    threads: int = 1
    out: str | None = None
    config: str | None = None
    mode: str | None = None
    corrected: bool = False
    criteria: tuple = ()


# -- argument types -------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        v = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _ratio(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (math.isfinite(v) and v > 1):
        raise argparse.ArgumentTypeError(f"ratio must be > 1, got {text}")
    return v


def _w_list(text: str) -> tuple:
    try:
        return tuple(Fraction(p.strip()) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad w list: {text!r}")


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}")


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gcdsum", description="Sieves and verification sweeps for gcd-sum identities.")
    parser.add_argument("--version", action="version", version=f"gcdsum {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--which", help="identity, theorem tag, error term or series, per command")
    common.add_argument("--function", help="sieve: function id such as mobius or jordan_phi(2)")
    common.add_argument("--s", type=_positive_int, default=None)
    common.add_argument("--a", type=_rational, default=None, help="real in (-1, 0), e.g. -1/2")
    common.add_argument("--m", type=_positive_int, default=None)
    common.add_argument("--r", type=_positive_int, default=None)
    common.add_argument("--family", default=None, help=f"one of {', '.join(FAMILIES[:-1])} (or all)")
    common.add_argument("--x-min", dest="x_min", type=_rational, default=None)
    common.add_argument("--x-max", dest="x_max", type=_rational, default=None)
    grid = common.add_mutually_exclusive_group()
    grid.add_argument("--step", type=_rational, default=None, help="linear grid step")
    grid.add_argument("--ratio", type=_ratio, default=None, help="geometric grid ratio")
    common.add_argument("--digits", type=_positive_int, default=None)
    common.add_argument("--N", dest="N", type=_positive_int, default=None)
    common.add_argument("--w", type=_w_list, default=None, help="comma-separated evaluation points")
    common.add_argument("--threads", type=_positive_int, default=None)
    common.add_argument("--out", default=None, help="output path, - for stdout")
    common.add_argument("--config", default=None, help="file of key = value lines")
    common.add_argument("--mode", default=None, help="verify-identity: lhs evaluation path")
    common.add_argument("--corrected", type=_bool, nargs="?", const=True, default=None,
                        help="verify-asymptotic: use the corrected main term / formula")
    common.add_argument("--criteria", type=_int_list, default=None, help="report-all: subset, e.g. 1,6")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


_CONFIG_KEYS = {f.name for f in fields(CliConfig)} - {"command", "config"}
_CONVERT = {
    "s": _positive_int, "m": _positive_int, "r": _positive_int, "a": _rational,
    "x_min": _rational, "x_max": _rational, "step": _rational, "ratio": _ratio,
    "digits": _positive_int, "N": _positive_int, "w": _w_list, "threads": _positive_int,
    "corrected": _bool, "criteria": _int_list,
}


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; unknown keys are errors."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise OSError(f"cannot read config {path}: {e.strerror or e}") from e
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        value = value.strip()
        try:
            out[key] = _CONVERT[key](value) if key in _CONVERT else value
        except argparse.ArgumentTypeError as e:
            raise UsageError(f"{path}:{lineno}: {key}: {e}")
    return out


def _join_negative(argv: list[str]) -> list[str]:
    """'--a -1/2' -> '--a=-1/2'; argparse would read -1/2 as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok.startswith("--") and "=" not in tok and nxt[:1] == "-" and nxt[1:2].isdigit():
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def parse_args(argv=None) -> CliConfig:
    """Flags win over the config file, which wins over GCDSUM_DIGITS and defaults."""
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = build_parser().parse_args(_join_negative(argv))
    values = {}
    env = os.environ.get(DIGITS_ENV)
    if env:
        try:
            values["digits"] = _positive_int(env)
        except argparse.ArgumentTypeError as e:
            raise UsageError(f"{DIGITS_ENV}: {e}")
    if ns.config:
        values.update(read_config(ns.config))
    for k, v in vars(ns).items():
        if v is not None and k != "command":
            values[k] = v
    cfg = CliConfig(command=ns.command, **values)
    _validate(cfg)
    return cfg


def _validate(cfg: CliConfig):
    if cfg.a is not None and not (-1 < cfg.a < 0):
        raise UsageError(f"--a must lie in (-1, 0), got {cfg.a}")
    if cfg.command in THEOREM_COMMANDS and cfg.s <= 1:
        raise UsageError(f"--s must be >= 2 for {cfg.command}, got {cfg.s}")
    if cfg.family != "all" and cfg.family not in FAMILIES[:-1]:
        raise UsageError(f"--family must be one of {', '.join(FAMILIES[:-1])}, got {cfg.family!r}")
    if cfg.family in ("phi_sa", "psi_sa") and cfg.a is None:
        cfg.a = Fraction(-1, 2)
    if cfg.x_max is not None and cfg.x_max < 1:
        raise UsageError("--x-max must be >= 1")
    if cfg.step is not None and cfg.step <= 0:
        raise UsageError("--step must be positive")
    if cfg.digits < 15 or cfg.digits > 1000:
        raise UsageError(f"--digits must be between 15 and 1000, got {cfg.digits}")


# -- grids ----------------------------------------------------------------------------

def _x(v: Fraction):
    return v.numerator if v.denominator == 1 else v


def build_grid(x_min, x_max, step=None, ratio=None) -> tuple:
    """Linear grid x_min, x_min + step, ... or geometric x_min * ratio^i, up to x_max."""
    x_min, x_max = Fraction(x_min), Fraction(x_max)
    if x_min < 1 or x_max < x_min:
        raise UsageError(f"grid needs 1 <= x-min <= x-max, got {x_min}, {x_max}")
    if ratio is not None:
        pts, i = set(), 0
        while True:
            v = x_min * Fraction(ratio) ** i
            if v > x_max:
                break
            pts.add(Fraction(round(v)))
            i += 1
        pts.add(x_max)
        return tuple(_x(p) for p in sorted(p for p in pts if x_min <= p <= x_max))
    step = Fraction(step or 1)
    n = math.floor((x_max - x_min) / step)
    return tuple(_x(x_min + i * step) for i in range(n + 1))


# -- commands -------------------------------------------------------------------------

def _params(cfg: CliConfig, family=None, grid=()) -> SweepParams:
    fam = family or cfg.family
    a = cfg.a if cfg.a is not None else (Fraction(-1, 2) if fam.endswith("sa") else None)
    return SweepParams(s=cfg.s, a=a, m=cfg.m, r=cfg.r, family=fam, x_grid=grid)


def _write(text: str, out):
    from .reporting import write_text
    write_text(text, out)


def cmd_sieve(cfg: CliConfig, ctx) -> int:
    if not cfg.function:
        raise UsageError("sieve needs --function")
    N = cfg.N or (math.floor(cfg.x_max) if cfg.x_max else None)
    if not N:
        raise UsageError("sieve needs --N (or --x-max)")
    table = sieve(cfg.function, N, ctx)
    _write(dump_csv(table), cfg.out)
    return EXIT_OK


def cmd_verify_identity(cfg: CliConfig, ctx) -> int:
    from .identities import IDENTITIES, verify_identity
    which = cfg.which or "A"
    if which not in IDENTITIES:
        raise UsageError(f"--which must be one of {', '.join(IDENTITIES)} for verify-identity")
    if cfg.family == "all":
        raise UsageError("verify-identity takes a single --family")
    grid = build_grid(cfg.x_min or 1, cfg.x_max or 100, cfg.step, cfg.ratio)
    grid = tuple(sorted({math.floor(x) for x in grid}))
    rep = verify_identity(which, _params(cfg, grid=grid), ctx, cfg.mode, cfg.threads)
    _write(rep.to_csv(), cfg.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_asymptotic(cfg: CliConfig, ctx) -> int:
    from . import asymptotics as asy
    which = cfg.which or "H1-phi"
    grid = build_grid(cfg.x_min or 100, cfg.x_max or 10 ** 4, cfg.step, cfg.ratio or 1.3)
    fam = "phi_sa" if cfg.family == "all" else cfg.family
    p = _params(cfg, family=fam)
    if p.a is None:
        # the a-tags need an exponent even when the family does not
        p = p.with_(a=Fraction(-1, 2))
    if which in asy.THEOREM_TAGS:
        series = asy.residual_series(which, p, grid, ctx, cfg.corrected, cfg.threads)
    elif which in asy.HELPER_TAGS:
        series = asy.helper_sum_check(which, p, grid, ctx, cfg.corrected)
    elif which in {f"{y}-formula" for y in asy.Y_TAGS.values()}:
        tag = {v: k for k, v in asy.Y_TAGS.items()}[which.split("-")[0]]
        series = asy.y_residual(tag, p, grid, ctx, cfg.corrected)
    else:
        choices = list(asy.THEOREM_TAGS) + list(asy.HELPER_TAGS) + ["Y1-formula", "Y2-formula",
                                                                     "Y3-formula", "Y4-formula"]
        raise UsageError(f"--which must be one of {', '.join(choices)}")
    ok, first, second = asy.envelope_no_growth(series) if len(grid) >= 2 else (True, 0, 0)
    slope = asy.loglog_slope(series)
    claimed = float(Fraction(series.claimed_exponent))
    slope_ok = not (slope > claimed + 0.1) if math.isfinite(slope) else True
    series.meta.update({
        "envelope_first_half_max": ctx.mp.nstr(first, 6),
        "envelope_second_half_max": ctx.mp.nstr(second, 6),
        "loglog_slope": f"{slope:.4f}",
        "pass": "true" if ok and slope_ok else "false",
    })
    _write(series.to_csv(), cfg.out)
    return EXIT_OK if ok and slope_ok else EXIT_FAIL


def cmd_verify_dirichlet(cfg: CliConfig, ctx) -> int:
    from .dirichlet import DIRICHLET_FAMILIES, HEADER, check_series
    from .reporting import format_real, render_csv
    which = cfg.which or "K"
    if which not in ("K", "L"):
        raise UsageError("--which must be K or L for verify-dirichlet")
    fams = DIRICHLET_FAMILIES[:4] if cfg.family == "all" else (cfg.family,)
    if fams[0] not in DIRICHLET_FAMILIES:
        raise UsageError(f"--family must be one of {', '.join(DIRICHLET_FAMILIES)} or all")
    N = cfg.N or 10 ** 4
    rows, ok = [], True
    for fam in fams:
        p = _params(cfg, family=fam)
        for w in cfg.w:
            c = check_series(which, _x(Fraction(w)), N, p, cfg.m, ctx, cfg.threads)
            ok &= c.passed
            row = [str(c.w), str(c.N), format_real(c.truncated_sum, ctx), format_real(c.closed_form, ctx),
                   format_real(c.tail_bound, ctx), "true" if c.passed else "false"]
            rows.append(([fam] if len(fams) > 1 else []) + row)
    header = (("family",) if len(fams) > 1 else ()) + HEADER
    meta = {"series": which, "family": cfg.family if len(fams) > 1 else _params(cfg, fams[0]).family_label(),
            "s": cfg.s, "a": cfg.a if cfg.a is not None else Fraction(-1, 2), "m": cfg.m,
            "digits": ctx.digits}
    _write(render_csv(meta, header, rows), cfg.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_error_term(cfg: CliConfig, ctx) -> int:
    from .asymptotics import error_term_series
    which = cfg.which or "Delta"
    if which not in ("Delta", "Delta_a", "D_s", "Dtilde_s"):
        raise UsageError("--which must be one of Delta, Delta_a, D_s, Dtilde_s")
    if which in ("D_s", "Dtilde_s") and cfg.s <= 1:
        raise UsageError(f"--s must be >= 2 for {which}")
    grid = build_grid(cfg.x_min or 10, cfg.x_max or 10 ** 4, cfg.step, cfg.ratio or 1.3)
    p = SweepParams(s=cfg.s, a=cfg.a if cfg.a is not None else Fraction(-1, 2))
    _write(error_term_series(which, grid, p, ctx).to_csv(), cfg.out)
    return EXIT_OK


def cmd_report_all(cfg: CliConfig, ctx) -> int:
    from .acceptance import CRITERIA, run_all, summary_csv
    only = cfg.criteria or None
    if only and any(n not in CRITERIA for n in only):
        raise UsageError(f"--criteria must be drawn from {sorted(CRITERIA)}")
    results = run_all(cfg.threads, only, progress=lambda r: print(r.line(), file=sys.stderr, flush=True))
    _write(summary_csv(results), cfg.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


_RUN = {
    "sieve": cmd_sieve,
    "verify-identity": cmd_verify_identity,
    "verify-asymptotic": cmd_verify_asymptotic,
    "verify-dirichlet": cmd_verify_dirichlet,
    "error-term": cmd_error_term,
    "report-all": cmd_report_all,
}


def run(cfg: CliConfig) -> int:
    ctx = PrecisionContext(cfg.digits)
    try:
        return _RUN[cfg.command](cfg, ctx)
    except ResourceCapError as e:
        print(f"gcdsum: {e}", file=sys.stderr)
        return EXIT_CAP
    except OSError as e:
        print(f"gcdsum: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except UsageError as e:
        print(f"gcdsum: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"gcdsum: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"gcdsum: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
