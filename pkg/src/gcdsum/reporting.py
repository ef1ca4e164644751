"""CSV reports with a ``# key=value`` metadata preamble."""

from __future__ import annotations

import csv
import io
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__

TIMESTAMP_KEY = "timestamp"


def format_real(v, ctx) -> str:
    """Fixed significant-digit rendering so identical values give identical bytes."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return ctx.mp.nstr(ctx.real(v), ctx.digits, strip_zeros=False, min_fixed=-4, max_fixed=8)


def render_csv(meta: dict, header: Sequence[str], rows: Iterable[Sequence[str]],
               timestamp: bool = True) -> str:
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={'' if v is None else v}\n")
    buf.write(f"# version={__version__}\n")
    if timestamp:
        buf.write(f"# {TIMESTAMP_KEY}={datetime.now(timezone.utc).isoformat(timespec='seconds')}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def csv_body(text: str) -> str:
    """Report text without the timestamp line (the only run-dependent line)."""
    return "".join(line for line in text.splitlines(keepends=True)
                   if not line.startswith(f"# {TIMESTAMP_KEY}="))


def write_text(text: str, out: str | os.PathLike | None):
    if out is None or str(out) == "-":
        import sys
        sys.stdout.write(text)
        return
    Path(out).write_text(text)


def read_csv_report(source) -> tuple[dict, list[dict]]:
    """Parse a report from a path or from its text; returns (metadata, rows)."""
    if isinstance(source, os.PathLike) or (isinstance(source, str) and "\n" not in source):
        text = Path(source).read_text()
    else:
        text = source
    meta: dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key.strip()] = value
        elif line.strip():
            body.append(line)
    rows = list(csv.DictReader(body))
    return meta, rows
