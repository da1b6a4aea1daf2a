"""Deterministic CSV and text report writers."""

from __future__ import annotations

import os
from pathlib import Path

from .errors import DomainError


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)  # shortest string that round-trips
    return str(v)


def emit_csv(series, headers, path) -> Path:
    """Write ``series`` (a list of equal-length records) under one header row.

    Floats are written with 17 significant digits so they parse back to the
    same doubles.  Nothing is written when ``series`` is empty.
    """
    rows = list(series)
    if not rows:
        raise DomainError("refusing to write an empty series")
    headers = list(headers)
    for row in rows:
        if len(row) != len(headers):
            raise DomainError(f"row {row!r} does not match headers {headers!r}")
    path = Path(path)
    lines = [",".join(headers)]
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)
    return path


def write_report(lines, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
