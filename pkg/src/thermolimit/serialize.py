"""Deterministic CSV/JSON writers for experiment artifacts.

CSV uses ',' delimiter, '.' decimal point, a header row and LF line endings.
Floats are rendered with repr (shortest round-trip form), so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    path.write_text("\n".join(lines) + "\n", newline="\n")


def write_json(path, payload) -> None:
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", newline="\n"
    )
