"""JSON / CSV / text emitters with diff-stable float formatting.

Floats are written in shortest round-trip form (``repr``) in every format, so
the JSON and CSV renderings of one run carry identical numbers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

from .scalars import QQi, fraction_str

JSON = "json"
CSV = "csv"
TEXT = "text"
FORMATS = (JSON, CSV, TEXT)


def plain(obj):
    """Convert to JSON-compatible values (Fractions to floats, complex to pairs)."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, QQi):
        if obj.im == 0:
            return fraction_str(obj.re)
        return [fraction_str(obj.re), fraction_str(obj.im)]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return repr(obj)
        return obj
    return str(obj)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def to_json(obj) -> str:
    return json.dumps(plain(obj), indent=2) + "\n"


def to_csv(rows) -> str:
    rows = [plain(r) for r in rows]
    if not rows:
        return ""
    header = list(rows[0])
    for r in rows[1:]:
        header += [k for k in r if k not in header]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(r.get(k)) for k in header])
    return buf.getvalue()


def to_text(rows) -> str:
    rows = [plain(r) for r in rows]
    if not rows:
        return "(no rows)\n"
    header = list(rows[0])
    table = [header] + [[_cell(r.get(k)) for k in header] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table]
    return "\n".join(lines) + "\n"


def render(obj, fmt: str, rows=None) -> str:
    """``obj`` is the JSON document; ``rows`` its tabular view for CSV/text."""
    if fmt == JSON:
        return to_json(obj)
    rows = rows if rows is not None else (obj if isinstance(obj, list) else [obj])
    if fmt == CSV:
        return to_csv(rows)
    if fmt == TEXT:
        return to_text(rows)
    raise ValueError(f"unknown format {fmt!r}")
