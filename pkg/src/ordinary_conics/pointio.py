"""Point files: JSON and CSV with exact ``p/q`` coordinates.

JSON::

    {"points": [{"x": "3/5", "y": "4/5", "label": "a"}, ...],
     "metadata": {...}}

CSV has a header row and two columns of ``p/q`` strings (optional third
``label`` column). A file whose metadata carries ``"numeric": true`` holds
decimal strings at ``metadata["precision_bits"]`` and loads as mpmath values.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .incidence import PointSet

__all__ = ["PointFile", "ParseError", "format_rational", "parse_rational",
           "read_points", "write_points", "loads", "dumps"]


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class PointFile:
    points: list
    labels: Optional[list[str]] = None
    metadata: dict = field(default_factory=dict)

    @property
    def numeric(self) -> bool:
        return bool(self.metadata.get("numeric"))

    def point_set(self) -> PointSet:
        if self.numeric:
            raise TypeError("numeric point files have no exact PointSet")
        return PointSet(tuple(self.points), None if self.labels is None else tuple(self.labels))


_RATIONAL = re.compile(r"^\s*[-+]?\d+(\s*/\s*\d+)?\s*$")


def format_rational(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise ValueError(f"not a p/q rational: {s!r}")
    value = Fraction(s.replace(" ", ""))
    return value


def _parse_numeric(s: str, ctx):
    if not isinstance(s, str):
        raise ValueError(f"not a decimal string: {s!r}")
    return ctx.mpf(s)


def _line_of(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _point_positions(text: str) -> list[int]:
    """Start offsets of each element of the top-level "points" array, best effort."""
    m = re.search(r'"points"\s*:\s*\[', text)
    if not m:
        return []
    dec = json.JSONDecoder()
    pos = m.end()
    out = []
    while True:
        while pos < len(text) and text[pos] in " \t\r\n,":
            pos += 1
        if pos >= len(text) or text[pos] == "]":
            return out
        try:
            _, end = dec.raw_decode(text, pos)
        except json.JSONDecodeError:
            return out
        out.append(pos)
        pos = end


def _finish(raw: list[tuple[str, str, Optional[str], int]], metadata: dict) -> PointFile:
    numeric = bool(metadata.get("numeric"))
    ctx = None
    if numeric:
        from .constructions import make_context
        ctx = make_context(int(metadata.get("precision_bits", 128)))
    pts, labels, seen = [], [], {}
    for x, y, label, line in raw:
        try:
            p = (_parse_numeric(x, ctx), _parse_numeric(y, ctx)) if numeric else \
                (parse_rational(x), parse_rational(y))
        except (ValueError, TypeError) as exc:
            raise ParseError(str(exc), line) from None
        if not numeric:
            if p in seen:
                raise ParseError(f"duplicate point {x}, {y} (first on line {seen[p]})", line)
            seen[p] = line
        pts.append(p)
        labels.append(label)
    if all(lab is None for lab in labels):
        labels = None
    elif any(lab is None for lab in labels):
        labels = [lab if lab is not None else "" for lab in labels]
    return PointFile(pts, labels, metadata)


def loads(text: str, fmt: str = "json") -> PointFile:
    if fmt == "csv":
        return _loads_csv(text)
    if fmt != "json":
        raise ValueError(f"unknown format {fmt!r}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise ParseError('expected an object with a "points" array', 1)
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise ParseError('"metadata" must be an object', 1)
    positions = _point_positions(text)
    raw = []
    for i, entry in enumerate(doc["points"]):
        line = _line_of(text, positions[i]) if i < len(positions) else None
        if not isinstance(entry, dict) or "x" not in entry or "y" not in entry:
            raise ParseError(f'point #{i} needs "x" and "y"', line)
        label = entry.get("label")
        raw.append((entry["x"], entry["y"], None if label is None else str(label), line))
    return _finish(raw, metadata)


def _loads_csv(text: str) -> PointFile:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise ParseError("empty CSV (header row required)", 1)
    header = [h.strip().lower() for h in rows[0]]
    if header[:2] != ["x", "y"]:
        raise ParseError('CSV header must start with "x,y"', 1)
    has_label = len(header) > 2 and header[2] == "label"
    raw = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < 2:
            raise ParseError("expected two coordinates", lineno)
        label = row[2] if has_label and len(row) > 2 else None
        raw.append((row[0].strip(), row[1].strip(), label, lineno))
    return _finish(raw, {})


def read_points(path, fmt: Optional[str] = None) -> PointFile:
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    return loads(path.read_text(), fmt)


def _coord(v, numeric: bool, digits: int) -> str:
    if numeric:
        ctx = getattr(v, "context", None)
        return ctx.nstr(v, digits) if ctx is not None else repr(float(v))
    return format_rational(v)


def dumps(points: Sequence, labels: Optional[Sequence[str]] = None, metadata: Optional[dict] = None,
          fmt: str = "json") -> str:
    metadata = dict(metadata or {})
    numeric = bool(metadata.get("numeric"))
    digits = int(metadata.get("precision_bits", 128) * 0.30103) + 2
    coords = [(_coord(p[0], numeric, digits), _coord(p[1], numeric, digits)) for p in points]
    if fmt == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "y", "label"] if labels is not None else ["x", "y"])
        for i, (x, y) in enumerate(coords):
            w.writerow([x, y, labels[i]] if labels is not None else [x, y])
        return out.getvalue()
    entries = []
    for i, (x, y) in enumerate(coords):
        e = {"x": x, "y": y}
        if labels is not None:
            e["label"] = labels[i]
        entries.append(e)
    doc = {"points": entries}
    if metadata:
        doc["metadata"] = metadata
    # One point per line keeps parse errors pointing at the offending entry.
    body = ",\n    ".join(json.dumps(e) for e in entries)
    text = '{\n  "points": [\n    ' + body + "\n  ]"
    if metadata:
        text += ',\n  "metadata": ' + json.dumps(metadata, sort_keys=True)
    return text + "\n}\n"


def write_points(path, points, labels=None, metadata=None, fmt: Optional[str] = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    path.write_text(dumps(points, labels, metadata, fmt))
