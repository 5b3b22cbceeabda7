"""Lines determined by a finite planar point set.

Lines are keyed by a primitive integer triple ``(A, B, C)`` with
``A x + B y + C = 0``, sign-normalised so the first nonzero entry is positive.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, ceil
from typing import Iterable, Optional, Sequence

from .qlinalg import primitive_vector

Point2 = tuple[Fraction, Fraction]
LineKey = tuple[int, int, int]

__all__ = [
    "Point2",
    "PointSet",
    "LineRecord",
    "LineProfile",
    "line_through",
    "on_line",
    "enumerate_lines",
    "line_profile",
    "ordinary_lines",
    "double_ordinary_point",
    "double_ordinary_triple",
    "noncollinear_triples",
    "is_collinear",
    "is_near_collinear",
    "check_line_theorems",
    "TheoremChecks",
    "as_point",
]


def as_point(p: Sequence) -> Point2:
    x, y = p
    return (Fraction(x), Fraction(y))


@dataclass(frozen=True)
class PointSet:
    """Finite set of distinct rational points, in a fixed order."""

    points: tuple[Point2, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        if len(set(pts)) != len(pts):
            seen = set()
            dup = next(p for p in pts if p in seen or seen.add(p))
            raise ValueError(f"duplicate point {dup}")
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(pts):
                raise ValueError("labels and points differ in length")
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def subset(self, indices: Iterable[int]) -> "PointSet":
        idx = list(indices)
        labels = None if self.labels is None else tuple(self.labels[i] for i in idx)
        return PointSet(tuple(self.points[i] for i in idx), labels)


def _points(s) -> tuple[Point2, ...]:
    if isinstance(s, PointSet):
        return s.points
    return tuple(as_point(p) for p in s)


def line_through(p: Point2, q: Point2) -> LineKey:
    (x1, y1), (x2, y2) = p, q
    if p == q:
        raise ValueError("a line needs two distinct points")
    return primitive_vector((y1 - y2, x2 - x1, x1 * y2 - x2 * y1))


def on_line(line: LineKey, p: Point2) -> bool:
    a, b, c = line
    return a * p[0] + b * p[1] + c == 0


@dataclass(frozen=True)
class LineRecord:
    line: LineKey
    member_indices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.member_indices)


@dataclass(frozen=True)
class LineProfile:
    total_lines: int
    multiplicity_counts: dict[int, int]
    collinear: bool
    melchior_slack: Optional[int] = None

    def n(self, k: int) -> int:
        return self.multiplicity_counts.get(k, 0)


def enumerate_lines(s) -> list[LineRecord]:
    """Every line spanned by at least two points, with its full membership.

    Output is sorted by member indices.
    """
    pts = _points(s)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    members: dict[LineKey, set[int]] = defaultdict(set)
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            key = line_through(pts[i], pts[j])
            m = members[key]
            m.add(i)
            m.add(j)
    records = [LineRecord(k, tuple(sorted(v))) for k, v in members.items()]
    records.sort(key=lambda r: r.member_indices)
    return records


def line_profile(s, lines: Optional[list[LineRecord]] = None) -> LineProfile:
    if lines is None:
        lines = enumerate_lines(s)
    counts = Counter(r.size for r in lines)
    collinear = len(lines) == 1
    slack = None
    if not collinear:
        slack = counts.get(2, 0) - 3 - sum((k - 3) * v for k, v in counts.items() if k >= 4)
    return LineProfile(len(lines), dict(sorted(counts.items())), collinear, slack)


def ordinary_lines(s, avoid: Sequence = ()) -> list[LineRecord]:
    """Two-point lines of ``s`` not passing through any point of ``avoid``."""
    avoid_pts = [as_point(p) for p in avoid]
    return [r for r in enumerate_lines(s)
            if r.size == 2 and not any(on_line(r.line, a) for a in avoid_pts)]


def double_ordinary_point(s) -> Optional[Point2]:
    """Lexicographically smallest point on two lines with two or three points each."""
    pts = _points(s)
    if len(pts) < 3:
        raise ValueError("need at least three points")
    small = Counter()
    for r in enumerate_lines(pts):
        if r.size in (2, 3):
            small.update(r.member_indices)
    candidates = [pts[i] for i, c in small.items() if c >= 2]
    return min(candidates) if candidates else None


def double_ordinary_triple(s) -> Optional[tuple[int, int, int, LineRecord, LineRecord]]:
    """Index ``p`` from :func:`double_ordinary_point` plus partners ``q``, ``r``.

    ``q`` and ``r`` are the smallest other members of the first two small
    lines through ``p`` (in member-index order).
    """
    pts = _points(s)
    p = double_ordinary_point(pts)
    if p is None:
        return None
    ip = pts.index(p)
    through = [r for r in enumerate_lines(pts) if r.size in (2, 3) and ip in r.member_indices]
    l1, l2 = through[0], through[1]
    q = min(i for i in l1.member_indices if i != ip)
    r = min(i for i in l2.member_indices if i != ip)
    return ip, q, r, l1, l2


def noncollinear_triples(s, lines: Optional[list[LineRecord]] = None) -> int:
    pts = _points(s)
    if len(pts) < 3:
        raise ValueError("need at least three points")
    if lines is None:
        lines = enumerate_lines(pts)
    return comb(len(pts), 3) - sum(comb(r.size, 3) for r in lines)


def is_collinear(s) -> bool:
    pts = _points(s)
    if len(pts) <= 2:
        return True
    key = line_through(pts[0], pts[1])
    return all(on_line(key, p) for p in pts[2:])


def is_near_collinear(s) -> bool:
    """All points but exactly one lie on a line (collinear sets excluded)."""
    pts = _points(s)
    if is_collinear(pts):
        return False
    return any(is_collinear(pts[:i] + pts[i + 1:]) for i in range(len(pts)))


@dataclass
class TheoremChecks:
    """Outcome of the classical line inequalities on one point set."""

    collinear: bool
    n: int
    results: dict[str, Optional[bool]] = field(default_factory=dict)
    values: dict[str, object] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(v is not False for v in self.results.values())


def check_line_theorems(s) -> TheoremChecks:
    """Melchior, De Bruijn-Erdos, Kelly-Moser, pair count and triple bound.

    Collinear inputs get ``None`` results (skipped) apart from the pair count.
    """
    pts = _points(s)
    n = len(pts)
    lines = enumerate_lines(pts)
    prof = line_profile(pts, lines)
    out = TheoremChecks(prof.collinear, n)
    pair_total = sum(comb(r.size, 2) for r in lines)
    out.values["pair_total"] = pair_total
    out.results["pair_count"] = pair_total == comb(n, 2)
    if prof.collinear:
        for name in ("melchior", "de_bruijn_erdos", "kelly_moser", "triple_bound"):
            out.results[name] = None
        return out
    n_ord = prof.n(2)
    out.values["melchior_slack"] = prof.melchior_slack
    out.results["melchior"] = prof.melchior_slack >= 0
    out.values["total_lines"] = prof.total_lines
    out.results["de_bruijn_erdos"] = prof.total_lines >= n
    out.values["ordinary_lines"] = n_ord
    out.values["kelly_moser_bound"] = ceil(3 * n / 7)
    out.results["kelly_moser"] = n_ord >= ceil(3 * n / 7)
    triples = noncollinear_triples(pts, lines)
    c = Fraction(max(r.size for r in lines), n)
    bound = Fraction(1, 3) * (1 - c) * n * comb(n, 2)
    out.values["noncollinear_triples"] = triples
    out.values["triple_bound"] = bound
    out.results["triple_bound"] = triples >= bound
    return out
