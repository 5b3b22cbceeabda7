"""Conic fitting, classification and brute-force ordinary-conic enumeration.

A conic is stored as the primitive integer vector ``(a0, ..., a5)`` of
``a0 + a1 x + a2 y + a3 x^2 + a4 xy + a5 y^2``. Points are homogenised to
integers ``(W, X, Y)`` once, so fitting and membership run on Python ints.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .incidence import _points, as_point, enumerate_lines
from .qlinalg import nullspace, primitive_vector, rank

__all__ = [
    "ConicClass",
    "Conic",
    "ConicFit",
    "ConicRecord",
    "veronese_row",
    "fit_conic",
    "classify_conic",
    "conic_contains",
    "is_coconic",
    "enumerate_ordinary_conics",
    "verify_ordinary",
]


class ConicClass(str, Enum):
    IRREDUCIBLE = "irreducible"
    TWO_LINES = "two_lines"
    DOUBLE_LINE = "double_line"
    POINTLIKE_OR_EMPTY = "pointlike_or_empty"


def _int_det(m: list[list[int]]) -> int:
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * p - f * rk[j]) // prev
        prev = p
    return sign * a[n - 1][n - 1]


def classify_conic(coefficients: Sequence) -> ConicClass:
    """Real type of a conic from its symmetric matrix (scaled by 2 to stay integral)."""
    a0, a1, a2, a3, a4, a5 = primitive_vector(coefficients)
    m = [[2 * a3, a4, a1], [a4, 2 * a5, a2], [a1, a2, 2 * a0]]
    r = rank(m)
    lead = 4 * a3 * a5 - a4 * a4  # 4 * det of the quadratic part
    if r == 3:
        d = _int_det(m)
        if lead > 0 and (a3 + a5) * d > 0:
            return ConicClass.POINTLIKE_OR_EMPTY
        return ConicClass.IRREDUCIBLE
    if r == 2:
        if lead < 0:
            return ConicClass.TWO_LINES
        if lead > 0:
            return ConicClass.POINTLIKE_OR_EMPTY
        # Parallel pair: real iff the sum of the constant-involving principal minors is negative.
        k = (m[0][0] * m[2][2] - m[0][2] ** 2) + (m[1][1] * m[2][2] - m[1][2] ** 2)
        return ConicClass.TWO_LINES if k < 0 else ConicClass.POINTLIKE_OR_EMPTY
    return ConicClass.DOUBLE_LINE


@dataclass(frozen=True)
class Conic:
    coefficients: tuple[int, ...]
    kind: ConicClass

    @classmethod
    def from_coefficients(cls, coefficients: Sequence) -> "Conic":
        if not any(coefficients):
            raise ValueError("zero coefficient vector is not a conic")
        c = primitive_vector(coefficients)
        return cls(c, classify_conic(c))

    def __call__(self, p) -> Fraction:
        x, y = as_point(p)
        a0, a1, a2, a3, a4, a5 = self.coefficients
        return a0 + a1 * x + a2 * y + a3 * x * x + a4 * x * y + a5 * y * y

    @property
    def irreducible(self) -> bool:
        return self.kind is ConicClass.IRREDUCIBLE


@dataclass(frozen=True)
class ConicFit:
    """Result of fitting five points: ``conic`` is set iff the fit is unique."""

    conic: Optional[Conic]
    pencil_dimension: int = 1

    @property
    def unique(self) -> bool:
        return self.conic is not None


@dataclass(frozen=True)
class ConicRecord:
    conic: Conic
    member_indices: tuple[int, ...]


def veronese_row(p) -> tuple[Fraction, ...]:
    x, y = as_point(p)
    return (Fraction(1), x, y, x * x, x * y, y * y)


def _homog(p) -> tuple[int, int, int]:
    x, y = as_point(p)
    w = lcm(x.denominator, y.denominator)
    return w, x.numerator * (w // x.denominator), y.numerator * (w // y.denominator)


def _int_row(h: tuple[int, int, int]) -> list[int]:
    w, x, y = h
    return [w * w, x * w, y * w, x * x, x * y, y * y]


def _cofactors(rows: list[list[int]]) -> list[int]:
    """Generalised cross product of five 6-vectors (spans their orthogonal complement)."""
    out = []
    for j in range(6):
        minor = [row[:j] + row[j + 1:] for row in rows]
        d = _int_det(minor)
        out.append(-d if j % 2 else d)
    return out


def _quad(c: Sequence[int], row: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(c, row))


def fit_conic(*points) -> ConicFit:
    """Fit a conic through five distinct points."""
    if len(points) == 1 and len(points[0]) == 5:
        points = tuple(points[0])
    if len(points) != 5:
        raise ValueError("fit_conic takes exactly five points")
    pts = [as_point(p) for p in points]
    if len(set(pts)) != 5:
        raise ValueError("fit_conic requires pairwise distinct points")
    rows = [_int_row(_homog(p)) for p in pts]
    c = _cofactors(rows)
    if any(c):
        return ConicFit(Conic.from_coefficients(c))
    return ConicFit(None, 6 - rank(rows))


def conic_contains(c, p) -> bool:
    coeffs = c.coefficients if isinstance(c, Conic) else tuple(c)
    return _quad(coeffs, _int_row(_homog(p))) == 0


def is_coconic(s) -> Optional[Conic]:
    """Some conic through every point, or None when the points are not co-conic."""
    pts = _points(s)
    if not pts:
        raise ValueError("need at least one point")
    basis = nullspace([_int_row(_homog(p)) for p in pts], 6)
    if not basis:
        return None
    return Conic.from_coefficients(basis[0])


def verify_ordinary(s, member_indices: Sequence[int]) -> Optional[Conic]:
    """Independent check: unique fit on the five members and no sixth point on it."""
    pts = _points(s)
    idx = sorted(member_indices)
    if len(set(idx)) != 5:
        return None
    fit = fit_conic(*(pts[i] for i in idx))
    if not fit.unique:
        return None
    chosen = set(idx)
    for j, p in enumerate(pts):
        if j not in chosen and conic_contains(fit.conic, p):
            return None
    return fit.conic


def _collinear_quads(pts, lines) -> list[frozenset[int]]:
    return [frozenset(r.member_indices) for r in lines if r.size >= 4]


def _scan(rows, heavy_lines, irreducible_only, first_indices) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Scan all 5-subsets whose smallest index lies in ``first_indices``."""
    n = len(rows)
    found = []
    for i in first_indices:
        for rest in itertools.combinations(range(i + 1, n), 4):
            sub = (i,) + rest
            if heavy_lines and any(sum(1 for k in sub if k in line) >= 4 for line in heavy_lines):
                continue
            c = _cofactors([rows[k] for k in sub])
            if not any(c):
                continue
            chosen = set(sub)
            if any(_quad(c, rows[j]) == 0 for j in range(n) if j not in chosen):
                continue
            coeffs = primitive_vector(c)
            if irreducible_only and classify_conic(coeffs) is not ConicClass.IRREDUCIBLE:
                continue
            found.append((sub, coeffs))
    return found


def _scan_job(args):
    return _scan(*args)


def enumerate_ordinary_conics(s, *, irreducible_only: bool = False, prune: bool = True,
                              workers: int = 1) -> list[ConicRecord]:
    """All ordinary conics of ``s``, sorted by member indices.

    ``prune`` skips 5-subsets holding four collinear points (their fit can
    never be unique); it never changes the output. With ``workers > 1`` the
    subsets are split by smallest index across processes and merged in order.
    """
    pts = _points(s)
    n = len(pts)
    if n < 5:
        raise ValueError("need at least five points")
    rows = [_int_row(_homog(p)) for p in pts]
    heavy = _collinear_quads(pts, enumerate_lines(pts)) if prune else []
    if workers <= 1:
        found = _scan(rows, heavy, irreducible_only, range(n - 4))
    else:
        chunks = [list(range(k, n - 4, workers)) for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(_scan_job, [(rows, heavy, irreducible_only, ch) for ch in chunks])
            found = [item for part in parts for item in part]
    found.sort()
    if __debug__:
        keys = [c for _, c in found]
        assert len(set(keys)) == len(keys), "two 5-subsets produced the same ordinary conic"
    return [ConicRecord(Conic(c, classify_conic(c)), sub) for sub, c in found]
