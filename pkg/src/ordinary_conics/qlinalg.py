"""Exact rational linear algebra and affine flats.

Everything here works over :class:`fractions.Fraction`. Matrices are plain
sequences of rows; results are tuples so they can be hashed and shared.
Rows are scaled to integers before elimination, which keeps the inner loops
on Python ints (fraction-free Bareiss elimination) and only builds
fractions when a basis has to be reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = Sequence[Sequence]

__all__ = [
    "Rational",
    "Vector",
    "Flat",
    "as_vector",
    "rank",
    "nullspace",
    "primitive_vector",
    "solve",
    "det",
    "flat_span",
    "flat_intersect",
    "flat_contains",
]


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def _integer_row(row: Sequence) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    fr = [Fraction(v) for v in row]
    scale = 1
    for v in fr:
        scale = lcm(scale, v.denominator)
    return [v.numerator * (scale // v.denominator) for v in fr]


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (echelon rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    prev = 1
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m: Matrix) -> int:
    """Exact rank over the rationals."""
    if not m:
        return 0
    ncols = len(m[0])
    _, pivots = _bareiss_echelon([_integer_row(row) for row in m], ncols)
    return len(pivots)


def det(m: Matrix) -> Fraction:
    """Exact determinant of a square matrix."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(v) for v in row] for row in m]
    scale = Fraction(1)
    ints = []
    for row in rows:
        s = 1
        for v in row:
            s = lcm(s, v.denominator)
        scale /= s
        ints.append([(v * s).numerator for v in row])
    # Bareiss leaves det in the last pivot; track row swaps for the sign.
    a = ints
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * p - a[i][k] * a[k][j]) // prev
        prev = p
    return sign * a[n - 1][n - 1] * scale


def _rref(m: Matrix, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    ech, pivots = _bareiss_echelon([_integer_row(row) for row in m], ncols)
    red = [[Fraction(v) for v in row] for row in ech]
    for i in range(len(red) - 1, -1, -1):
        c = pivots[i]
        p = red[i][c]
        red[i] = [v / p for v in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [a - f * b for a, b in zip(red[k], red[i])]
    return red, pivots


def primitive_vector(v: Sequence) -> tuple[int, ...]:
    """Clear denominators, divide by the content, make the first nonzero entry positive."""
    ints = _integer_row(v)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return tuple(x // g for x in ints)


def nullspace(m: Matrix, ncols: Optional[int] = None) -> list[Vector]:
    """Basis of the right nullspace, each vector primitive (gcd 1, leading entry > 0).

    ``ncols`` is only needed when ``m`` has no rows.
    """
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    if not m:
        red, pivots = [], []
    else:
        red, pivots = _rref(m, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[free]
        basis.append(as_vector(primitive_vector(v)))
    return basis


def solve(m: Matrix, rhs: Sequence, ncols: Optional[int] = None) -> Optional[tuple[Vector, list[Vector]]]:
    """Solve ``m x = rhs`` exactly.

    Returns ``(particular, nullspace_basis)`` or ``None`` when inconsistent.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    if not aug:
        return tuple(Fraction(0) for _ in range(ncols)), nullspace([], ncols)
    red, pivots = _rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return tuple(x), nullspace([row[:ncols] for row in red], ncols) if red else nullspace([], ncols)


@dataclass(frozen=True)
class Flat:
    """Affine subspace ``base + span(directions)`` of Q^d.

    The constructor canonicalises: directions are put in reduced row echelon
    form and the base is reduced against them, so two Flat objects compare
    equal exactly when they describe the same affine subspace.
    """

    base: Vector
    directions: tuple[Vector, ...] = ()

    def __post_init__(self):
        base = as_vector(self.base)
        d = len(base)
        if not 1 <= d <= 6:
            raise ValueError(f"ambient dimension {d} outside 1..6")
        dirs = [as_vector(v) for v in self.directions]
        if any(len(v) != d for v in dirs):
            raise ValueError("direction length differs from ambient dimension")
        if dirs:
            red, pivots = _rref(dirs, d)
            if len(pivots) != len(dirs):
                raise ValueError("directions are linearly dependent")
            b = list(base)
            for row, c in zip(red, pivots):
                f = b[c]
                if f:
                    b = [x - f * y for x, y in zip(b, row)]
            base = tuple(b)
            dirs = [tuple(row) for row in red]
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "directions", tuple(dirs))

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    @property
    def dim(self) -> int:
        return len(self.directions)

    def point(self, coords: Sequence) -> Vector:
        """The point with the given affine coordinates in this flat's chart."""
        out = list(self.base)
        for c, v in zip(coords, self.directions):
            c = Fraction(c)
            out = [a + c * b for a, b in zip(out, v)]
        return tuple(out)

    def implicit(self) -> tuple[list[Vector], Vector]:
        """Equations ``A z = b`` cutting out the flat (A has ambient_dim - dim rows)."""
        if self.directions:
            normals = nullspace(self.directions)
        else:
            normals = [tuple(Fraction(int(i == j)) for j in range(self.ambient_dim))
                       for i in range(self.ambient_dim)]
        rhs = tuple(sum((a * b for a, b in zip(n, self.base)), Fraction(0)) for n in normals)
        return normals, rhs


def flat_span(points: Sequence[Sequence]) -> Flat:
    """Affine hull of a nonempty list of points."""
    if not points:
        raise ValueError("flat_span needs at least one point")
    pts = [as_vector(p) for p in points]
    base = pts[0]
    if any(len(p) != len(base) for p in pts):
        raise ValueError("points have different dimensions")
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    diffs = [v for v in diffs if any(v)]
    if not diffs:
        return Flat(base)
    red, _ = _rref(diffs, len(base))
    return Flat(base, tuple(tuple(r) for r in red))


def flat_contains(f: Flat, p: Sequence) -> bool:
    p = as_vector(p)
    if len(p) != f.ambient_dim:
        raise ValueError("dimension mismatch")
    diff = tuple(a - b for a, b in zip(p, f.base))
    if not f.directions:
        return not any(diff)
    # Directions are in RREF, so the residual after reduction decides membership.
    r = list(diff)
    for row in f.directions:
        c = next(i for i, x in enumerate(row) if x)
        k = r[c]
        if k:
            r = [a - k * b for a, b in zip(r, row)]
    return not any(r)


def flat_intersect(a: Flat, b: Flat) -> Optional[Flat]:
    """Intersection of two flats, or ``None`` when they are disjoint."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("dimension mismatch")
    d = a.ambient_dim
    ka, kb = a.dim, b.dim
    if ka + kb == 0:
        return a if a.base == b.base else None
    # base_a + A lam = base_b + B mu
    cols = list(a.directions) + [tuple(-x for x in v) for v in b.directions]
    m = [[cols[j][i] for j in range(ka + kb)] for i in range(d)]
    rhs = [y - x for x, y in zip(a.base, b.base)]
    sol = solve(m, rhs, ka + kb)
    if sol is None:
        return None
    x0, kernel = sol
    base = a.point(x0[:ka])
    dirs = []
    for v in kernel:
        w = [Fraction(0)] * d
        for c, direction in zip(v[:ka], a.directions):
            if c:
                w = [s + c * t for s, t in zip(w, direction)]
        dirs.append(tuple(w))
    dirs = [w for w in dirs if any(w)]
    if dirs:
        red, _ = _rref(dirs, d)
        dirs = [tuple(r) for r in red]
    return Flat(base, tuple(dirs))
