"""Counting ordinary conics on cubic constructions through index arithmetic in Z_n.

On a cyclic subgroup of order ``n``, a 5-subset ``A`` spans an ordinary
conic exactly when the sixth intersection ``-(sum A)`` is already in ``A``.
The conic-plus-line construction splits into two tuple types by how many
points lie on the line. Exhaustive enumeration is the reference; the
``"dp"`` method counts the same tuples with subset-sum tables in O(n^2).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

from .errors import PreconditionError

EXHAUSTIVE_LIMIT = 20

__all__ = [
    "CyclicCountReport",
    "count_cyclic",
    "count_conic_line",
    "coconic_predicate",
    "cyclic_qualifying_subsets",
    "subset_sum_table",
]


@dataclass(frozen=True)
class CyclicCountReport:
    n: int
    count: int
    type1: Optional[int] = None
    type2: Optional[int] = None
    method: str = "exhaustive"
    degenerate: int = 0

    @property
    def total(self) -> int:
        return self.count

    @property
    def complete_total(self) -> int:
        """``count`` plus the small-order tuples outside both types (conic-line only)."""
        return self.count + self.degenerate

    def ratio(self) -> Fraction:
        """Exact count divided by the leading asymptotic term."""
        if self.type1 is None:
            return Fraction(24 * self.count, self.n ** 4)
        h = 2 * self.n
        return Fraction(384 * self.count, 7 * h ** 4)


def coconic_predicate(weighted_indices: Sequence[tuple[int, int]], n: int) -> bool:
    """Six group elements (with multiplicity) are co-conic iff they sum to 0 mod n."""
    total = 0
    mult = 0
    for idx, m in weighted_indices:
        if m <= 0:
            raise PreconditionError("multiplicities must be positive")
        total += idx * m
        mult += m
    if mult != 6:
        raise PreconditionError(f"total multiplicity is {mult}, expected 6")
    return total % n == 0


def cyclic_qualifying_subsets(n: int) -> Iterator[tuple[int, ...]]:
    """5-subsets A of Z_n with -(sum A) mod n in A."""
    for sub in itertools.combinations(range(n), 5):
        if (-sum(sub)) % n in sub:
            yield sub


def _cyclic_chunk(args) -> int:
    n, firsts = args
    total = 0
    for a in firsts:
        for rest in itertools.combinations(range(a + 1, n), 4):
            s = -(a + sum(rest)) % n
            if s == a or s in rest:
                total += 1
    return total


def _run_chunks(fn, n, workers) -> int:
    firsts = list(range(n))
    if workers <= 1:
        return fn((n, firsts))
    chunks = [(n, firsts[k::workers]) for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(fn, chunks))


def subset_sum_table(n: int, k: int, elements: Optional[Iterable[int]] = None) -> list[list[int]]:
    """``table[j][s]`` = number of j-subsets (j <= k) of ``elements`` with sum = s mod n."""
    elements = range(n) if elements is None else list(elements)
    table = [[0] * n for _ in range(k + 1)]
    table[0][0] = 1
    for e in elements:
        for j in range(k, 0, -1):
            prev, cur = table[j - 1], table[j]
            for s in range(n):
                if prev[s]:
                    cur[(s + e) % n] += prev[s]
    return table


def _avoiding(table: list[list[int]], n: int, k: int, a: int) -> list[int]:
    """k-subsets of Z_n \\ {a} by sum, from the unrestricted table."""
    g = [[1 if s == 0 else 0 for s in range(n)]]
    for j in range(1, k + 1):
        g.append([table[j][s] - g[j - 1][(s - a) % n] for s in range(n)])
    return g[k]


def count_cyclic(n: int, method: str = "auto", workers: int = 1) -> CyclicCountReport:
    if n < 5:
        raise PreconditionError("count_cyclic needs n >= 5")
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "dp"
    if method == "exhaustive":
        return CyclicCountReport(n, _run_chunks(_cyclic_chunk, n, workers), method=method)
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    # A qualifies via its unique element a with 2a + sum(A \ {a}) = 0.
    table = subset_sum_table(n, 4)
    total = sum(_avoiding(table, n, 4, a)[(-2 * a) % n] for a in range(n))
    return CyclicCountReport(n, total, method=method)


def _conic_line_chunk(args) -> tuple[int, int]:
    n, firsts = args
    quads = list(itertools.combinations(range(n), 4))
    t1 = 0
    for a in firsts:
        t1 += sum(1 for q in quads if (2 * a + sum(q)) % n == 0)
    t2 = 0
    for a1 in firsts:
        for a2 in range(a1 + 1, n):
            for r in range(n):
                for s, t in itertools.combinations(range(n), 2):
                    if s != r and t != r and (a1 + a2 + 2 * r + s + t) % n == 0:
                        t2 += 1
    return t1, t2


def count_conic_line(n: int, method: str = "auto", workers: int = 1) -> CyclicCountReport:
    """Type 1: one line point a doubled plus four conic points.
    Type 2: two line points plus a doubled conic point r and two more conic points.
    """
    if n < 3:
        raise PreconditionError("count_conic_line needs n >= 3")
    if method == "auto":
        method = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "dp"
    if method == "exhaustive":
        firsts = list(range(n))
        if workers <= 1:
            t1, t2 = _conic_line_chunk((n, firsts))
        else:
            chunks = [(n, firsts[k::workers]) for k in range(workers)]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(_conic_line_chunk, chunks))
            t1, t2 = sum(p[0] for p in parts), sum(p[1] for p in parts)
        return CyclicCountReport(n, t1 + t2, t1, t2, method, _conic_line_degenerate(n))
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    table = subset_sum_table(n, 4)
    t1 = sum(table[4][(-2 * a) % n] for a in range(n))
    pairs = table[2]
    t2 = 0
    for r in range(n):
        st = _avoiding(table, n, 2, r)
        for s in range(n):
            if st[s]:
                t2 += st[s] * pairs[(-2 * r - s) % n]
    return CyclicCountReport(n, t1 + t2, t1, t2, method, _conic_line_degenerate(n))


def _conic_line_degenerate(n: int) -> int:
    """Ordinary conics of the conic-line set that neither tuple type covers.

    n = 3: the line itself holds exactly three points, so the line together
    with any chord of two conic points is ordinary (C(3, 2) of them).
    n = 5: the conic itself holds exactly five points.
    """
    if n == 3:
        return comb(3, 2)
    if n == 5:
        return 1
    return 0
