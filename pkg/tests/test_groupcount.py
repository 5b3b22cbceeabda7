from __future__ import annotations

import itertools
from fractions import Fraction as F
from math import comb, gcd

import pytest

from ordinary_conics.errors import PreconditionError
from ordinary_conics.groupcount import (coconic_predicate, count_conic_line, count_cyclic,
                                        cyclic_qualifying_subsets, subset_sum_table)


def test_cyclic_examples():
    assert count_cyclic(5).count == 1
    assert count_cyclic(6).count == 6
    assert count_cyclic(7).count == 15
    with pytest.raises(PreconditionError):
        count_cyclic(4)


def test_cyclic_n7_structure():
    # the subset missing {m1, m2} qualifies iff neither is 0
    missing = [tuple(sorted(set(range(7)) - set(a))) for a in cyclic_qualifying_subsets(7)]
    assert sorted(missing) == sorted(p for p in itertools.combinations(range(1, 7), 2))


def test_conic_line_examples():
    r = count_conic_line(3)
    assert (r.type1, r.type2, r.total) == (0, 3, 3)
    assert r.complete_total == 6
    r = count_conic_line(4)
    assert (r.type1, r.type2, r.total) == (2, 20, 22)
    assert count_conic_line(6).degenerate == 0


def test_predicate_examples():
    assert coconic_predicate([(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1)], 7)
    assert coconic_predicate([(0, 2), (1, 1), (2, 1), (3, 1), (4, 1)], 10)
    assert not coconic_predicate([(1, 6)], 5)
    with pytest.raises(PreconditionError):
        coconic_predicate([(1, 5)], 5)


@pytest.mark.parametrize("n", range(5, 21))
def test_cyclic_dp_matches_exhaustive(n):
    assert count_cyclic(n, "dp").count == count_cyclic(n, "exhaustive").count


@pytest.mark.parametrize("n", range(3, 21))
def test_conic_line_dp_matches_exhaustive(n):
    a, b = count_conic_line(n, "dp"), count_conic_line(n, "exhaustive")
    assert (a.type1, a.type2) == (b.type1, b.type2)


def test_subset_sum_table_small():
    t = subset_sum_table(5, 2)
    for s in range(5):
        assert t[2][s] == sum(1 for a, b in itertools.combinations(range(5), 2) if (a + b) % 5 == s)
    assert sum(t[2]) == comb(5, 2)


@pytest.mark.parametrize("n", [8, 11, 12])
def test_negation_and_unit_symmetry(n):
    fam = set(cyclic_qualifying_subsets(n))
    for u in range(1, n):
        if gcd(u, n) != 1:
            continue
        assert {tuple(sorted((u * x) % n for x in a)) for a in fam} == fam


@pytest.mark.parametrize("n", [5, 6, 7, 10, 16, 32, 64])
def test_quartic_upper_bound(n):
    assert count_cyclic(n).count <= F(n ** 4, 24)


def test_ratio_is_exact():
    r = count_cyclic(7)
    assert r.ratio() == F(15 * 24, 7 ** 4)
    assert count_conic_line(4).ratio() == F(384 * 22, 7 * 8 ** 4)


def test_workers_agree():
    assert count_cyclic(14, "exhaustive", workers=2).count == count_cyclic(14, "exhaustive").count
    a = count_conic_line(9, "exhaustive", workers=2)
    b = count_conic_line(9, "exhaustive")
    assert (a.type1, a.type2) == (b.type1, b.type2)
