from __future__ import annotations

import itertools
import random
from fractions import Fraction as F
from math import comb

import pytest

from helpers import generic_set, random_affine, random_set
from ordinary_conics.conics import (Conic, ConicClass, classify_conic, conic_contains,
                                    enumerate_ordinary_conics, fit_conic, is_coconic,
                                    verify_ordinary, veronese_row)
from ordinary_conics.qlinalg import nullspace, primitive_vector, rank

CIRCLE5 = [(1, 0), (0, 1), (-1, 0), (0, -1), (F(3, 5), F(4, 5))]


def oracle_ordinary(pts):
    """Plain C(n,5) * n scan using the generic nullspace routine."""
    out = []
    for sub in itertools.combinations(range(len(pts)), 5):
        ker = nullspace([veronese_row(pts[i]) for i in sub], 6)
        if len(ker) != 1:
            continue
        c = ker[0]
        if any(sum(a * b for a, b in zip(c, veronese_row(pts[j]))) == 0
               for j in range(len(pts)) if j not in sub):
            continue
        out.append((sub, primitive_vector(c)))
    return out


def test_fit_examples():
    fit = fit_conic(*CIRCLE5)
    assert fit.unique and fit.conic.coefficients == (1, 0, 0, -1, 0, -1)
    assert fit.conic.kind is ConicClass.IRREDUCIBLE
    pencil = fit_conic((0, 0), (1, 0), (2, 0), (3, 0), (0, 1))
    assert not pencil.unique and pencil.pencil_dimension == 2
    lines = fit_conic((0, 0), (1, 0), (2, 0), (0, 1), (1, 1))
    assert lines.unique and lines.conic.kind is ConicClass.TWO_LINES
    assert lines.conic.coefficients == primitive_vector((0, 0, -1, 0, 0, 1))  # y(y - 1)
    with pytest.raises(ValueError):
        fit_conic((0, 0), (0, 0), (1, 0), (2, 3), (5, 1))


def test_classify_examples():
    assert classify_conic((0, 0, 0, 0, 1, 0)) is ConicClass.TWO_LINES
    assert classify_conic((0, 0, 0, 1, 0, 0)) is ConicClass.DOUBLE_LINE
    assert classify_conic((1, 0, 0, 1, 0, 1)) is ConicClass.POINTLIKE_OR_EMPTY
    assert classify_conic((-1, 0, 0, 1, 0, 1)) is ConicClass.IRREDUCIBLE
    assert classify_conic((0, 0, 0, 1, 0, 1)) is ConicClass.POINTLIKE_OR_EMPTY  # x^2 + y^2 = 0
    assert classify_conic((-1, 0, 0, 1, 0, 0)) is ConicClass.TWO_LINES  # x = 1 or x = -1
    assert classify_conic((1, 0, 0, 1, 0, 0)) is ConicClass.POINTLIKE_OR_EMPTY  # x^2 = -1
    assert classify_conic((0, 0, -1, 1, 0, 0)) is ConicClass.IRREDUCIBLE  # parabola


def test_contains_examples():
    circle = Conic.from_coefficients((1, 0, 0, -1, 0, -1))
    assert conic_contains(circle, (F(3, 5), F(4, 5)))
    assert not conic_contains(circle, (1, 1))
    assert conic_contains((0, 0, -1, 0, 0, 1), (7, 1))
    assert circle((2, 0)) == -3


def test_is_coconic_examples():
    assert is_coconic([(0, 0), (1, 5), (2, 3), (7, 1), (4, 4)]) is not None
    parab = is_coconic([(x, x * x) for x in range(-2, 4)])
    assert parab.coefficients == (0, 0, 1, -1, 0, 0)
    assert is_coconic([(0, 0), (1, 0), (1, 1), (0, 1), (2, 3), (5, 1)]) is None


def test_enumerate_examples():
    assert len(enumerate_ordinary_conics(CIRCLE5)) == 1
    assert enumerate_ordinary_conics([(x, x * x) for x in range(-2, 4)]) == []
    six = [(0, 0), (1, 0), (1, 1), (0, 1), (2, 3), (5, 1)]
    assert len(enumerate_ordinary_conics(six)) == 6


def test_generic_nine_points():
    pts = generic_set(random.Random(9), 9)
    assert len(enumerate_ordinary_conics(pts)) == comb(9, 5) == 126


@pytest.mark.parametrize("seed", range(25))
def test_matches_oracle(seed):
    rng = random.Random(seed)
    pts = random_set(rng, rng.randint(5, 10), radius=2, denom=1)
    got = [(r.member_indices, r.conic.coefficients) for r in enumerate_ordinary_conics(pts)]
    assert got == oracle_ordinary(pts)
    assert got == [(r.member_indices, r.conic.coefficients)
                   for r in enumerate_ordinary_conics(pts, prune=False)]
    for sub, _ in got:
        assert verify_ordinary(pts, sub) is not None


def test_pruned_subsets_have_small_rank():
    rng = random.Random(77)
    for _ in range(20):
        pts = random_set(rng, 9, radius=2, denom=1)
        for sub in itertools.combinations(pts, 5):
            for quad in itertools.combinations(sub, 4):
                if rank([(1, *p) for p in quad]) <= 2:
                    assert rank([veronese_row(p) for p in sub]) <= 4
                    break


def test_irreducible_filter():
    pts = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 3), (3, 2), (5, 7)]
    every = enumerate_ordinary_conics(pts)
    irr = enumerate_ordinary_conics(pts, irreducible_only=True)
    assert irr == [r for r in every if r.conic.irreducible]
    assert len(irr) < len(every)


def test_workers_give_same_output():
    pts = random_set(random.Random(3), 10, radius=2, denom=1)
    assert enumerate_ordinary_conics(pts, workers=2) == enumerate_ordinary_conics(pts)


@pytest.mark.parametrize("seed", range(5))
def test_affine_invariance(seed):
    rng = random.Random(500 + seed)
    pts = random_set(rng, 9, radius=2, denom=1)
    base = len(enumerate_ordinary_conics(pts))
    for _ in range(3):
        f = random_affine(rng)
        assert len(enumerate_ordinary_conics([f(p) for p in pts])) == base
