from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest

from helpers import collinear_set, near_collinear_set, non_coconic_set, random_set
from ordinary_conics.conics import ConicClass, enumerate_ordinary_conics
from ordinary_conics.errors import CoconicError, PreconditionError
from ordinary_conics.incidence import is_collinear, is_near_collinear, line_through, on_line
from ordinary_conics.qlinalg import flat_contains, flat_intersect, flat_span, rank
from ordinary_conics.veronese import (_project, choose_generic_coflat, find_ordinary_conic,
                                      find_ordinary_conic_traced, hyperproject, on_variety,
                                      triangle_hyperprojection, veronese)

SEVEN = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 3), (3, 1), (5, 2)]
# Parabola points plus two extra points on the chord through (2, 4) and (0, 0):
# no ordinary line of the step-2 projection avoids the side image.
FALLBACK = [(-4, 16), (2, 4), (0, 0), (F(-5, 3), F(34, 3)), (3, 9), (-5, 25), (-2, 12), (5, 25)]


def test_veronese_examples():
    assert veronese((0, 0)) == (0, 0, 0, 0, 0)
    assert veronese((1, 2)) == (1, 2, 1, 2, 4)
    assert veronese((F(1, 2), F(-1, 3))) == (F(1, 2), F(-1, 3), F(1, 4), F(-1, 6), F(1, 9))
    assert on_variety(veronese((F(2, 7), 3)))
    assert not on_variety((1, 1, 1, 1, 2))


def test_oneflat_property():
    rng = random.Random(31)
    pts = random_set(rng, 12)
    for a, b, c in itertools.combinations(pts, 3):
        za, zb, zc = veronese(a), veronese(b), veronese(c)
        diffs = [[x - y for x, y in zip(zb, za)], [x - y for x, y in zip(zc, za)]]
        assert rank(diffs) == 2


@pytest.mark.parametrize("seed", range(20))
def test_twoflat_and_threeflat_properties(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 9)
    for pts in (collinear_set(rng, n), near_collinear_set(rng, n), random_set(rng, n)):
        dim = flat_span([veronese(p) for p in pts]).dim
        assert (dim <= 2) == is_collinear(pts)
        if not is_collinear(pts):
            assert (dim <= 3) == is_near_collinear(pts)


def test_side_image_not_in_triangle_flat():
    p, q, r = (0, 0), (3, 1), (1, 4)
    P = flat_span([veronese(p), veronese(q), veronese(r)])
    for t in (F(-2), F(1, 2), F(5, 3)):
        s = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
        assert not flat_contains(P, veronese(s))


def test_choose_generic_coflat():
    p, q, r = (0, 0), (1, 0), (0, 1)
    P = flat_span([veronese(p), veronese(q), veronese(r)])
    others = [veronese(s) for s in [(1, 1), (2, 3), (3, 1), (5, 2), (-1, 4), (2, -3)]]
    h = choose_generic_coflat(P, others, seed=7)
    assert flat_intersect(P, h.Q) is None
    for x in others:
        span = flat_span([P.base, *(tuple(b + d for b, d in zip(P.base, v)) for v in P.directions), x])
        meet = flat_intersect(span, h.Q)
        assert meet is not None and meet.dim == 0
    assert choose_generic_coflat(P, others, seed=7) == h
    with pytest.raises(PreconditionError):
        choose_generic_coflat(P, [veronese(q)], seed=0)


def test_point_of_q_projects_to_itself():
    P = flat_span([veronese(p) for p in [(0, 0), (1, 0), (0, 1)]])
    h = choose_generic_coflat(P, [veronese((2, 5))], seed=1)
    coords = (F(2, 3), F(-1))
    x = h.Q.point(coords)
    assert hyperproject(h, x) == coords


@pytest.mark.parametrize("seed", range(10))
def test_triangle_collapse_and_injectivity(seed):
    rng = random.Random(seed)
    while True:
        p, q, r = random_set(rng, 3)
        if not is_collinear([p, q, r]):
            break
    others = [s for s in random_set(rng, 8)
              if not any(on_line(line_through(a, b), s) for a, b in ((p, q), (p, r), (q, r)))]
    h = triangle_hyperprojection(p, q, r, others, seed)
    for (a, b), key in (((p, q), "pq"), ((p, r), "pr"), ((q, r), "qr")):
        for t in (F(-1), F(1, 3), F(7, 2)):
            side = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            if side in (p, q, r):
                continue
            assert _project(h.P, h.Q, veronese(side)) == h.alpha_points[key]
    imgs = [hyperproject(h, veronese(s)) for s in others]
    assert len(set(imgs)) == len(imgs)
    assert not set(imgs) & set(h.alpha_points.values())


def test_finder_examples():
    oracle = {r.member_indices: r for r in enumerate_ordinary_conics(SEVEN)}
    rec = find_ordinary_conic(SEVEN)
    assert oracle[rec.member_indices] == rec
    line3 = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 2), (3, 3)]
    rec, trace = find_ordinary_conic_traced(line3)
    assert trace[0]["event"] == "step1"
    assert rec.conic.kind is ConicClass.TWO_LINES and {0, 1, 2} <= set(rec.member_indices)
    assert rec in enumerate_ordinary_conics(line3)
    with pytest.raises(CoconicError):
        find_ordinary_conic([(x, x * x) for x in range(6)])
    assert find_ordinary_conic(SEVEN, seed=3) == find_ordinary_conic(SEVEN, seed=3)


def test_finder_fallback_branch():
    rec, trace = find_ordinary_conic_traced(FALLBACK)
    events = [e["event"] for e in trace]
    assert "step3" in events and events[-1] == "step3_found"
    assert next(e for e in trace if e["event"] == "step2")["triple"] == (5, 0, 1)
    assert next(e for e in trace if e["event"] == "step3")["triangle"] == (2, 3, 4)
    assert rec.member_indices == (0, 2, 3, 4, 5)
    assert rec in enumerate_ordinary_conics(FALLBACK)


@pytest.mark.parametrize("seed", range(15))
def test_finder_in_oracle(seed):
    rng = random.Random(300 + seed)
    pts = non_coconic_set(rng, rng.randint(6, 11), radius=3, denom=1)
    oracle = enumerate_ordinary_conics(pts)
    for s in range(2):
        assert find_ordinary_conic(pts, seed=s) in oracle
