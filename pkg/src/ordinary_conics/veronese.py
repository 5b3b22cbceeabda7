"""Veronese embedding, hyperprojection, and the constructive ordinary-conic finder.

The finder works in R^5: three planar points ``p, q, r`` span a 2-flat
``P`` of Veronese images, a complementary 2-flat ``Q`` is chosen at random
and verified exactly, and every other image ``V(s)`` is sent to the single
point of ``span(P, V(s))`` on ``Q``. Collinearity in ``Q`` then matches
co-conicity with ``p, q, r`` in the plane, so an ordinary line of the
projected set yields an ordinary conic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .conics import ConicRecord, conic_contains, is_coconic, verify_ordinary
from .errors import CoconicError, InternalInvariantError, PreconditionError, RetryExhaustedError
from .incidence import (_points, as_point, double_ordinary_triple, enumerate_lines,
                        line_through, on_line, ordinary_lines)
from .qlinalg import Flat, as_vector, flat_contains, flat_intersect, flat_span, solve

Point5 = tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

COFLAT_RETRY_BUDGET = 64

__all__ = [
    "Point5",
    "Hyperprojection",
    "veronese",
    "on_variety",
    "choose_generic_coflat",
    "hyperproject",
    "triangle_hyperprojection",
    "find_ordinary_conic",
    "find_ordinary_conic_traced",
]


def veronese(p) -> Point5:
    x, y = as_point(p)
    return (x, y, x * x, x * y, y * y)


def on_variety(z: Sequence) -> bool:
    z1, z2, z3, z4, z5 = as_vector(z)
    return z3 == z1 * z1 and z4 == z1 * z2 and z5 == z2 * z2


@dataclass(frozen=True)
class Hyperprojection:
    P: Flat
    Q: Flat
    alpha_points: dict = field(default_factory=dict)


def _project(P: Flat, Q: Flat, x: Sequence) -> Optional[tuple[Fraction, Fraction]]:
    """Q-chart coordinates of span(P, x) meet Q, or None when not a single point."""
    x = as_vector(x)
    # b_P + l1 e1 + l2 e2 + l3 (x - b_P) = b_Q + m1 f1 + m2 f2
    cols = list(P.directions) + [tuple(a - b for a, b in zip(x, P.base))]
    cols += [tuple(-v for v in f) for f in Q.directions]
    m = [[c[i] for c in cols] for i in range(5)]
    rhs = [b - a for a, b in zip(P.base, Q.base)]
    sol = solve(m, rhs, 5)
    if sol is None or sol[1]:
        return None
    x0 = sol[0]
    return (x0[3], x0[4])


def _random_coflat(rng: random.Random, radius: int = 6) -> Flat:
    while True:
        base = [rng.randint(-radius, radius) for _ in range(5)]
        dirs = [[rng.randint(-radius, radius) for _ in range(5)] for _ in range(2)]
        try:
            return Flat(base, dirs)
        except ValueError:
            continue


def choose_generic_coflat(P: Flat, images: Sequence[Sequence], seed: int = 0,
                          budget: int = COFLAT_RETRY_BUDGET) -> Hyperprojection:
    """A 2-flat Q disjoint from P on which every image projects to a single point.

    Candidates are drawn deterministically from ``seed``; each is verified
    exactly and rejected candidates are replaced, up to ``budget`` attempts.
    """
    if P.ambient_dim != 5 or P.dim != 2:
        raise PreconditionError("P must be a 2-flat in R^5")
    imgs = [as_vector(x) for x in images]
    for x in imgs:
        if flat_contains(P, x):
            raise PreconditionError(f"image point {x} lies in P")
    witness = None
    for nonce in range(budget):
        rng = random.Random(f"coflat:{seed}:{nonce}")
        Q = _random_coflat(rng)
        if flat_intersect(P, Q) is not None:
            witness = ("P meets Q", Q)
            continue
        bad = next((x for x in imgs if _project(P, Q, x) is None), None)
        if bad is not None:
            witness = ("span(P, x) does not meet Q in one point", Q, bad)
            continue
        return Hyperprojection(P, Q)
    raise RetryExhaustedError(f"no generic coflat after {budget} attempts", witness)


def hyperproject(h: Hyperprojection, x: Sequence) -> tuple[Fraction, Fraction]:
    if flat_contains(h.P, x):
        raise PreconditionError("cannot project a point of P")
    img = _project(h.P, h.Q, x)
    if img is None:
        raise InternalInvariantError(f"span(P, {tuple(x)}) does not meet Q in a single point")
    return img


def triangle_hyperprojection(p, q, r, others: Sequence, seed: int = 0) -> Hyperprojection:
    """Hyperprojection from span(V(p), V(q), V(r)), with the side images recorded.

    ``alpha_points`` maps ``"pq"``, ``"pr"``, ``"qr"`` to the common image of
    each extended side, computed from an auxiliary point on that side.
    """
    p, q, r = as_point(p), as_point(q), as_point(r)
    if on_line(line_through(p, q), r):
        raise PreconditionError("p, q, r are collinear")
    side_pts = {
        "pq": (2 * p[0] - q[0], 2 * p[1] - q[1]),
        "pr": (2 * p[0] - r[0], 2 * p[1] - r[1]),
        "qr": (2 * q[0] - r[0], 2 * q[1] - r[1]),
    }
    P = flat_span([veronese(p), veronese(q), veronese(r)])
    imgs = [veronese(s) for s in others] + [veronese(s) for s in side_pts.values()]
    h = choose_generic_coflat(P, imgs, seed)
    alphas = {k: _project(P, h.Q, veronese(s)) for k, s in side_pts.items()}
    return Hyperprojection(P, h.Q, alphas)


def _conic_for(pts, indices, trace) -> ConicRecord:
    idx = tuple(sorted(indices))
    conic = verify_ordinary(pts, idx)
    if conic is None:
        raise InternalInvariantError(f"candidate {idx} failed ordinary-conic verification", trace)
    return ConicRecord(conic, idx)


def _project_search(pts, triple, seed, trace, avoid_side: bool):
    """Project S minus the triple and return (candidate 5-tuples, image data)."""
    ip, iq, ir = triple
    rest = [i for i in range(len(pts)) if i not in triple]
    h = triangle_hyperprojection(pts[ip], pts[iq], pts[ir], [pts[i] for i in rest], seed)
    fibres: dict[tuple, list[int]] = {}
    for i in rest:
        fibres.setdefault(hyperproject(h, veronese(pts[i])), []).append(i)
    images = sorted(fibres)
    alpha = h.alpha_points["qr"]
    alpha_in_b = alpha in fibres
    trace.append({"event": "projected", "triple": triple, "images": len(images),
                  "alpha_has_preimages": len(fibres.get(alpha, []))})
    if len(images) < 3 or len(enumerate_lines(images)) == 1:
        raise InternalInvariantError("projected set is collinear; input must be co-conic", trace)
    avoid = [alpha] if (avoid_side and alpha_in_b) else []
    candidates = []
    for rec in ordinary_lines(images, avoid):
        a, b = (fibres[images[k]] for k in rec.member_indices)
        if len(a) != 1 or len(b) != 1:
            raise InternalInvariantError("non-injective image off the triangle side", trace)
        candidates.append(tuple(sorted((ip, iq, ir, a[0], b[0]))))
    return sorted(candidates), alpha_in_b, fibres, alpha


def find_ordinary_conic_traced(s, seed: int = 0) -> tuple[ConicRecord, list[dict]]:
    """Constructive ordinary conic for a non-co-conic set, with the branch trace."""
    pts = _points(s)
    n = len(pts)
    if n < 6:
        raise PreconditionError("need at least six points")
    if is_coconic(pts) is not None:
        raise CoconicError("point set is contained in a conic")
    trace: list[dict] = []
    lines = enumerate_lines(pts)

    three = [r for r in lines if r.size == 3]
    if three:
        ell = three[0]
        off = [i for i in range(n) if i not in ell.member_indices]
        sub = [pts[i] for i in off]
        ords = ordinary_lines(sub)
        if not ords:
            raise InternalInvariantError("points off a 3-point line are collinear", trace)
        pairs = sorted(tuple(off[k] for k in rec.member_indices) for rec in ords)
        trace.append({"event": "step1", "line": ell.member_indices, "ordinary_line": pairs[0]})
        return _conic_for(pts, ell.member_indices + pairs[0], trace), trace

    ip, iq, ir, _, _ = double_ordinary_triple(pts)
    trace.append({"event": "step2", "triple": (ip, iq, ir)})
    cands, alpha_in_b, _, _ = _project_search(pts, (ip, iq, ir), seed, trace, avoid_side=True)
    if cands:
        trace.append({"event": "step2_found", "members": cands[0]})
        return _conic_for(pts, cands[0], trace), trace
    if not alpha_in_b:
        raise InternalInvariantError("no ordinary line in an injective projection", trace)

    # No ordinary line avoids alpha: S lies on C union line(qr); use an ordinary triangle u, v, w.
    qr = line_through(pts[iq], pts[ir])
    off_side = [i for i in range(n) if not on_line(qr, pts[i])]
    conic = is_coconic([pts[iq], pts[ir]] + [pts[i] for i in off_side])
    if conic is None:
        raise InternalInvariantError("points off line qr are not co-conic with q, r", trace)
    u = next((i for i in range(n) if on_line(qr, pts[i]) and not conic_contains(conic, pts[i])), None)
    if u is None or len(off_side) < 2:
        raise InternalInvariantError("fallback triangle does not exist", trace)
    v, w = off_side[0], off_side[1]
    tri = tuple(sorted((u, v, w)))
    trace.append({"event": "step3", "triangle": tri, "conic": conic.coefficients})
    cands, _, _, _ = _project_search(pts, tri, seed, trace, avoid_side=False)
    if not cands:
        raise InternalInvariantError("no ordinary line for the ordinary-triangle projection", trace)
    trace.append({"event": "step3_found", "members": cands[0]})
    return _conic_for(pts, cands[0], trace), trace


def find_ordinary_conic(s, seed: int = 0) -> ConicRecord:
    return find_ordinary_conic_traced(s, seed)[0]
