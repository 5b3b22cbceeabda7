"""Deterministic random point sets shared by the test modules."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

from ordinary_conics import is_coconic, is_collinear


def rand_rational(rng: random.Random, radius: int = 6, denom: int = 3) -> F:
    return F(rng.randint(-radius * denom, radius * denom), rng.randint(1, denom))


def random_set(rng: random.Random, n: int, radius: int = 4, denom: int = 2) -> list[tuple[F, F]]:
    """n distinct points on a small rational grid (so collinearities are common)."""
    pts: set = set()
    while len(pts) < n:
        pts.add((rand_rational(rng, radius, denom), rand_rational(rng, radius, denom)))
    out = sorted(pts)
    rng.shuffle(out)
    return out


def collinear_set(rng: random.Random, n: int) -> list[tuple[F, F]]:
    base = (rand_rational(rng), rand_rational(rng))
    while True:
        d = (rand_rational(rng), rand_rational(rng))
        if d != (0, 0):
            break
    ts = rng.sample(range(-20, 21), n)
    return [(base[0] + t * d[0], base[1] + t * d[1]) for t in ts]


def near_collinear_set(rng: random.Random, n: int) -> list[tuple[F, F]]:
    pts = collinear_set(rng, n - 1)
    while True:
        extra = (rand_rational(rng), rand_rational(rng))
        if not is_collinear(pts[:2] + [extra]):
            return pts + [extra]


def generic_set(rng: random.Random, n: int, radius: int = 30) -> list[tuple[F, F]]:
    """No three collinear and no six co-conic, checked exactly."""
    while True:
        pts = random_set(rng, n, radius, 1)
        if any(is_collinear(t) for t in itertools.combinations(pts, 3)):
            continue
        if any(is_coconic(s) is not None for s in itertools.combinations(pts, 6)):
            continue
        return pts


def non_coconic_set(rng: random.Random, n: int, **kw) -> list[tuple[F, F]]:
    while True:
        pts = random_set(rng, n, **kw)
        if is_coconic(pts) is None:
            return pts


def random_affine(rng: random.Random):
    while True:
        a, b, c, d = (rand_rational(rng, 3, 2) for _ in range(4))
        if a * d - b * c != 0:
            break
    e, f = rand_rational(rng), rand_rational(rng)
    return lambda p: (a * p[0] + b * p[1] + e, c * p[0] + d * p[1] + f)


ACCEPTANCE_LINES: list[str] = []


def report(number: int, ok: bool, detail: str) -> str:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line
