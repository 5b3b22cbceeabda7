"""Point configurations built from cubic group laws, plus the line-plus-k family.

Curve constructions have irrational coordinates, so they are produced in
``mpmath`` at a per-call precision (a private ``MPContext``; the global
``mpmath.mp`` is never touched) and must be compared with the residual
thresholds of an :class:`EpsilonPolicy`. Each generator builds projective
points first and then moves them into the affine plane with a rational
projective chart, since every group identity here sits at infinity.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mpmath.ctx_mp import MPContext

from .conics import is_coconic
from .errors import PrecisionError, PreconditionError, RetryExhaustedError
from .incidence import PointSet, is_collinear
from .qlinalg import det

CHART_RETRY_BUDGET = 64

__all__ = [
    "EpsilonPolicy",
    "FloatPoint2",
    "CyclicConstruction",
    "FloatConicRecord",
    "make_context",
    "apply_chart",
    "gen_acnodal_subgroup",
    "gen_elliptic_subgroup",
    "gen_conic_line",
    "gen_line_plus",
    "acnodal_point",
    "acnodal_affine",
    "collinearity_residual",
    "enumerate_ordinary_conics_float",
]


@dataclass(frozen=True)
class EpsilonPolicy:
    """Relative residual threshold used by every float-mode predicate."""

    residual_tolerance: float = 1e-12
    precision_bits: int = 128
    separation_floor: float = 1e-9

    def __post_init__(self):
        if not self.residual_tolerance > 0:
            raise ValueError("residual_tolerance must be positive")
        if self.precision_bits < 53:
            raise ValueError("precision_bits below double precision")


@dataclass(frozen=True)
class FloatPoint2:
    x: object
    y: object
    precision_bits: int = 128

    def __iter__(self):
        return iter((self.x, self.y))


@dataclass
class CyclicConstruction:
    kind: str
    n: int
    points: list[FloatPoint2]
    indices: list[tuple[str, int]]
    chart: tuple[tuple[Fraction, ...], ...]
    precision_bits: int = 128
    projective: list = field(default_factory=list, repr=False)
    below_enumeration_interest: bool = False

    def metadata(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "indices": [[c, i] for c, i in self.indices],
            "chart": [[str(v) for v in row] for row in self.chart],
            "precision_bits": self.precision_bits,
        }


def make_context(precision_bits: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = precision_bits
    return ctx


def _norm(ctx, v):
    return ctx.sqrt(ctx.fsum(t * t for t in v))


def _is_exact(p) -> bool:
    return all(isinstance(t, (int, Fraction)) for t in p)


def apply_chart(projective_points: Sequence[Sequence], seed: int = 0, *,
                ctx: Optional[MPContext] = None, margin: float = 0.05,
                budget: int = CHART_RETRY_BUDGET):
    """Map projective points into the affine plane with an invertible rational matrix.

    The identity is tried first; later candidates are small random integer
    matrices drawn from ``seed``. For float input a candidate must keep the
    third coordinate of every point above ``margin`` relative to the row and
    point norms, and keep images apart. Returns ``(affine_points, chart)``.
    """
    pts = [tuple(p) for p in projective_points]
    exact = all(_is_exact(p) for p in pts)
    if not exact and ctx is None:
        ctx = make_context(128)
    candidates = itertools.chain(
        [((1, 0, 0), (0, 1, 0), (0, 0, 1))],
        (_random_matrix(random.Random(f"chart:{seed}:{nonce}")) for nonce in range(budget - 1)),
    )
    witness = None
    for m in candidates:
        if det(m) == 0:
            witness = ("singular", m)
            continue
        chart = tuple(tuple(Fraction(v) for v in row) for row in m)
        images = _chart_images(chart, pts, exact, ctx, margin)
        if images is None:
            witness = ("point sent to infinity", m)
            continue
        if not _separated(images, exact, ctx):
            witness = ("images not separated", m)
            continue
        return images, chart
    raise RetryExhaustedError(f"no valid chart after {budget} attempts", witness)


def _random_matrix(rng: random.Random):
    return tuple(tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(3))


def _chart_images(chart, pts, exact, ctx, margin):
    out = []
    if exact:
        for p in pts:
            x, y, w = (sum(Fraction(a) * Fraction(b) for a, b in zip(row, p)) for row in chart)
            if w == 0:
                return None
            out.append((x / w, y / w))
        return out
    rows = [[ctx.mpf(v.numerator) / v.denominator for v in row] for row in chart]
    row3 = _norm(ctx, rows[2])
    for p in pts:
        p = [ctx.mpf(t) for t in p]
        x, y, w = (ctx.fsum(a * b for a, b in zip(row, p)) for row in rows)
        if abs(w) < margin * row3 * _norm(ctx, p):
            return None
        out.append((x / w, y / w))
    return out


def _separated(images, exact, ctx, floor=1e-9) -> bool:
    if exact:
        return len(set(images)) == len(images)
    scale = max(max(abs(x), abs(y)) for x, y in images) + 1
    for a, b in itertools.combinations(images, 2):
        if max(abs(a[0] - b[0]), abs(a[1] - b[1])) < floor * scale:
            return False
    return True


def collinearity_residual(ctx, a, b, c) -> object:
    """|det| of three homogeneous points, each scaled to unit length."""
    rows = []
    for p in (a, b, c):
        v = [ctx.mpf(t) for t in p]
        if len(v) == 2:
            v.append(ctx.mpf(1))
        nv = _norm(ctx, v)
        rows.append([t / nv for t in v])
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = rows
    return abs(a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0))


def _finish(kind, n, proj, indices, chart_seed, ctx, bits, policy, check_triples):
    images, chart = apply_chart(proj, chart_seed, ctx=ctx)
    tol = policy.residual_tolerance
    # Index law on (a sample of) triples, checked after charting.
    for i, j, k, expected in check_triples:
        res = collinearity_residual(ctx, images[i], images[j], images[k])
        if (res < tol) != expected:
            raise PrecisionError(
                f"{kind} n={n}: triple {(i, j, k)} residual {ctx.nstr(res, 5)} contradicts the "
                f"index law; increase precision_bits")
    pts = [FloatPoint2(x, y, bits) for x, y in images]
    return CyclicConstruction(kind, n, pts, indices, chart, bits, proj)


def _triples_for_cubic(n, limit=400):
    out = []
    for t in itertools.combinations(range(n), 3):
        out.append((*t, sum(t) % n == 0))
    if len(out) > limit:
        out = random.Random(n).sample(out, limit)
    return out


def acnodal_point(ctx, theta):
    """Projective point of y^2 = x^3 - x^2 with angle parameter theta (period pi)."""
    s = ctx.sin(theta)
    return (s, ctx.cos(theta), s ** 3)


def acnodal_affine(t) -> tuple[Fraction, Fraction]:
    """Exact affine point (t^2 + 1, t (t^2 + 1)) of y^2 = x^3 - x^2 for rational t."""
    t = Fraction(t)
    x = t * t + 1
    return (x, t * x)


def gen_acnodal_subgroup(n: int, chart_seed: int = 0, precision_bits: int = 128,
                         policy: Optional[EpsilonPolicy] = None) -> CyclicConstruction:
    """Cyclic subgroup of order n on the acnodal cubic y^2 = x^3 - x^2.

    Index k sits at angle k*pi/n; on the affine part t = cot(angle) gives
    (t^2 + 1, t (t^2 + 1)). Index 0 is the flex at infinity.
    """
    if n < 3:
        raise PreconditionError("acnodal construction needs n >= 3")
    policy = policy or EpsilonPolicy(precision_bits=precision_bits)
    ctx = make_context(precision_bits)
    proj = [acnodal_point(ctx, k * ctx.pi / n) for k in range(n)]
    for X, Y, Z in proj:
        terms = [Y * Y * Z, X ** 3, X * X * Z]
        scale = max(abs(t) for t in terms) + ctx.mpf(1) / 2 ** 10
        if abs(terms[0] - terms[1] + terms[2]) > policy.residual_tolerance * scale:
            raise PrecisionError("acnodal point off the curve; increase precision_bits")
    indices = [("cubic", k) for k in range(n)]
    c = _finish("acnodal", n, proj, indices, chart_seed, ctx, precision_bits, policy,
                _triples_for_cubic(n))
    c.below_enumeration_interest = n < 5
    return c


def _elliptic_roots(ctx, a, b):
    roots = ctx.polyroots([1, 0, a, b], extraprec=2 * ctx.prec)
    real = [r for r in roots if abs(ctx.im(r)) < ctx.mpf(2) ** (-ctx.prec // 2)]
    e1 = ctx.re(real[0])
    others = [r for r in roots if r is not real[0]]
    return e1, others[0], others[1]


def elliptic_period(ctx, a, b):
    e1, e2, e3 = _elliptic_roots(ctx, a, b)
    return 4 * ctx.re(ctx.elliprf(0, e1 - e2, e1 - e3)), (e1, e2, e3)


def _elliptic_point(ctx, a, b, u, omega, roots):
    """Affine point with elliptic parameter u in (0, omega), measured as the integral of dx/y from x to infinity."""
    e1, e2, e3 = roots
    flip = u > omega / 2
    if flip:
        u = omega - u

    def param(x):
        return 2 * ctx.re(ctx.elliprf(x - e1, x - e2, x - e3))

    if abs(u - omega / 2) < ctx.mpf(2) ** (-ctx.prec + 8):
        x = e1
    else:
        lo, hi = e1, e1 + 1
        while param(hi) > u:
            hi = e1 + 2 * (hi - e1)
        for _ in range(60):
            mid = (lo + hi) / 2
            if param(mid) > u:
                lo = mid
            else:
                hi = mid
        x = (lo + hi) / 2
        for _ in range(12):
            y = ctx.sqrt(x ** 3 + a * x + b)
            step = (param(x) - u) * y  # d param / dx = -1 / y
            x = x + step
            if abs(step) < abs(x) * ctx.mpf(2) ** (-ctx.prec + 4):
                break
    y = ctx.sqrt(max(x ** 3 + a * x + b, ctx.mpf(0)))
    return (x, -y if flip else y)


def gen_elliptic_subgroup(n: int, a, b, precision_bits: int = 128, chart_seed: int = 0,
                          policy: Optional[EpsilonPolicy] = None) -> CyclicConstruction:
    """Order-n subgroup of the real points of y^2 = x^3 + a x + b (one real component).

    ``n = 2`` is served as the 2-torsion {O, (e1, 0)}.
    """
    a, b = Fraction(a), Fraction(b)
    if 4 * a ** 3 + 27 * b ** 2 <= 0:
        raise PreconditionError("need 4a^3 + 27b^2 > 0 (a single real component)")
    if n < 2:
        raise PreconditionError("n must be at least 2")
    policy = policy or EpsilonPolicy(precision_bits=precision_bits)
    ctx = make_context(precision_bits)
    A = ctx.mpf(a.numerator) / a.denominator
    B = ctx.mpf(b.numerator) / b.denominator
    omega, roots = elliptic_period(ctx, A, B)
    proj = [(ctx.mpf(0), ctx.mpf(1), ctx.mpf(0))]
    for k in range(1, n):
        x, y = _elliptic_point(ctx, A, B, k * omega / n, omega, roots)
        scale = abs(x) ** 3 + abs(A * x) + abs(B) + y * y + 1
        if abs(y * y - (x ** 3 + A * x + B)) > policy.residual_tolerance * scale:
            raise PrecisionError("elliptic point off the curve; increase precision_bits")
        proj.append((x, y, ctx.mpf(1)))
    indices = [("cubic", k) for k in range(n)]
    c = _finish("elliptic", n, proj, indices, chart_seed, ctx, precision_bits, policy,
                _triples_for_cubic(n) if n >= 3 else [])
    c.below_enumeration_interest = n < 5
    return c


def gen_conic_line(n: int, chart_seed: int = 0, precision_bits: int = 128,
                   policy: Optional[EpsilonPolicy] = None) -> CyclicConstruction:
    """Unit circle points at 2*pi*k/n and line-at-infinity directions pi/2 - pi*k/n.

    Two circle points u1, u2 and a line point v are collinear iff
    u1 + u2 + v = 0 mod 1 (parameters k/n).
    """
    if n < 3:
        raise PreconditionError("conic-line construction needs n >= 3")
    policy = policy or EpsilonPolicy(precision_bits=precision_bits)
    ctx = make_context(precision_bits)
    proj, indices = [], []
    for k in range(n):
        t = 2 * ctx.pi * k / n
        proj.append((ctx.cos(t), ctx.sin(t), ctx.mpf(1)))
        indices.append(("conic", k))
    for k in range(n):
        phi = ctx.pi / 2 - ctx.pi * k / n
        proj.append((ctx.cos(phi), ctx.sin(phi), ctx.mpf(0)))
        indices.append(("line", k))
    checks = []
    for i, j, k in itertools.combinations(range(2 * n), 3):
        kinds = [indices[t][0] for t in (i, j, k)]
        if kinds.count("line") == 1:
            expected = sum(indices[t][1] for t in (i, j, k)) % n == 0
        else:
            expected = kinds.count("line") == 3
        checks.append((i, j, k, expected))
    if len(checks) > 400:
        checks = random.Random(n).sample(checks, 400)
    return _finish("conic_line", n, proj, indices, chart_seed, ctx, precision_bits, policy, checks)


def gen_line_plus(total: int, k: int, seed: int = 0, max_tries: int = 1000) -> PointSet:
    """``total - k`` points on y = 0 and ``k`` random rational points off it.

    Samples where three off-line points are collinear, or where six points
    with at least three off the line are co-conic, are redrawn.
    """
    if not 0 < k < total - 2:
        raise PreconditionError("need 0 < k < total - 2")
    m = total - k
    rng = random.Random(f"line_plus:{seed}")
    for _ in range(max_tries):
        xs = rng.sample(range(-3 * total, 3 * total + 1), m)
        on = [(Fraction(x), Fraction(0)) for x in sorted(xs)]
        off = set()
        while len(off) < k:
            y = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
            off.add((Fraction(rng.randint(-9, 9), rng.randint(1, 4)), y))
        off = sorted(off)
        if _line_plus_degenerate(on, off):
            continue
        labels = tuple(["line"] * m + ["off"] * k)
        return PointSet(tuple(on + off), labels)
    raise RetryExhaustedError("could not draw a non-degenerate line-plus set")


def _line_plus_degenerate(on, off) -> bool:
    if any(is_collinear(t) for t in itertools.combinations(off, 3)):
        return True
    # Six points with >= 3 on the axis force the axis into the conic, so with
    # no collinear off-line triple only j >= 4 off-line points can be co-conic.
    for j in range(4, min(len(off), 6) + 1):
        for o in itertools.combinations(off, j):
            for a in itertools.combinations(on, 6 - j):
                if is_coconic(list(o) + list(a)) is not None:
                    return True
    return False


@dataclass(frozen=True)
class FloatConicRecord:
    member_indices: tuple[int, ...]
    coefficients: tuple
    rank_margin: object
    min_exterior_residual: object


def _unit_row(ctx, p):
    x, y = p
    r = [ctx.mpf(1), x, y, x * x, x * y, y * y]
    nr = _norm(ctx, r)
    return [t / nr for t in r]


def enumerate_ordinary_conics_float(points, policy: Optional[EpsilonPolicy] = None):
    """Ordinary conics of a float point set under ``policy``'s residual thresholds.

    A 5-subset has a unique conic when its smallest-to-largest singular value
    ratio exceeds the tolerance; a further point is on that conic when the
    normalised residual is at most the tolerance. Returns the records and a
    diagnostics dict with the extreme accepted and rejected margins.
    """
    policy = policy or EpsilonPolicy()
    ctx = make_context(policy.precision_bits)
    tol = policy.residual_tolerance
    pts = [tuple(ctx.mpf(v) for v in p) for p in points]
    n = len(pts)
    if n < 5:
        raise PreconditionError("need at least five points")
    rows = [_unit_row(ctx, p) for p in pts]
    diag = {"min_rank_margin": None, "max_rank_deficient": None,
            "max_on_residual": None, "min_off_residual": None}

    def upd(key, v, pick):
        cur = diag[key]
        diag[key] = v if cur is None else pick(cur, v)

    out = []
    for sub in itertools.combinations(range(n), 5):
        a = ctx.matrix([rows[k] for k in sub])
        _, s, v = ctx.svd_r(a, full_matrices=True)
        margin = s[4] / s[0]
        if margin <= tol:
            upd("max_rank_deficient", margin, max)
            continue
        upd("min_rank_margin", margin, min)
        c = [v[5, j] for j in range(6)]
        extra = False
        min_res = None
        for j in range(n):
            if j in sub:
                continue
            res = abs(ctx.fsum(x * y for x, y in zip(c, rows[j])))
            if res <= tol:
                upd("max_on_residual", res, max)
                extra = True
            else:
                upd("min_off_residual", res, min)
                min_res = res if min_res is None else min(min_res, res)
        if not extra:
            out.append(FloatConicRecord(sub, tuple(c), margin, min_res))
    return out, diag
