"""Static SVG figures of a point set with its ordinary lines and conics."""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

_W = 480
_PAD = 24


def _bbox(points):
    xs = [float(p[0]) for p in points]
    ys = [float(p[1]) for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    m = 0.15 * span
    return x0 - m, y0 - m, span + 2 * m


def _conic_branches(c, x0, y0, span, steps=240):
    """Polylines tracing a0 + a1 x + a2 y + a3 x^2 + a4 xy + a5 y^2 = 0 inside the box."""
    a0, a1, a2, a3, a4, a5 = (float(v) for v in c)
    out = []
    for swap in (False, True):
        # Solve for the second coordinate as a function of the first.
        if swap:
            a1, a2, a3, a5 = a2, a1, a5, a3
        branches = ([], [])
        for k in range(steps + 1):
            u = x0 + span * k / steps if not swap else y0 + span * k / steps
            qa, qb, qc = a5, a4 * u + a2, a0 + a1 * u + a3 * u * u
            roots = []
            if abs(qa) > 1e-14:
                disc = qb * qb - 4 * qa * qc
                if disc >= 0:
                    r = math.sqrt(disc)
                    roots = [(-qb - r) / (2 * qa), (-qb + r) / (2 * qa)]
            elif abs(qb) > 1e-14:
                roots = [-qc / qb, -qc / qb]
            for b, v in zip(branches, roots or [None, None]):
                if v is None:
                    if len(b) > 1:
                        out.append(b[:])
                    b.clear()
                    continue
                b.append((v, u) if swap else (u, v))
        out.extend(b for b in branches if len(b) > 1)
        if swap:
            a1, a2, a3, a5 = a2, a1, a5, a3
    return out


def render_svg(points: Sequence, lines: Sequence = (), conics: Sequence = (), title: str = "") -> str:
    """``lines`` are (A, B, C) triples, ``conics`` coefficient 6-tuples."""
    x0, y0, span = _bbox(points)
    scale = (_W - 2 * _PAD) / span

    def sx(x):
        return _PAD + (x - x0) * scale

    def sy(y):
        return _W - _PAD - (y - y0) * scale

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_W}" '
             f'viewBox="0 0 {_W} {_W}">',
             f'<rect width="{_W}" height="{_W}" fill="white"/>',
             '<clipPath id="box"><rect x="0" y="0" width="{0}" height="{0}"/></clipPath>'.format(_W),
             '<g clip-path="url(#box)">']
    for a, b, c in lines:
        a, b, c = float(a), float(b), float(c)
        if abs(b) > abs(a):
            xa, xb = x0, x0 + span
            ends = [(xa, -(a * xa + c) / b), (xb, -(a * xb + c) / b)]
        else:
            ya, yb = y0, y0 + span
            ends = [(-(b * ya + c) / a, ya), (-(b * yb + c) / a, yb)]
        (p, q), (r, s) = ends
        parts.append(f'<line x1="{sx(p):.2f}" y1="{sy(q):.2f}" x2="{sx(r):.2f}" y2="{sy(s):.2f}" '
                     'stroke="#4a7fb5" stroke-width="1"/>')
    for coeffs in conics:
        for branch in _conic_branches(coeffs, x0, y0, span):
            d = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in branch)
            parts.append(f'<polyline points="{d}" fill="none" stroke="#c0504d" '
                         'stroke-width="1" stroke-opacity="0.6"/>')
    parts.append("</g>")
    for p in points:
        parts.append(f'<circle cx="{sx(float(p[0])):.2f}" cy="{sy(float(p[1])):.2f}" r="3.5" fill="black"/>')
    if title:
        parts.append(f'<text x="{_PAD}" y="16" font-family="sans-serif" font-size="12">{escape(title)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
