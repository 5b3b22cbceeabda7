"""
Finding one ordinary conic through the Veronese lift
====================================================

Instead of scanning all 5-subsets, lift to R^5, project from the plane
spanned by three lifted points, and read an ordinary conic off an ordinary
line of the projected set. The trace records which branch produced it.
"""

from fractions import Fraction as F

from ordinary_conics import enumerate_ordinary_conics, find_ordinary_conic_traced

cases = {
    # has a 3-point line: the line plus an ordinary line of the rest
    "three on a line": [(0, 0), (1, 0), (2, 0), (0, 1), (1, 2), (3, 3)],
    # no 3-point line: project from a triangle p, q, r
    "generic seven": [(0, 0), (3, 1), (1, 4), (5, 3), (2, 7), (7, 2), (6, 6)],
    # six points on y = x^2 plus two more on one chord: the side image blocks
    # every ordinary line and the fallback triangle is used
    "parabola plus chord": [(-4, 16), (2, 4), (0, 0), (F(-5, 3), F(34, 3)), (3, 9), (-5, 25),
                            (-2, 12), (5, 25)],
}

for name, pts in cases.items():
    rec, trace = find_ordinary_conic_traced(pts, seed=0)
    oracle = enumerate_ordinary_conics(pts)
    print(f"{name}: members {rec.member_indices}, {rec.conic.kind.value}")
    print("   branch:", " -> ".join(e["event"] for e in trace))
    print("   in brute-force list of", len(oracle), ":", rec in oracle)
