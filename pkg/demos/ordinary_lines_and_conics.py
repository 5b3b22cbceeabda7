"""
Ordinary lines and ordinary conics of small point sets
======================================================

Exact rational arithmetic throughout: every predicate below is an equality
test on fractions, never a tolerance.
"""

from fractions import Fraction as F
from pathlib import Path

from ordinary_conics import (check_line_theorems, enumerate_lines, enumerate_ordinary_conics,
                             fit_conic, is_coconic, ordinary_lines)
from ordinary_conics.plotting import render_svg

# Three points on the x-axis and one above it: a 3-point line and three 2-point lines.
axis = [(0, 0), (1, 0), (2, 0), (0, 1)]
for rec in enumerate_lines(axis):
    print("line", rec.line, "through", rec.member_indices)
print("ordinary lines:", [r.member_indices for r in ordinary_lines(axis)])

# The classical inequalities, checked exactly on a 7-point example.
seven = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 3), (3, 1), (5, 2)]
checks = check_line_theorems(seven)
print("theorem checks:", checks.results)

# Five points on the unit circle fit a unique conic, 1 - x^2 - y^2 = 0.
circle = [(1, 0), (0, 1), (-1, 0), (0, -1), (F(3, 5), F(4, 5))]
print("fit:", fit_conic(*circle).conic)

# Four collinear points never give a unique conic: the fit is a pencil.
print("pencil dimension:", fit_conic((0, 0), (1, 0), (2, 0), (3, 0), (0, 1)).pencil_dimension)

# The seven points are not co-conic, so at least one ordinary conic exists.
assert is_coconic(seven) is None
recs = enumerate_ordinary_conics(seven)
print(len(recs), "ordinary conics, kinds:", sorted({r.conic.kind.value for r in recs}))

out = Path(__file__).with_name("seven_points.svg")
out.write_text(render_svg(seven, [r.line for r in ordinary_lines(seven)],
                          [r.conic.coefficients for r in recs[:6]], "seven points"))
print("wrote", out)
