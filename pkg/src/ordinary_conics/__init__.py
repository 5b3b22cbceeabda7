"""Exact enumeration of ordinary lines and ordinary conics of planar point sets.

The planar tools in :mod:`.incidence` and :mod:`.conics` work over the
rationals; :mod:`.veronese` lifts points to R^5 and finds one ordinary conic
constructively; :mod:`.constructions` builds the cubic-curve extremal
configurations in high-precision floats; :mod:`.groupcount` counts their
ordinary conics through index arithmetic.
"""

from __future__ import annotations

from .conics import (Conic, ConicClass, ConicFit, ConicRecord, classify_conic, conic_contains,
                     enumerate_ordinary_conics, fit_conic, is_coconic, verify_ordinary, veronese_row)
from .constructions import (CyclicConstruction, EpsilonPolicy, FloatConicRecord, FloatPoint2,
                            apply_chart, enumerate_ordinary_conics_float, gen_acnodal_subgroup,
                            gen_conic_line, gen_elliptic_subgroup, gen_line_plus)
from .errors import (CoconicError, InternalInvariantError, PrecisionError, PreconditionError,
                     RetryExhaustedError)
from .groupcount import CyclicCountReport, coconic_predicate, count_conic_line, count_cyclic
from .incidence import (LineProfile, LineRecord, PointSet, TheoremChecks, check_line_theorems,
                        double_ordinary_point, double_ordinary_triple, enumerate_lines,
                        is_collinear, is_near_collinear, line_profile, noncollinear_triples,
                        ordinary_lines)
from .pointio import ParseError, PointFile, read_points, write_points
from .qlinalg import Flat, det, flat_contains, flat_intersect, flat_span, nullspace, rank, solve
from .veronese import (Hyperprojection, choose_generic_coflat, find_ordinary_conic,
                       find_ordinary_conic_traced, hyperproject, on_variety,
                       triangle_hyperprojection, veronese)

__version__ = "0.1.0"
