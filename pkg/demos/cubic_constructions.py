"""
Few ordinary conics from cubic group laws
=========================================

Points of a cyclic subgroup of the acnodal cubic y^2 = x^3 - x^2 are co-conic
exactly when their indices sum to 0 mod n. The float geometry (128-bit
mpmath) and the index arithmetic give the same counts, and the exact counts
approach the leading term n^4 / 24.
"""

from ordinary_conics import (count_conic_line, count_cyclic, enumerate_ordinary_conics_float,
                             gen_acnodal_subgroup, gen_conic_line)

for n in range(5, 10):
    c = gen_acnodal_subgroup(n)
    recs, diag = enumerate_ordinary_conics_float(c.points)
    gap = diag["min_off_residual"]
    gap = "n/a" if gap is None else f"{float(gap):.1e}"
    print(f"acnodal n={n}: geometric {len(recs):3d}  index count {count_cyclic(n).count:3d}  "
          f"smallest off-conic residual {gap}")

recs, _ = enumerate_ordinary_conics_float(gen_conic_line(4).points)
print("conic + line n=4: geometric", len(recs), "index count", count_conic_line(4).total)

# 24 count / n^4 -> 1; the dp path is checked against plain enumeration in the tests.
for n in (16, 32, 64, 128, 256):
    r = count_cyclic(n)
    print(f"n={n:4d}: count {r.count:10d}  24 count / n^4 = {float(r.ratio()):.4f}")
