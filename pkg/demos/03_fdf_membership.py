"""
An unbounded member of fdf
==========================

d = Delta^(-r) (0, 1, 0, 1, ...) grows like k^r, yet its fractional
difference is the almost convergent zero-one sequence.
"""

import numpy as np
from fracsum import fdf_membership, fdf_norm, make_generator

d = make_generator("d_sequence", 8192, r=0.5).values
print("d_k at k = 10, 100, 1000, 8191:", d[[10, 100, 1000, 8191]].round(3))
print("ratio d_8191 / d_2047:", round(d[8191] / d[2047], 4), "(about 4^0.5 = 2)")

report = fdf_membership(d, 0.5, 2000, 1e-3)
print("verdict:", report.space_verdict.value)
print(f"f-lim of Delta^(1/2) d: {report.estimate.value:.12f}")

# The norm estimate is a supremum of window means; it never decreases as the
# prefix grows.
for n in (128, 512, 2048, 8192):
    print(f"  norm lower bound on {n:5d} terms: {fdf_norm(d[:n], 0.5, min(n - 1, 64)):.6f}")
