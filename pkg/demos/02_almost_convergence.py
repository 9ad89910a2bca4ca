"""
Almost convergence through Lorentz means
========================================

A bounded sequence is almost convergent when the averages of m+1
consecutive terms settle, uniformly in where the window starts.
"""

import numpy as np
from fracsum import estimate_almost_limit, lorentz_grid, make_generator

# (0, 1, 0, 1, ...) has no limit but every long window averages to about 1/2.
z = make_generator("zero_one", 4000)
est = estimate_almost_limit(z, 1000, 1e-3)
print(f"zero_one: f-lim ~ {est.value:.6f}, spread {est.final_spread:.2e}, {est.verdict.value}")

# (-1)^k behaves the same way around 0.
alt = make_generator("alternating", 4000)
print(f"alternating: f-lim ~ {estimate_almost_limit(alt, 1000, 1e-2).value:.6f}")

# Blocks of ones that grow tenfold while the zero blocks grow a hundredfold:
# windows can sit entirely inside either kind of block, so the spread of the
# means stays large for every window length.
blocks = make_generator("miller_orhan", 20000, ones=10)
grid = lorentz_grid(blocks, 2000)
for m in (10, 100, 500, 1000, 2000):
    row = grid.row(m)
    print(f"  m = {m:5d}: means range over [{row.min():.3f}, {row.max():.3f}]")
print("verdict:", estimate_almost_limit(blocks, 2000, 1e-2).verdict.value)
