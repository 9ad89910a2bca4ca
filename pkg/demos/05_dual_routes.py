"""
Two routes to the dual of fdf
=============================

A sequence a lies in the beta-dual of fdf when u = a * S~ has summable
differences and converges.  The same question can be asked of a triangle V
built from u.
"""

import numpy as np
from fracsum import dual_check
from fracsum.frac_coeff import partial_weight_sums

n = 1024
k = np.arange(n, dtype=float)
samples = {
    "k^-3": (k + 1) ** -3,
    "k^-1/2": (k + 1) ** -0.5,
    "constant": np.ones(n),
    "(-1)^k": (-1.0) ** k,
}
for name, a in samples.items():
    rep = dual_check(a, 0.3, "beta")
    print(f"{name:>9}: V route {rep.route_V.verdict.value:<13} direct route "
          f"{rep.route_direct.verdict.value:<13} agree {rep.agreement}")

# When u tends to a nonzero constant the routes part ways: the diagonal of V
# carries u_n, which keeps sum_k |Delta(v_nk - alpha_k)| near 2|lim u|.
a = 1.0 / partial_weight_sums(-0.3, n)
rep = dual_check(a, 0.3, "beta")
print("u = 1:", rep.route_V["C23"].verdict.value, "on V,", rep.route_direct.verdict.value, "directly")
