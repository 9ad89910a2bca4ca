"""
Fractional differences from weights to operators
================================================

The fractional difference of order r is a lower-triangular Toeplitz matrix
whose first column holds the Grunwald-Letnikov weights.
"""

# The weights follow a one-line recurrence; for integer orders they are
# signed binomials and vanish past i = r.
import numpy as np
from fracsum import build_frac_delta, build_frac_delta_inverse, compose, weight_direct, weights

print("r = 1   :", weights(1, 6).weights)
print("r = 2   :", weights(2, 6).weights)
print("r = 0.5 :", weights(0.5, 6).weights)

# The recurrence agrees with the Gamma-function formula.
w = weights(0.5, 20).weights
direct = np.array([weight_direct(0.5, i) for i in range(20)])
print("max relative gap to Gamma quotient:", np.max(np.abs(w - direct) / np.abs(direct)))

# Orders add under composition, and Delta^(-r) undoes Delta^(r).
n = 64
half = build_frac_delta(0.5)
print("Delta^(1/2) o Delta^(1/2) vs first difference:",
      np.abs(compose(half, half, n).truncation(n) - build_frac_delta(1).truncation(n)).max())
print("Delta^(0.3) o Delta^(-0.3) vs identity:",
      np.abs(compose(build_frac_delta(0.3), build_frac_delta_inverse(0.3), n).truncation(n)
             - np.eye(n)).max())
