"""Cumulant coefficients of the counting vector and the CLT correlation.

Mean, variance and covariance of (N(r_1), ..., N(r_m)) grow linearly in n
with coefficients b1, b11 and O(1) corrections c1, c11, all computable by
quadrature of incomplete-Gamma expressions.  The exact finite-n mean is
available independently as a sum of incomplete-Beta values, which gives a
sharp consistency check.
"""

import numpy as np

from tuecount.asymptotics import cumulant_coeffs
from tuecount.exact_mgf import mean_count_exact
from tuecount.model import make_params

N, ALPHA, T = 500, 2.0, (4.0, 1.0)

params = make_params(N, ALPHA, 2, T, (0.0, 0.0))
rep = cumulant_coeffs(ALPHA, T, n=N)

print(f"n={N}, alpha={ALPHA}, t={T}, radii={np.round(params.radii.r, 6)}")
print()
print(f"{'l':>2} {'b1':>12} {'c1':>12} {'b11(l,l)':>12} {'c11(l,l)':>12}")
for l in range(2):
    print(
        f"{l + 1:>2} {rep.b1[l]:>12.8f} {rep.c1[l]:>12.8f} "
        f"{rep.b11[l, l]:>12.8f} {rep.c11[l, l]:>12.8f}"
    )
print()
print("predicted mean  :", np.round(rep.predicted_mean, 4))
print("exact mean      :", [
    round(mean_count_exact(N, ALPHA, r), 4) for r in params.radii.r
])
print("predicted var   :", np.round(rep.predicted_var, 4))
print("predicted cov12 :", round(rep.predicted_cov[0, 1], 4))
print()
print("CLT correlation matrix Sigma:")
print(np.round(np.array(rep.Sigma, dtype=float), 6))
