"""Direct hypothesis testing: the exact error-exponent trade-off region.

For a simple binary test P = Bern(0.5) versus Q = Bern(0.8), the positive
boundary of the achievable (kappa_alpha, kappa_beta) region is traced by the
Legendre conjugate of the log-likelihood-ratio log-MGF: each threshold theta
in (-D(P||Q), D(Q||P)) yields the pair (psi*(theta), psi*(theta) - theta).
"""

import numpy as np

from errexp import (Pmf, conjugate, direct_curve, direct_region_point,
                    direct_tradeoff, kl_divergence, loglik_scores)

p = Pmf((0, 1), [0.5, 0.5])
q = Pmf((0, 1), [0.2, 0.8])

d_pq = kl_divergence(p, q)
d_qp = kl_divergence(q, p)
print(f"D(P||Q) = {d_pq:.6f} nats   D(Q||P) = {d_qp:.6f} nats")
print(f"threshold interval: ({-d_pq:.6f}, {d_qp:.6f})")

# The Stein corners: driving theta to either end of the interval trades one
# exponent to zero while the other reaches the corresponding divergence.
for theta in (-d_pq + 1e-6, 0.0, d_qp - 1e-6):
    pt = direct_region_point(p, q, theta)
    print(f"theta = {theta:+.6f}  ->  "
          f"kappa_alpha = {pt.kappa_alpha:.6f}  kappa_beta = {pt.kappa_beta:.6f}")

# theta = 0 is the symmetric (Chernoff) point: both exponents equal the
# Chernoff information between P and Q.
chernoff = conjugate(loglik_scores(p, q), 0.0).value
print(f"\nChernoff information = {chernoff:.6f} nats (both exponents at theta = 0)")

# Inverting the boundary: given a type-I exponent budget, the best type-II
# exponent on the positive boundary.
for ka in (0.01, 0.05, 0.10):
    print(f"kappa_alpha = {ka:.2f}  ->  kappa_beta = {direct_tradeoff(p, q, ka):.6f}")

# A full curve: monotone (kappa_beta non-increasing) and convex.
curve = direct_curve(p, q, n_points=9)
print(f"\n{curve.label}:")
print("  kappa_alpha  kappa_beta")
for pt in curve:
    print(f"  {pt.kappa_alpha:11.6f}  {pt.kappa_beta:10.6f}")

kbs = np.array([pt.kappa_beta for pt in curve])
assert np.all(np.diff(kbs) <= 1e-12), "boundary must be monotone"
print("monotonicity check passed")
