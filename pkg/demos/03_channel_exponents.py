"""Channel-coding exponents used by the separation schemes.

Two ingredients: the expurgated exponent E_x(R) (reliability of the ordinary
messages at rate R) and the special-message exponent E_sp (unequal error
protection of one distinguished codeword through a state-dependent input
design). Both are maximized over joint state-input designs P_SX.
"""

import numpy as np

from errexp import (Channel, InputDesign, bsc_expurgated_zero_rate, capacity,
                    expurgated_exponent, expurgated_exponent_opt,
                    special_message_exponent, theta_bounds)

ch = Channel.bsc(0.35)
print(f"capacity(BSC(0.35)) = {capacity(ch):.6f} nats")

# Zero-rate expurgated exponent: grid+pattern search over designs recovers
# the closed form -0.25 ln(4 p (1-p)).
value, design = expurgated_exponent_opt(0.0, ch)
closed = bsc_expurgated_zero_rate(0.35)
print(f"E_x(0) optimized = {value:.9f}")
print(f"closed form      = {closed:.9f}   |diff| = {abs(value - closed):.2e}")
print("optimizing design (joint P_SX):")
print(np.round(design.joint.probs, 4))

# E_x is non-increasing in rate; evaluate the optimized design along a sweep
# (it crosses zero near the design's cutoff rate).
print("\nE_x(R) for the zero-rate-optimal design:")
for rate in (0.0, 0.005, 0.01, 0.02):
    print(f"  R = {rate:.3f}  ->  {expurgated_exponent(rate, design, ch):.6f}")

# Special-message exponent: zero at the lower threshold edge, growing to the
# upper edge where the shifted exponent vanishes instead.
design9 = InputDesign.from_matrix((0, 1), [[0.45, 0.05], [0.05, 0.45]])
theta_l, theta_u = theta_bounds(design9, ch)
print(f"\ntheta interval for P(X=S) = 0.9 design: [-{theta_l:.6f}, {theta_u:.6f}]")
for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
    theta = -theta_l + frac * (theta_u + theta_l)
    e_sp = special_message_exponent(design9, ch, theta)
    print(f"  theta = {theta:+.6f}  ->  E_sp = {e_sp:.6f}  "
          f"(E_sp - theta = {e_sp - theta:.6f})")
