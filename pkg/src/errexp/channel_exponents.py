"""Channel-coding exponent ingredients for unequal error protection.

Expurgated exponent over Bhattacharyya kernels, the special-message
protection exponent, and the threshold interval it lives on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, InputError
from .legendre import ScoredPmf, conjugate
from .optimize import GridSpec, maximize_1d, pattern_search, simplex_grid
from .prob_core import Channel, JointPmf, Pmf, kl_array

RHO_CAP = 1e4
RHO_GRID_POINTS = 80


@dataclass(frozen=True)
class InputDesign:
    """Joint law of a state S and the channel input X, with S and X sharing
    the channel input alphabet."""

    joint: JointPmf

    def __post_init__(self) -> None:
        if self.joint.row_alphabet != self.joint.col_alphabet:
            raise InputError("design requires the state alphabet to equal the input alphabet")

    @property
    def state_probs(self) -> np.ndarray:
        return self.joint.probs.sum(axis=1)

    @property
    def input_given_state(self) -> np.ndarray:
        marg = self.state_probs[:, None]
        return np.where(marg > 0, self.joint.probs / np.where(marg > 0, marg, 1.0),
                        1.0 / self.joint.probs.shape[1])

    @staticmethod
    def from_matrix(alphabet, matrix) -> "InputDesign":
        alphabet = tuple(alphabet)
        return InputDesign(JointPmf(alphabet, alphabet, matrix))

    @staticmethod
    def deterministic(alphabet) -> "InputDesign":
        """X = S with uniform S."""
        alphabet = tuple(alphabet)
        n = len(alphabet)
        return InputDesign(JointPmf(alphabet, alphabet, np.eye(n) / n))


def bhattacharyya_kernel(ch: Channel) -> np.ndarray:
    """B[x, x'] = sum_y sqrt(P(y|x) P(y|x'))."""
    return np.sqrt(ch.rows) @ np.sqrt(ch.rows).T


def _pair_weights(design: InputDesign) -> np.ndarray:
    """w[x, x'] = sum_s P_S(s) P_{X|S}(x|s) P_{X|S}(x'|s)."""
    ps = design.state_probs
    pxs = design.input_given_state
    return (pxs.T * ps) @ pxs


def expurgated_exponent(rate: float, design: InputDesign, ch: Channel) -> float:
    """Expurgated channel exponent at the given rate, in nats.

    Maximizes -rho*R - rho*log(sum w B^(1/rho)) over rho >= 1 via a
    log-spaced grid and golden-section refinement. Diverges to +inf exactly
    when the kernel has zero entries carrying weight and the remaining mass
    is small enough that the objective grows linearly in rho.
    """
    if rate < 0:
        raise DomainError("rate must be non-negative")
    if design.joint.row_alphabet != ch.input_alphabet:
        raise InputError("design alphabet does not match channel input alphabet")
    w = _pair_weights(design).reshape(-1)
    b = bhattacharyya_kernel(ch).reshape(-1)
    keep = w > 0
    w, b = w[keep], b[keep]
    dead_mass = float(w[b == 0].sum())
    if dead_mass > 0:
        live_mass = float(w[b > 0].sum())
        if live_mass == 0.0 or -rate - np.log(live_mass) > 0:
            return float("inf")

    wl = w[b > 0]
    logb = np.log(b[b > 0])

    def objective(rho: float) -> float:
        kernel = float(np.sum(wl * np.exp(logb / rho)))
        return -rho * rate - rho * np.log(kernel)

    rhos = np.geomspace(1.0, RHO_CAP, RHO_GRID_POINTS)
    vals = np.array([objective(r) for r in rhos])
    k = int(np.argmax(vals))
    lo = rhos[max(k - 1, 0)]
    hi = rhos[min(k + 1, len(rhos) - 1)]
    _, best = maximize_1d(objective, lo, hi, tol=1e-9)
    return best


def expurgated_exponent_opt(rate: float, ch: Channel,
                            grid_resolution: int = 20,
                            pattern_min_step: float = 1e-4) -> tuple[float, InputDesign]:
    """Expurgated exponent maximized over input designs (grid + pattern search)."""
    alphabet = ch.input_alphabet
    n = len(alphabet)

    def f(blocks):
        design = InputDesign(JointPmf(alphabet, alphabet, blocks[0].reshape(n, n)))
        return expurgated_exponent(rate, design, ch)

    best_val = -np.inf
    best_vec = None
    for vec in simplex_grid(GridSpec(n * n, grid_resolution)):
        val = f([vec])
        if val > best_val:
            best_val, best_vec = val, vec
    blocks, val = pattern_search(f, [best_vec], step=0.25, min_step=pattern_min_step)
    design = InputDesign(JointPmf(alphabet, alphabet, blocks[0].reshape(n, n)))
    return val, design


def bsc_expurgated_zero_rate(p: float) -> float:
    """Closed-form zero-rate expurgated exponent of a binary symmetric channel."""
    if not 0.0 <= p <= 1.0:
        raise DomainError("crossover must lie in [0, 1]")
    if p in (0.0, 1.0):
        return float("inf")
    return -0.25 * float(np.log(4.0 * p * (1.0 - p)))


def output_given_state(design: InputDesign, ch: Channel) -> np.ndarray:
    """Rows P(y | S=s) = sum_x P(x|s) P(y|x)."""
    return design.input_given_state @ ch.rows


def theta_bounds(design: InputDesign, ch: Channel) -> tuple[float, float]:
    """State-averaged divergences between P(.|S=s) and the channel row at x=s."""
    ps = design.state_probs
    pys = output_given_state(design, ch)
    theta_l = 0.0
    theta_u = 0.0
    for s, weight in enumerate(ps):
        if weight == 0:
            continue
        theta_l += weight * kl_array(pys[s], ch.rows[s])
        theta_u += weight * kl_array(ch.rows[s], pys[s])
    return theta_l, theta_u


def special_message_exponent(design: InputDesign, ch: Channel, theta: float) -> float:
    """State-averaged conjugate of the special-message log-likelihood score.

    theta must lie in the closed interval [-theta_l, theta_u]; endpoint
    evaluations return the limiting values.
    """
    theta_l, theta_u = theta_bounds(design, ch)
    if not (-theta_l <= theta <= theta_u):
        raise DomainError(
            f"theta={theta} outside the admissible interval ({-theta_l}, {theta_u})")
    ps = design.state_probs
    pys = output_given_state(design, ch)
    total = 0.0
    for s, weight in enumerate(ps):
        if weight == 0:
            continue
        base = Pmf(ch.output_alphabet, pys[s])
        mask = pys[s] > 0
        scores = np.zeros(len(ch.output_alphabet))
        with np.errstate(divide="ignore"):
            scores[mask] = np.log(ch.rows[s][mask]) - np.log(pys[s][mask])
        scores[(pys[s] == 0)] = 0.0
        total += weight * conjugate(ScoredPmf(base, scores), theta).value
    return total
