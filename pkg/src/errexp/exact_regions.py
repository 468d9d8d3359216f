"""Exact error-exponent regions.

Direct hypothesis testing from i.i.d. samples, testing between two fixed
channel input sequences, and the remote-HT trade-off obtained by combining a
local threshold test with a two-codeword channel code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, InputError
from .legendre import ScoredPmf, conjugate, conjugate_mixture, loglik_scores, llr_interval
from .optimize import GridSpec, pattern_search, simplex_grid
from .prob_core import Channel, JointPmf, Pmf, kl_array, kl_divergence


@dataclass(frozen=True)
class ExponentPoint:
    """A (type I, type II) exponent pair and the threshold(s) that produced it."""

    kappa_alpha: float
    kappa_beta: float
    theta: float | tuple[float, float]


@dataclass(frozen=True)
class TradeoffCurve:
    """Ordered boundary points; kappa_alpha increasing, kappa_beta non-increasing."""

    label: str
    points: tuple[ExponentPoint, ...]

    def __init__(self, label: str, points) -> None:
        pts = tuple(points)
        for a, b in zip(pts, pts[1:]):
            if not b.kappa_alpha > a.kappa_alpha:
                raise InputError("kappa_alpha must be strictly increasing along the curve")
            if b.kappa_beta > a.kappa_beta + 1e-12:
                raise InputError("kappa_beta must be non-increasing along the curve")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "points", pts)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class ChannelPairLaw:
    """Limiting joint type of the two transmitted input sequences."""

    joint: JointPmf

    def __post_init__(self) -> None:
        if self.joint.row_alphabet != self.joint.col_alphabet:
            raise InputError("pair law must live on input x input")

    @property
    def probs(self) -> np.ndarray:
        return self.joint.probs

    @property
    def alphabet(self) -> tuple:
        return self.joint.row_alphabet

    @staticmethod
    def point_mass(alphabet, pair) -> "ChannelPairLaw":
        alphabet = tuple(alphabet)
        m = np.zeros((len(alphabet), len(alphabet)))
        m[alphabet.index(pair[0]), alphabet.index(pair[1])] = 1.0
        return ChannelPairLaw(JointPmf(alphabet, alphabet, m))

    @staticmethod
    def from_matrix(alphabet, matrix) -> "ChannelPairLaw":
        alphabet = tuple(alphabet)
        return ChannelPairLaw(JointPmf(alphabet, alphabet, matrix))


@dataclass(frozen=True)
class LawSearchConfig:
    """Search settings for the transmitted-pair law optimization."""

    grid_resolution: int = 20
    pattern_step: float = 0.25
    pattern_min_step: float = 1e-4
    max_input_size: int = 6


def direct_region_point(p: Pmf, q: Pmf, theta: float) -> ExponentPoint:
    """Boundary point of the direct-HT region at log-likelihood threshold theta."""
    d_pq = kl_divergence(p, q)
    d_qp = kl_divergence(q, p)
    if not (np.isfinite(d_pq) and np.isfinite(d_qp)):
        raise DomainError("direct region requires mutual absolute continuity")
    if not (-d_pq < theta < d_qp):
        raise DomainError(
            f"theta={theta} outside the admissible interval ({-d_pq}, {d_qp})")
    sp = loglik_scores(p, q)
    value = conjugate(sp, theta).value
    return ExponentPoint(value, value - theta, theta)


def direct_tradeoff(p: Pmf, q: Pmf, kappa_alpha: float) -> float:
    """kappa_beta on the direct-HT boundary at a given kappa_alpha.

    Out-of-range kappa_alpha maps to the boundary values: 0 maps to D(p||q),
    anything at or above D(q||p) maps to 0.
    """
    d_pq = kl_divergence(p, q)
    d_qp = kl_divergence(q, p)
    if not (np.isfinite(d_pq) and np.isfinite(d_qp)):
        raise DomainError("direct trade-off requires mutual absolute continuity")
    if kappa_alpha <= 0:
        return d_pq
    if kappa_alpha >= d_qp:
        return 0.0
    sp = loglik_scores(p, q)
    p_eff, f_eff = sp.effective()
    return _invert_boundary(_CgfMixture([(1.0, p_eff, f_eff)]), kappa_alpha)


class _CgfMixture:
    """Weighted sum of log-MGFs over finite-score components, one shared tilt."""

    def __init__(self, components: list[tuple[float, np.ndarray, np.ndarray]]):
        self.components = components

    def psi(self, lam: float) -> float:
        total = 0.0
        for w, p, f in self.components:
            shift = lam * f
            m = shift.max()
            total += w * (m + np.log(np.sum(p * np.exp(shift - m))))
        return total

    def mean(self, lam: float) -> float:
        total = 0.0
        for w, p, f in self.components:
            shift = lam * f
            t = p * np.exp(shift - shift.max())
            total += w * float(np.sum(t * f) / t.sum())
        return total


def _invert_boundary(mix: _CgfMixture, kappa_alpha: float) -> float:
    """kappa_beta on the boundary traced by lam in [0, 1].

    On that segment the type-I exponent g(lam) = lam*psi'(lam) - psi(lam)
    grows from 0 to its maximum at lam = 1; bisect g = kappa_alpha and return
    kappa_alpha - psi'(lam*).
    """
    def g(lam: float) -> float:
        return lam * mix.mean(lam) - mix.psi(lam)

    if kappa_alpha >= g(1.0):
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if g(mid) < kappa_alpha:
            lo = mid
        else:
            hi = mid
    lam = 0.5 * (lo + hi)
    return kappa_alpha - mix.mean(lam)


def _pair_scores(ch: Channel) -> list[list[ScoredPmf]]:
    """scores[i][j]: log(row_j / row_i) with base row_i, for every input pair."""
    n = len(ch.input_alphabet)
    out = []
    for i in range(n):
        row_i = ch.row_at(i)
        out.append([loglik_scores(row_i, ch.row_at(j)) for j in range(n)])
    return out


def _check_assumption(ch: Channel) -> None:
    bad = ch.violating_row_pair()
    if bad is not None:
        raise DomainError(
            f"channel rows for inputs {bad[0]!r} and {bad[1]!r} do not share support")


def channel_d_bounds(ch: Channel, law: ChannelPairLaw) -> tuple[float, float]:
    """The two averaged row divergences bounding the threshold interval."""
    _check_assumption(ch)
    if law.joint.row_alphabet != ch.input_alphabet:
        raise InputError("pair law alphabet does not match channel input alphabet")
    w = law.probs
    n = w.shape[0]
    d_min = 0.0
    d_max = 0.0
    for i in range(n):
        for j in range(n):
            if w[i, j] == 0:
                continue
            d_min += w[i, j] * kl_array(ch.rows[i], ch.rows[j])
            d_max += w[i, j] * kl_array(ch.rows[j], ch.rows[i])
    return d_min, d_max


def _channel_conjugate(ch: Channel, law: ChannelPairLaw, theta: float):
    """Conjugate of the law-averaged per-pair log-MGF at threshold theta."""
    w = law.probs
    scored, weights = [], []
    pairs = _pair_scores(ch)
    n = w.shape[0]
    for i in range(n):
        for j in range(n):
            if w[i, j] == 0:
                continue
            scored.append(pairs[i][j])
            weights.append(w[i, j])
    return conjugate_mixture(scored, weights, theta)


def channel_region_point(ch: Channel, law: ChannelPairLaw, theta: float) -> ExponentPoint:
    """Boundary point for testing between two channel input sequences."""
    d_min, d_max = channel_d_bounds(ch, law)
    if not (-d_min <= theta <= d_max):
        raise DomainError(
            f"theta={theta} outside the admissible interval ({-d_min}, {d_max})")
    value = _channel_conjugate(ch, law, theta).value
    return ExponentPoint(value, value - theta, theta)


def channel_max_divergence(ch: Channel) -> tuple[float, tuple]:
    """Largest pairwise row divergence and its achieving input pair.

    Ties break to the lexicographically smallest index pair; identical-row
    channels return (0, (first, first)).
    """
    n = len(ch.input_alphabet)
    best = 0.0
    best_pair = (ch.input_alphabet[0], ch.input_alphabet[0])
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = kl_array(ch.rows[i], ch.rows[j])
            if d > best:
                best = d
                best_pair = (ch.input_alphabet[i], ch.input_alphabet[j])
    return best, best_pair


def _law_mixture(ch: Channel, weights: np.ndarray) -> _CgfMixture | None:
    """CGF mixture of per-pair LLR scores; None when only diagonal mass remains."""
    with np.errstate(divide="ignore"):
        logrows = np.log(ch.rows)
    n = weights.shape[0]
    components = []
    for i in range(n):
        for j in range(n):
            if weights[i, j] == 0 or i == j:
                continue
            components.append((float(weights[i, j]), ch.rows[i],
                               logrows[j] - logrows[i]))
    return _CgfMixture(components) if components else None


def _channel_branch_beta(ch: Channel, law: ChannelPairLaw, kappa_alpha: float) -> float:
    """kappa_beta of the channel test at the given type-I exponent, for one law."""
    mix = _law_mixture(ch, law.probs)
    if mix is None:
        return 0.0
    return _invert_boundary(mix, kappa_alpha)


def best_channel_branch(ch: Channel, kappa_alpha: float,
                        config: LawSearchConfig = LawSearchConfig()) -> tuple[float, ChannelPairLaw]:
    """Maximize the channel-test type-II exponent over transmitted-pair laws.

    Simplex grid over the |X|^2 pair simplex followed by pattern-search
    refinement; the result is a certified lower bound on the supremum.
    """
    _check_assumption(ch)
    n = len(ch.input_alphabet)
    if n > config.max_input_size:
        raise InputError(
            f"law search capped at {config.max_input_size} inputs; got {n}")
    dim = n * n

    def objective(blocks):
        w = blocks[0].reshape(n, n)
        law = ChannelPairLaw(JointPmf(ch.input_alphabet, ch.input_alphabet, w))
        return _channel_branch_beta(ch, law, kappa_alpha)

    best_val = -np.inf
    best_vec = None
    for vec in simplex_grid(GridSpec(dim, config.grid_resolution)):
        val = objective([vec])
        if val > best_val:
            best_val, best_vec = val, vec
    blocks, val = pattern_search(objective, [best_vec],
                                 step=config.pattern_step,
                                 min_step=config.pattern_min_step)
    law = ChannelPairLaw(JointPmf(ch.input_alphabet, ch.input_alphabet,
                                  blocks[0].reshape(n, n)))
    return val, law


def rht_tradeoff(p_u: Pmf, q_u: Pmf, ch: Channel, kappa_alpha: float,
                 law_search: LawSearchConfig = LawSearchConfig()) -> float:
    """Best type-II exponent for remote HT at the given type-I exponent.

    The local test contributes kappa_alpha - theta0 with the source conjugate
    pinned at kappa_alpha; the channel test contributes its own branch, and
    the transmitted-pair law is optimized by grid plus pattern search. The
    returned value is a certified lower bound on the true supremum.
    """
    if kappa_alpha <= 0:
        raise DomainError("kappa_alpha must be positive")
    d_pq = kl_divergence(p_u, q_u)
    d_qp = kl_divergence(q_u, p_u)
    if not (np.isfinite(d_pq) and np.isfinite(d_qp)):
        raise DomainError("remote HT requires mutually absolutely continuous sources")
    source_beta = direct_tradeoff(p_u, q_u, kappa_alpha)
    if source_beta == 0.0:
        return 0.0
    channel_beta, _ = best_channel_branch(ch, kappa_alpha, law_search)
    return min(source_beta, max(channel_beta, 0.0))


def kappa0(p_u: Pmf, q_u: Pmf, ch: Channel) -> float:
    """Stein-corner exponent min{D(P_U||Q_U), max pairwise row divergence}."""
    e_c, _ = channel_max_divergence(ch)
    return min(kl_divergence(p_u, q_u), e_c)


def direct_curve(p: Pmf, q: Pmf, n_points: int = 50, margin: float = 1e-9,
                 label: str = "direct") -> TradeoffCurve:
    """Sweep the direct-HT boundary over an even theta grid."""
    lo, hi = llr_interval(p, q)
    thetas = np.linspace(lo + margin, hi - margin, n_points)
    pts = [direct_region_point(p, q, float(t)) for t in thetas]
    pts.sort(key=lambda pt: pt.kappa_alpha)
    dedup = []
    for pt in pts:
        if not dedup or pt.kappa_alpha > dedup[-1].kappa_alpha + 1e-15:
            dedup.append(pt)
    return TradeoffCurve(label, dedup)
