"""Log moment generating functions and their Legendre-Fenchel conjugates.

A ScoredPmf pairs a finite PMF with a real (possibly extended-real) score per
symbol. The conjugate is computed by root-finding on the tilted mean, which is
strictly increasing in the tilt, rather than by direct 1-D maximization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError
from .prob_core import Pmf, kl_divergence

LAMBDA_CAP = 1e6
THETA_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class ScoredPmf:
    """A PMF together with one extended-real score per symbol."""

    base: Pmf
    scores: np.ndarray

    def __init__(self, base: Pmf, scores) -> None:
        arr = np.asarray(scores, dtype=float)
        if arr.ndim != 1 or arr.size != len(base):
            raise InputError("ScoredPmf: score length must match alphabet")
        if np.any(np.isnan(arr)):
            raise InputError("ScoredPmf: NaN scores")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "scores", arr)

    def effective(self) -> tuple[np.ndarray, np.ndarray]:
        """(probs, scores) restricted to atoms with positive base mass."""
        mask = self.base.probs > 0
        return self.base.probs[mask], self.scores[mask]


@dataclass(frozen=True)
class ConjugateResult:
    """Value of the conjugate, the maximizing tilt, and a convergence flag.

    `maximizer` is +/-inf when the supremum is attained only in the limit.
    """

    value: float
    maximizer: float
    converged: bool

    def __float__(self) -> float:
        return self.value


def _logsumexp(log_terms: np.ndarray) -> float:
    m = np.max(log_terms)
    if np.isneginf(m):
        return float("-inf")
    return float(m + np.log(np.sum(np.exp(log_terms - m))))


def log_mgf(sp: ScoredPmf, lam: float) -> float:
    """psi(lam) = log E[exp(lam * f(Z))] in nats; psi(0) = 0 exactly."""
    if np.isnan(lam):
        raise InputError("lambda must not be NaN")
    if lam == 0.0:
        return 0.0
    p, f = sp.effective()
    if p.size == 0:
        raise InputError("base PMF has empty support")
    if lam > 0 and np.any(np.isposinf(f)):
        return float("inf")
    if lam < 0 and np.any(np.isneginf(f)):
        return float("inf")
    finite = np.isfinite(f)
    # infinite scores on the vanishing side contribute zero weight
    with np.errstate(divide="ignore"):
        log_terms = np.log(p[finite]) + lam * f[finite]
    return _logsumexp(log_terms)


def _tilted_weights(p: np.ndarray, f: np.ndarray, lam: float) -> np.ndarray:
    shift = lam * f
    shift = shift - np.max(shift)
    w = p * np.exp(shift)
    return w / w.sum()


def tilted_mean(sp: ScoredPmf, lam: float) -> float:
    """Derivative psi'(lam): the score mean under the lam-tilted distribution."""
    p, f = sp.effective()
    if not np.all(np.isfinite(f)):
        raise InputError("tilted_mean requires finite scores")
    return float(np.sum(_tilted_weights(p, f, lam) * f))


def _mix_tilted_mean(components, lam: float) -> float:
    total = 0.0
    for w, p, f in components:
        total += w * float(np.sum(_tilted_weights(p, f, lam) * f))
    return total


def _mix_log_mgf(components, lam: float) -> float:
    total = 0.0
    for w, p, f in components:
        with np.errstate(divide="ignore"):
            total += w * _logsumexp(np.log(p) + lam * f)
    return total


def _conjugate_finite(components, theta: float,
                      lam_lo: float | None = None) -> ConjugateResult:
    """sup_lam theta*lam - sum_k w_k psi_k(lam) for finite-score components.

    `components` is a list of (weight, probs, scores) with probs not
    necessarily normalized (sub-PMFs allowed). `lam_lo` restricts the tilt
    from below (used when negative tilts are inadmissible).
    """
    fmin = sum(w * np.min(f) for w, p, f in components)
    fmax = sum(w * np.max(f) for w, p, f in components)
    if fmax == fmin:
        # constant effective score: psi is linear, conjugate degenerates
        if theta == fmin:
            return ConjugateResult(0.0, 0.0, True)
        lim = -sum(w * np.log(p.sum()) for w, p, f in components)
        return ConjugateResult(lim, np.copysign(np.inf, theta - fmin), True)
    if theta >= fmax:
        # limiting value as lam -> +inf: -sum w log P(argmax set)
        masses = [float(p[np.isclose(f, np.max(f))].sum()) for w, p, f in components]
        if any(m == 0.0 for m in masses):
            return ConjugateResult(float("inf"), float("inf"), True)
        value = -sum(w * np.log(m) for (w, p, f), m in zip(components, masses))
        return ConjugateResult(value, float("inf"), True)
    if theta <= fmin and (lam_lo is None):
        masses = [float(p[np.isclose(f, np.min(f))].sum()) for w, p, f in components]
        if any(m == 0.0 for m in masses):
            return ConjugateResult(float("inf"), float("-inf"), True)
        value = -sum(w * np.log(m) for (w, p, f), m in zip(components, masses))
        return ConjugateResult(value, float("-inf"), True)

    floor = lam_lo if lam_lo is not None else -np.inf
    lo, hi = max(-1.0, floor), 1.0
    # grow the bracket geometrically until psi' straddles theta
    while _mix_tilted_mean(components, lo) > theta and lo > max(-LAMBDA_CAP, floor):
        lo = max(lo * 2.0 if lo < 0 else -1.0, max(-LAMBDA_CAP, floor))
        if lo == floor:
            break
    while _mix_tilted_mean(components, hi) < theta and hi < LAMBDA_CAP:
        hi = min(hi * 2.0, LAMBDA_CAP)
    glo = _mix_tilted_mean(components, lo) - theta
    ghi = _mix_tilted_mean(components, hi) - theta
    if glo > 0.0:
        # theta below the attainable tilted-mean range on [floor, cap]
        lam = lo
        value = theta * lam - _mix_log_mgf(components, lam)
        return ConjugateResult(value, lam, lam_lo is not None)
    if ghi < 0.0:
        lam = hi
        value = theta * lam - _mix_log_mgf(components, lam)
        return ConjugateResult(value, lam, False)
    converged = True
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        gm = _mix_tilted_mean(components, mid) - theta
        if abs(gm) <= THETA_RESIDUAL_TOL or (hi - lo) <= 1e-13 * max(1.0, abs(mid)):
            lo = hi = mid
            break
        if gm < 0:
            lo = mid
        else:
            hi = mid
    else:
        converged = abs(_mix_tilted_mean(components, 0.5 * (lo + hi)) - theta) <= 1e-6
    lam = 0.5 * (lo + hi)
    value = theta * lam - _mix_log_mgf(components, lam)
    return ConjugateResult(value, lam, converged)


def conjugate(sp: ScoredPmf, theta: float) -> ConjugateResult:
    """Legendre-Fenchel conjugate psi*(theta) = sup_lam theta*lam - psi(lam).

    Interior theta is solved by monotone bisection on the tilted mean; beyond
    the score range the limiting value is returned with the maximizer flagged
    +/-inf. Atoms with infinite scores restrict the admissible tilt to the
    side on which they vanish.
    """
    if not np.isfinite(theta):
        raise InputError("theta must be finite")
    p, f = sp.effective()
    if p.size == 0:
        raise InputError("base PMF has empty support")
    has_neg = np.any(np.isneginf(f))
    has_pos = np.any(np.isposinf(f))
    if has_neg and has_pos:
        # psi is finite only at lam = 0
        return ConjugateResult(0.0, 0.0, True)
    if has_pos:
        # mirror: conjugate of the reflected scores at -theta with lam <= 0
        mirrored = ScoredPmf(sp.base, -sp.scores)
        res = conjugate(mirrored, -theta)
        return ConjugateResult(res.value, -res.maximizer, res.converged)
    if has_neg:
        finite = np.isfinite(f)
        sub = [(1.0, p[finite], f[finite])]
        interior = _conjugate_finite(sub, theta, lam_lo=0.0)
        # lam -> 0+ drops the -inf atoms: value -log(sub-mass); lam = 0 gives 0
        at_zero_plus = -float(np.log(p[finite].sum()))
        if at_zero_plus >= interior.value:
            return ConjugateResult(at_zero_plus, 0.0, True)
        return interior
    return _conjugate_finite([(1.0, p, f)], theta)


def conjugate_mixture(scored: list[ScoredPmf], weights, theta: float) -> ConjugateResult:
    """Conjugate of the weighted sum of log-MGFs sharing one tilt variable.

    Computes sup_lam [theta*lam - sum_k w_k psi_k(lam)], the Chernoff exponent
    of a sum of independent scores accumulated under a common threshold.
    Requires finite scores on every component's support.
    """
    w = np.asarray(weights, dtype=float)
    if w.size != len(scored) or np.any(w < 0):
        raise InputError("weights must be non-negative, one per component")
    if abs(w.sum() - 1.0) > 1e-9:
        raise InputError("weights must sum to 1")
    components = []
    for wk, sp in zip(w, scored):
        if wk == 0:
            continue
        p, f = sp.effective()
        if not np.all(np.isfinite(f)):
            raise InputError("conjugate_mixture requires finite scores")
        components.append((float(wk), p, f))
    if not components:
        raise InputError("all mixture weights are zero")
    return _conjugate_finite(components, theta)


def loglik_scores(p: Pmf, q: Pmf) -> ScoredPmf:
    """Log-likelihood ratio scores z -> log(q(z)/p(z)) with base p.

    Scores are -inf where q vanishes on the support of p, +inf where p
    vanishes but q does not, and 0 where both vanish.
    """
    if p.alphabet != q.alphabet:
        raise InputError("PMFs are defined on different alphabets")
    pp, qq = p.probs, q.probs
    scores = np.zeros(len(pp))
    both = (pp > 0) & (qq > 0)
    scores[both] = np.log(qq[both] / pp[both])
    scores[(pp > 0) & (qq == 0)] = -np.inf
    scores[(pp == 0) & (qq > 0)] = np.inf
    return ScoredPmf(p, scores)


def llr_interval(p: Pmf, q: Pmf) -> tuple[float, float]:
    """The open threshold interval (-D(p||q), D(q||p)) of the direct test."""
    return -kl_divergence(p, q), kl_divergence(q, p)
