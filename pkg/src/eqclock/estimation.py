"""Measurement statistics, sampling, and the tolerance/confidence bookkeeping.

The readout distribution over outcomes j is the squared modulus of the
closed-form overlap amplitudes; it concentrates within a few indices of
N*theta.  The accompanying bounds certify that concentration: the amplitude
at wrapped index distance d is at most 1/(2d), and the probability of landing
more than gamma away is at most 1/(2*(gamma-1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .effective_state import (
    PhaseFraction,
    RegisterConfig,
    outcome_amplitudes,
)

PROBABILITY_SUM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Probability vector over the N readout outcomes."""

    probabilities: np.ndarray
    config: RegisterConfig
    theta_true: PhaseFraction

    def __post_init__(self) -> None:
        arr = np.array(self.probabilities, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] != self.config.dimension:
            raise ValueError("probability vector length must match the register dimension")
        if np.any(arr < 0):
            raise ValueError("probabilities must be non-negative")
        total = float(arr.sum())
        if abs(total - 1.0) > PROBABILITY_SUM_TOL:
            raise ValueError(f"probabilities must sum to 1, got {total!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "probabilities", arr)


@dataclass(frozen=True)
class ToleranceSpec:
    """Integer outcome tolerance gamma and the confidence it guarantees."""

    gamma: int
    confidence: float

    def __post_init__(self) -> None:
        if not isinstance(self.gamma, int) or isinstance(self.gamma, bool) or self.gamma < 2:
            raise ValueError(f"gamma must be an integer >= 2, got {self.gamma!r}")
        if not 0.0 < self.confidence < 1.0:
            raise ValueError(f"confidence must lie in (0, 1), got {self.confidence!r}")

    @classmethod
    def from_gamma(cls, gamma: int) -> "ToleranceSpec":
        return cls(gamma=gamma, confidence=1.0 - tail_probability_bound(gamma))

    @classmethod
    def from_confidence(cls, confidence: float) -> "ToleranceSpec":
        return cls(gamma=gamma_for_confidence(confidence), confidence=confidence)


@dataclass(frozen=True)
class EstimationReport:
    """One full readout: outcome, phase and time estimates, and the
    tolerance interval that holds with the stated confidence."""

    outcome_m: int
    theta_hat: PhaseFraction
    delta_t_hat: float
    gamma: int
    confidence: float
    interval: tuple[float, float]  # raw endpoints, may exceed [0, 1)
    aliasing_note: str

    def to_dict(self) -> dict:
        return {
            "outcome_m": self.outcome_m,
            "theta_hat": self.theta_hat.theta,
            "delta_t_hat": self.delta_t_hat,
            "gamma": self.gamma,
            "confidence": self.confidence,
            "interval": list(self.interval),
            "aliasing_note": self.aliasing_note,
        }


def wrapped_index_distance(j, target: float, dimension: int):
    """Circular distance between outcome index j and the real target index on
    the ring of size ``dimension``.  Accepts scalars or arrays."""
    d = np.abs(np.asarray(j, dtype=np.float64) - target)
    return np.minimum(d, dimension - d)


def distribution(config: RegisterConfig, theta: PhaseFraction) -> OutcomeDistribution:
    """Readout statistics: probability of outcome j is the squared modulus of
    its overlap amplitude."""
    probs = np.abs(outcome_amplitudes(config, theta)) ** 2
    return OutcomeDistribution(probs, config, theta)


def sample(dist: OutcomeDistribution, seed: int, count: int) -> np.ndarray:
    """Draw ``count`` i.i.d. outcomes by inverse CDF; deterministic per seed."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(dist.probabilities)
    cdf[-1] = 1.0  # guard the top bin against cumulative rounding
    draws = np.searchsorted(cdf, rng.random(count), side="right")
    return np.minimum(draws, dist.config.dimension - 1).astype(np.int64)


def estimate(
    outcome_m: int,
    config: RegisterConfig,
    energy_gap: float,
    spec: ToleranceSpec,
) -> EstimationReport:
    """Point estimates and tolerance interval for one readout outcome.

    theta_hat is m/N exactly; delta_t_hat is 2*pi*m/(N*energy_gap), recovered
    only modulo the full period 2*pi/energy_gap.
    """
    N = config.dimension
    if not 0 <= outcome_m < N:
        raise ValueError(f"outcome {outcome_m} out of range [0, {N})")
    if not energy_gap > 0:
        raise ValueError(f"energy_gap must be positive, got {energy_gap}")
    theta_hat = outcome_m / N
    half_width = spec.gamma / N
    period = 2.0 * math.pi / energy_gap
    return EstimationReport(
        outcome_m=int(outcome_m),
        theta_hat=PhaseFraction(theta_hat),
        delta_t_hat=2.0 * math.pi * outcome_m / (N * energy_gap),
        gamma=spec.gamma,
        confidence=spec.confidence,
        interval=(theta_hat - half_width, theta_hat + half_width),
        aliasing_note=(
            f"delta_t is identified only modulo 2*pi/energy_gap = {period:.17g}; "
            "phase fractions are reduced mod 1"
        ),
    )


def amplitude_bound(config: RegisterConfig, theta: PhaseFraction, j: int) -> float:
    """Certified ceiling on the outcome amplitude magnitude: 1/(2*d) at wrapped
    index distance d from N*theta, infinite (vacuous) at d = 0."""
    N = config.dimension
    if not 0 <= j < N:
        raise ValueError(f"index {j} out of range [0, {N})")
    d = float(wrapped_index_distance(j, N * theta.theta, N))
    if d == 0.0:
        return math.inf
    return 1.0 / (2.0 * d)


def tail_probability_exact(
    config: RegisterConfig,
    theta: PhaseFraction,
    gamma: int,
    wrap: bool = True,
) -> float:
    """Exact probability that the readout lands more than gamma away from
    N*theta.  Distance is circular by default; ``wrap=False`` uses the plain
    linear distance for comparison."""
    N = config.dimension
    if not isinstance(gamma, int) or isinstance(gamma, bool):
        raise ValueError(f"gamma must be an integer, got {gamma!r}")
    if not 1 <= gamma <= N // 2:
        raise ValueError(f"gamma must lie in [1, N/2] = [1, {N // 2}], got {gamma}")
    probs = distribution(config, theta).probabilities
    target = N * theta.theta
    j = np.arange(N)
    if wrap:
        d = wrapped_index_distance(j, target, N)
    else:
        d = np.abs(j - target)
    return float(probs[d > gamma].sum())


def tail_probability_bound(gamma: int) -> float:
    """Tolerance-window failure ceiling 1/(2*(gamma-1)), valid for gamma >= 2."""
    if not isinstance(gamma, int) or isinstance(gamma, bool) or gamma < 2:
        raise ValueError(f"gamma must be an integer >= 2, got {gamma!r}")
    return 1.0 / (2.0 * (gamma - 1))


def gamma_for_confidence(confidence: float) -> int:
    """Smallest integer gamma >= 2 whose failure ceiling meets the requested
    confidence, i.e. ceil(1 + 1/(2*(1-confidence)))."""
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence!r}")
    raw = 1.0 + 1.0 / (2.0 * (1.0 - confidence))
    # absorb float representation error of inputs like 0.9 before taking ceil
    return max(2, math.ceil(raw - 1e-9))
