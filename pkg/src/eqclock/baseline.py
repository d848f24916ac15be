"""Repeated two-clock protocol: the statistical baseline.

A single clock pair ends in the symmetric Bell state with probability
cos(pi*theta)**2; estimating theta from K independent pairs is binomial
frequency inversion, so the error shrinks only like 1/sqrt(K).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .effective_state import PhaseFraction


@dataclass(frozen=True)
class BaselineRun:
    """Outcome counts from K repeated pair measurements."""

    repetitions: int
    plus_count: int
    theta_true: PhaseFraction

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be at least 1, got {self.repetitions}")
        if not 0 <= self.plus_count <= self.repetitions:
            raise ValueError(
                f"plus_count {self.plus_count} outside [0, {self.repetitions}]"
            )

    @property
    def clock_count(self) -> int:
        """Physical clocks consumed: two per pair."""
        return 2 * self.repetitions


def psi_plus_probability(theta: PhaseFraction) -> float:
    """Probability that an evolved pair is found in the symmetric Bell state."""
    return math.cos(math.pi * theta.theta) ** 2


def run_baseline(theta: PhaseFraction, repetitions: int, seed: int) -> BaselineRun:
    """Measure K evolved pairs; plus_count is Binomial(K, cos(pi*theta)**2)."""
    if repetitions < 1:
        raise ValueError(f"repetitions must be at least 1, got {repetitions}")
    rng = np.random.default_rng(seed)
    plus = int(rng.binomial(repetitions, psi_plus_probability(theta)))
    return BaselineRun(repetitions=repetitions, plus_count=plus, theta_true=theta)


def invert_plus_frequency(plus_frequency, repetitions: int):
    """Frequency inversion theta_hat = arccos(sqrt(p_hat))/pi with delta-method
    standard error.  Valid on theta in [0, 1/2] where the probability map is
    one-to-one; accepts scalars or arrays."""
    phat = np.clip(np.asarray(plus_frequency, dtype=np.float64), 0.0, 1.0)
    theta_hat = np.arccos(np.sqrt(phat)) / np.pi
    slope = np.pi * np.sin(2.0 * np.pi * theta_hat)  # |d p / d theta| at the estimate
    # at phat = 0 or 1 the estimate pins to an endpoint where the probability
    # map is flat, so the delta method degenerates: report an infinite error
    at_endpoint = (phat <= 0.0) | (phat >= 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        std_error = np.where(
            at_endpoint, np.inf, np.sqrt(phat * (1.0 - phat) / repetitions) / slope
        )
    return theta_hat, std_error


def baseline_estimate(run: BaselineRun) -> tuple[float, float]:
    """Point estimate in [0, 1/2] and its delta-method standard error."""
    theta_hat, std_error = invert_plus_frequency(run.plus_count / run.repetitions, run.repetitions)
    return float(theta_hat), float(std_error)
