"""Effective-register states for the entangled-clock phase readout.

Every group of 2**k clock pairs behaves as a single encoded qubit whose
relative phase advances 2**k times faster than the base pair, so the whole
ensemble is described exactly by a vector of 2**n complex amplitudes.  This
module builds that vector, the Fourier basis it is read out in, and the
closed-form overlap amplitudes between the two.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_MAX_QUBITS = 24
SINGULARITY_THRESHOLD = 1e-9  # |z - 1| below this takes the z -> 1 limit
NORM_TOL = 1e-12


class Basis(enum.Enum):
    """Which basis family an amplitude vector is expressed in."""

    TILDE = "tilde"  # encoded clock-pair product basis
    COMPUTATIONAL = "computational"  # post-readout index basis
    FOURIER = "fourier"  # phase-kickback (Fourier) basis


def canonical_phase(value: float) -> float:
    """Reduce a real phase fraction into [0, 1)."""
    t = float(value) % 1.0
    # float modulo can round up to exactly 1.0 for tiny negative inputs
    return 0.0 if t >= 1.0 else t


@dataclass(frozen=True)
class PhaseFraction:
    """Dimensionless phase in units of a full turn, canonical range [0, 1)."""

    theta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.theta):
            raise ValueError(f"phase fraction must be finite, got {self.theta}")
        object.__setattr__(self, "theta", canonical_phase(self.theta))


@dataclass(frozen=True)
class ClockScenario:
    """Two clock ensembles with a shared energy gap and elapsed proper times.

    The excited level sits ``energy_gap`` above the ground level (hbar = 1),
    so after times ``proper_time_a`` and ``proper_time_b`` the relative phase
    per base pair is ``energy_gap * (proper_time_b - proper_time_a)``.
    """

    energy_gap: float
    proper_time_a: float
    proper_time_b: float

    def __post_init__(self) -> None:
        if not (self.energy_gap > 0 and math.isfinite(self.energy_gap)):
            raise ValueError(f"energy_gap must be positive, got {self.energy_gap}")
        for name in ("proper_time_a", "proper_time_b"):
            t = getattr(self, name)
            if not (t >= 0 and math.isfinite(t)):
                raise ValueError(f"{name} must be a finite non-negative time, got {t}")

    @property
    def delta_t(self) -> float:
        return self.proper_time_b - self.proper_time_a

    @property
    def theta(self) -> PhaseFraction:
        """Phase fraction accumulated per base pair, reduced mod 1."""
        return PhaseFraction(self.energy_gap * self.delta_t / (2.0 * math.pi))


@dataclass(frozen=True)
class RegisterConfig:
    """Size of the effective register: n encoded qubits, N = 2**n outcomes."""

    n: int
    max_n: int = DEFAULT_MAX_QUBITS

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"register size must be an integer, got {self.n!r}")
        if self.n < 1:
            raise ValueError(f"register size must be at least 1, got {self.n}")
        if self.n > self.max_n:
            raise ValueError(
                f"register size {self.n} exceeds the dense-simulation cap {self.max_n}"
            )

    @property
    def dimension(self) -> int:
        return 1 << self.n

    @property
    def clock_count(self) -> int:
        """Total physical clocks consumed: two per pair, dimension - 1 pairs."""
        return 2 * (self.dimension - 1)


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    """Unit-norm complex amplitudes over a power-of-two index set."""

    entries: np.ndarray
    basis: Basis

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.ndim != 1:
            raise ValueError("amplitude vector must be one-dimensional")
        size = arr.shape[0]
        if size < 2 or size & (size - 1):
            raise ValueError(f"length must be a power of two >= 2, got {size}")
        norm_sq = float(np.sum(np.abs(arr) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"amplitudes must have unit norm, got |.|^2 = {norm_sq!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.dimension.bit_length() - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.entries) ** 2


def prepare_final_state(config: RegisterConfig, theta: PhaseFraction) -> AmplitudeVector:
    """Post-evolution state of the encoded register.

    Tensor product, most significant qubit first, of
    ``(|0> + exp(2*pi*i * 2**k * theta) |1>) / sqrt(2)`` for k = n-1 .. 0.
    Entry j therefore equals ``exp(2*pi*i * j * theta) / sqrt(N)``.
    """
    N = config.dimension
    j = np.arange(N)
    entries = np.exp(2j * np.pi * theta.theta * j) / math.sqrt(N)
    return AmplitudeVector(entries, Basis.TILDE)


def fourier_basis_state(config: RegisterConfig, j: int) -> AmplitudeVector:
    """Fourier basis vector: entry k equals ``exp(2*pi*i*k*j/N) / sqrt(N)``."""
    N = config.dimension
    _check_index(j, N)
    k = np.arange(N)
    entries = np.exp(2j * np.pi * k * (j / N)) / math.sqrt(N)
    return AmplitudeVector(entries, Basis.FOURIER)


def outcome_amplitude(config: RegisterConfig, theta: PhaseFraction, j: int) -> complex:
    """Overlap of Fourier basis vector j with the prepared state, in closed form.

    Evaluates the normalized geometric sum ``(1/N) * sum_k z**k`` with
    ``z = exp(2*pi*i*(theta - j/N))`` as ``(z**N - 1) / (N*(z - 1))``, and
    returns exactly 1 in the z -> 1 limit.
    """
    N = config.dimension
    _check_index(j, N)
    t = theta.theta
    # numpy scalar arithmetic throughout so single values match the
    # vectorized path bit for bit
    z = np.exp(2j * np.pi * (t - j / N))
    if abs(z - 1.0) < SINGULARITY_THRESHOLD:
        return 1.0 + 0.0j
    # z**N = exp(2*pi*i*(N*t - j)) = exp(2*pi*i*frac(N*t)) since j is an
    # integer; the reduced form keeps the numerator exactly zero whenever
    # N*t is an integer (frac is exact because N is a power of two).
    mu = N * t - math.floor(N * t)
    numerator = np.exp(2j * np.pi * mu) - 1.0
    return complex(numerator / (N * (z - 1.0)))


def outcome_amplitudes(config: RegisterConfig, theta: PhaseFraction) -> np.ndarray:
    """All N overlap amplitudes at once; vectorized form of outcome_amplitude."""
    N = config.dimension
    t = theta.theta
    j = np.arange(N)
    z = np.exp(2j * np.pi * (t - j / N))
    mu = N * t - math.floor(N * t)
    numerator = np.exp(2j * np.pi * mu) - 1.0
    singular = np.abs(z - 1.0) < SINGULARITY_THRESHOLD
    denominator = np.where(singular, 1.0, N * (z - 1.0))
    return np.where(singular, 1.0 + 0.0j, numerator / denominator)


def _check_index(j: int, dimension: int) -> None:
    if not isinstance(j, (int, np.integer)) or isinstance(j, bool):
        raise ValueError(f"index must be an integer, got {j!r}")
    if not 0 <= j < dimension:
        raise ValueError(f"index {j} out of range [0, {dimension})")
