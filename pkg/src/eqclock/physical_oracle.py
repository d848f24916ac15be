"""Brute-force simulation of every physical clock qubit.

The effective-register picture treats each group of 2**k clock pairs as one
encoded qubit.  This module certifies that reduction from first principles:
it prepares the full 2(N-1)-qubit entangled state, evolves every clock under
its own proper time, and projects the result onto the encoded product basis.
Deliberately capped at small registers; it exists to check the fast path,
not to replace it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .effective_state import (
    AmplitudeVector,
    Basis,
    ClockScenario,
    PhaseFraction,
    RegisterConfig,
    prepare_final_state,
)

ORACLE_MAX_QUBITS = 3  # physical dimension 2**14 keeps every check sub-second
LEAKAGE_TOL = 1e-12


class LeakageError(RuntimeError):
    """Raised when a state holds weight outside the encoded subspace.

    Protocol states never leak; tripping this signals a bug, not physics.
    """

    def __init__(self, leakage: float):
        super().__init__(
            f"out-of-subspace weight {leakage:.3e} at or above the {LEAKAGE_TOL:.0e} limit"
        )
        self.leakage = leakage


@dataclass(frozen=True)
class ClockQubit:
    """Position of one physical clock in the register layout."""

    group: int  # geometric weight 2**group
    label: str  # "A" or "B"
    copy: int


@dataclass(frozen=True, eq=False)
class PhysicalState:
    """Statevector over all 2(N-1) physical clock qubits.

    Layout lists qubits most significant first: groups from k = n-1 down to 0,
    A copies before B copies inside each group.
    """

    entries: np.ndarray
    layout: tuple[ClockQubit, ...]

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.ndim != 1 or arr.shape[0] != 1 << len(self.layout):
            raise ValueError("entries length must be 2**(number of layout qubits)")
        norm_sq = float(np.sum(np.abs(arr) ** 2))
        if abs(norm_sq - 1.0) > LEAKAGE_TOL:
            raise ValueError(f"physical state must have unit norm, got |.|^2 = {norm_sq!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def num_qubits(self) -> int:
        return len(self.layout)


def register_layout(config: RegisterConfig) -> tuple[ClockQubit, ...]:
    qubits: list[ClockQubit] = []
    for k in range(config.n - 1, -1, -1):
        copies = 1 << k
        qubits.extend(ClockQubit(k, "A", c) for c in range(copies))
        qubits.extend(ClockQubit(k, "B", c) for c in range(copies))
    return tuple(qubits)


def prepare_physical(config: RegisterConfig) -> PhysicalState:
    """Initial entangled state over all clock pairs.

    Each group k contributes ``(|0..0>_A |1..1>_B + |1..1>_A |0..0>_B)/sqrt(2)``
    with 2**k copies per side; groups are tensored from k = n-1 down to 0.
    """
    if config.n > ORACLE_MAX_QUBITS:
        raise ValueError(
            f"physical oracle is capped at n = {ORACLE_MAX_QUBITS}, got n = {config.n}"
        )
    state = np.array([1.0 + 0.0j])
    for k in range(config.n - 1, -1, -1):
        m = 1 << k
        block = np.zeros(1 << (2 * m), dtype=np.complex128)
        block[(1 << m) - 1] = 1.0 / math.sqrt(2.0)  # A copies |0>, B copies |1>
        block[((1 << m) - 1) << m] = 1.0 / math.sqrt(2.0)  # A copies |1>, B copies |0>
        state = np.kron(state, block)
    return PhysicalState(state, register_layout(config))


def evolve_physical(state: PhysicalState, scenario: ClockScenario) -> PhysicalState:
    """Free evolution: every excited clock acquires exp(-i*E*t) under its own
    proper time.  The global phase is kept, not stripped."""
    q = state.num_qubits
    shifts = np.arange(q - 1, -1, -1)  # layout qubit 0 is the most significant bit
    bits = (np.arange(state.entries.shape[0])[:, None] >> shifts[None, :]) & 1
    times = np.array(
        [
            scenario.proper_time_a if qubit.label == "A" else scenario.proper_time_b
            for qubit in state.layout
        ]
    )
    elapsed = bits @ times
    phases = np.exp(-1j * scenario.energy_gap * elapsed)
    return PhysicalState(state.entries * phases, state.layout)


def _encoded_basis_indices(config: RegisterConfig) -> np.ndarray:
    """Physical basis index realizing each encoded index j.

    Encoded bit of weight 2**k set means group k sits in |1..1>_A |0..0>_B,
    cleared means |0..0>_A |1..1>_B.
    """
    n = config.n
    indices = np.empty(config.dimension, dtype=np.int64)
    for j in range(config.dimension):
        idx = 0
        for k in range(n - 1, -1, -1):
            bit = (j >> k) & 1
            for _ in range(1 << k):  # A copies
                idx = (idx << 1) | bit
            for _ in range(1 << k):  # B copies
                idx = (idx << 1) | (1 - bit)
        indices[j] = idx
    return indices


def project_to_tilde(state: PhysicalState, config: RegisterConfig) -> AmplitudeVector:
    """Amplitudes of the state on the encoded product basis, global phase fixed
    so the first nonzero entry is real positive.

    Raises LeakageError if any weight lies outside the encoded subspace.
    """
    expected = 2 * (config.dimension - 1)
    if state.num_qubits != expected:
        raise ValueError(
            f"state has {state.num_qubits} qubits, register of size n = {config.n} "
            f"needs {expected}"
        )
    amps = state.entries[_encoded_basis_indices(config)].copy()
    leakage = float(np.sum(np.abs(state.entries) ** 2) - np.sum(np.abs(amps) ** 2))
    if leakage >= LEAKAGE_TOL:
        raise LeakageError(leakage)
    nonzero = np.flatnonzero(np.abs(amps) > 1e-15)
    if nonzero.size:
        first = amps[nonzero[0]]
        amps *= np.conj(first / abs(first))
    return AmplitudeVector(amps, Basis.TILDE)


def reduction_deviation(config: RegisterConfig, scenario: ClockScenario) -> float:
    """Max entrywise deviation between the full physical simulation (prepared,
    evolved, projected) and the direct effective-register construction."""
    projected = project_to_tilde(evolve_physical(prepare_physical(config), scenario), config)
    direct = prepare_final_state(config, scenario.theta)
    return float(np.max(np.abs(projected.entries - direct.entries)))


def scenario_for_theta(theta: PhaseFraction, energy_gap: float = 1.0) -> ClockScenario:
    """Convenience scenario realizing a given phase fraction exactly."""
    return ClockScenario(
        energy_gap=energy_gap,
        proper_time_a=0.0,
        proper_time_b=2.0 * math.pi * theta.theta / energy_gap,
    )
