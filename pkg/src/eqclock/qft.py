"""Fourier transforms on the effective register, dense and gate-decomposed.

The forward transform maps basis state ``|j>`` to the vector with entries
``exp(+2*pi*i*k*j/N) / sqrt(N)``; the inverse uses the conjugate.  Qubit 0 is
the most significant bit of the outcome index, so the gate decomposition ends
with an explicit qubit-reversal swap network instead of a relabeling.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .effective_state import AmplitudeVector, Basis, RegisterConfig

DENSE_MAX_QUBITS = 12
UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class Hadamard:
    target: int


@dataclass(frozen=True)
class ControlledPhase:
    control: int
    target: int
    angle: float  # radians applied to the |11> component


@dataclass(frozen=True)
class Swap:
    a: int
    b: int


Gate = Hadamard | ControlledPhase | Swap


@dataclass(frozen=True)
class GateCircuit:
    """Ordered gate list acting on num_qubits register lines."""

    num_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        n = self.num_qubits
        for gate in self.gates:
            if isinstance(gate, Hadamard):
                idx = (gate.target,)
            elif isinstance(gate, ControlledPhase):
                idx = (gate.control, gate.target)
                if gate.control == gate.target:
                    raise ValueError("controlled phase needs distinct qubits")
                if not math.isfinite(gate.angle):
                    raise ValueError(f"gate angle must be finite, got {gate.angle}")
            elif isinstance(gate, Swap):
                idx = (gate.a, gate.b)
            else:
                raise ValueError(f"unknown gate {gate!r}")
            if any(not 0 <= q < n for q in idx):
                raise ValueError(f"gate {gate!r} addresses qubits outside [0, {n})")

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True, eq=False)
class DenseUnitary:
    """Dense matrix form of a register transform."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("dense unitary must be a square matrix")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


class Method(str, enum.Enum):
    DENSE = "dense"
    CIRCUIT = "circuit"


@lru_cache(maxsize=4)
def _dense_matrix(n: int) -> np.ndarray:
    N = 1 << n
    k = np.arange(N)
    mat = np.exp(2j * np.pi * np.outer(k, k) / N) / math.sqrt(N)
    mat.setflags(write=False)
    return mat


def qft_dense(config: RegisterConfig) -> DenseUnitary:
    """Forward transform as a dense matrix; entry (k, j) = exp(2*pi*i*k*j/N)/sqrt(N)."""
    if config.n > DENSE_MAX_QUBITS:
        raise ValueError(
            f"dense transform is capped at n = {DENSE_MAX_QUBITS}, got n = {config.n}"
        )
    return DenseUnitary(_dense_matrix(config.n))


def build_qft_circuit(config: RegisterConfig) -> GateCircuit:
    """Standard forward decomposition: per-qubit Hadamard plus controlled
    phases of angle 2*pi/2**k, then a qubit-reversal swap network."""
    n = config.n
    gates: list[Gate] = []
    for target in range(n):
        gates.append(Hadamard(target))
        for control in range(target + 1, n):
            gates.append(
                ControlledPhase(control, target, 2.0 * np.pi / (1 << (control - target + 1)))
            )
    for q in range(n // 2):
        gates.append(Swap(q, n - 1 - q))
    return GateCircuit(n, tuple(gates))


def build_inverse_qft_circuit(config: RegisterConfig) -> GateCircuit:
    """Inverse decomposition: the forward gate list reversed with negated angles."""
    forward = build_qft_circuit(config)
    inverse: list[Gate] = []
    for gate in reversed(forward.gates):
        if isinstance(gate, ControlledPhase):
            inverse.append(ControlledPhase(gate.control, gate.target, -gate.angle))
        else:
            inverse.append(gate)
    return GateCircuit(config.n, tuple(inverse))


def apply_circuit(circuit: GateCircuit, state: np.ndarray) -> np.ndarray:
    """Apply a gate circuit to a length-2**n statevector (or an array whose
    trailing axes are batch dimensions)."""
    n = circuit.num_qubits
    N = 1 << n
    arr = np.array(state, dtype=np.complex128)
    if arr.shape[0] != N:
        raise ValueError(f"state has dimension {arr.shape[0]}, circuit expects {N}")
    batch = arr.shape[1:]
    t = arr.reshape((2,) * n + batch)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for gate in circuit.gates:
        if isinstance(gate, Hadamard):
            x0 = t.take(0, axis=gate.target)
            x1 = t.take(1, axis=gate.target)
            t = np.stack(((x0 + x1) * inv_sqrt2, (x0 - x1) * inv_sqrt2), axis=gate.target)
        elif isinstance(gate, ControlledPhase):
            idx: list[object] = [slice(None)] * t.ndim
            idx[gate.control] = 1
            idx[gate.target] = 1
            t = t.copy()
            t[tuple(idx)] *= cmath.exp(1j * gate.angle)
        else:  # Swap
            t = np.swapaxes(t, gate.a, gate.b)
    return np.ascontiguousarray(t).reshape((N,) + batch)


def circuit_to_dense(circuit: GateCircuit) -> np.ndarray:
    """Compose a circuit into its dense matrix by acting on identity columns."""
    N = 1 << circuit.num_qubits
    return apply_circuit(circuit, np.eye(N, dtype=np.complex128))


def qft_apply(
    state: AmplitudeVector, config: RegisterConfig, method: Method = Method.DENSE
) -> AmplitudeVector:
    """Forward transform of an amplitude vector."""
    vec = _checked_vector(state, config)
    if method is Method.DENSE:
        out = qft_dense(config).entries @ vec
    else:
        out = apply_circuit(build_qft_circuit(config), vec)
    return AmplitudeVector(out, Basis.TILDE)


def inverse_qft_apply(
    state: AmplitudeVector, config: RegisterConfig, method: Method = Method.DENSE
) -> AmplitudeVector:
    """Inverse transform; on the prepared clock state this yields the vector
    of readout amplitudes over outcome indices."""
    vec = _checked_vector(state, config)
    if method is Method.DENSE:
        # The forward matrix is symmetric, so U^dagger x = conj(U @ conj(x)).
        mat = qft_dense(config).entries
        out = np.conj(mat @ np.conj(vec))
    else:
        out = apply_circuit(build_inverse_qft_circuit(config), vec)
    return AmplitudeVector(out, Basis.COMPUTATIONAL)


def _checked_vector(state: AmplitudeVector, config: RegisterConfig) -> np.ndarray:
    if state.dimension != config.dimension:
        raise ValueError(
            f"state dimension {state.dimension} does not match register dimension "
            f"{config.dimension}"
        )
    return state.entries
