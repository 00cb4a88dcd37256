"""Brute-force dense state-vector simulator: the ground-truth oracle.

Deliberately shares no gate-matrix code with the symbolic backends; the two
gate tables are compared entry-wise in the test suite instead.  Capped at 24
qubits because the vector is materialized in full.
"""

from __future__ import annotations

import numpy as np

from .api import ConfigurationError, Gate, register_backend
from .numerics import PrecisionConfig

MAX_DENSE_QUBITS = 24

_SQ2 = 1.0 / np.sqrt(2.0)


def _phase(t: float) -> complex:
    return complex(np.exp(1j * np.pi * t))


def _fixed_gates() -> dict[str, np.ndarray]:
    h = np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2
    table = {
        "i": np.eye(2, dtype=complex),
        "h": h,
        "x": np.array([[0, 1], [1, 0]], dtype=complex),
        "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "z": np.diag([1, -1]).astype(complex),
        "s": np.diag([1, 1j]).astype(complex),
        "sdg": np.diag([1, -1j]).astype(complex),
        "t": np.diag([1, _phase(0.25)]).astype(complex),
        "tdg": np.diag([1, _phase(-0.25)]).astype(complex),
        "cz": np.diag([1, 1, 1, -1]).astype(complex),
        "iswap": np.array(
            [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex
        ),
    }
    cx = np.zeros((4, 4), dtype=complex)
    for c in range(4):
        cx[c ^ 1 if c & 2 else c, c] = 1
    table["cx"] = cx
    swap = np.zeros((4, 4), dtype=complex)
    for c in range(4):
        swap[((c & 1) << 1) | (c >> 1), c] = 1
    table["swap"] = swap
    cswap = np.zeros((8, 8), dtype=complex)
    for c in range(8):
        r = 4 | ((c & 1) << 1) | ((c >> 1) & 1) if c & 4 else c
        cswap[r, c] = 1
    table["cswap"] = cswap
    ccx = np.zeros((8, 8), dtype=complex)
    for c in range(8):
        ccx[c ^ 1 if (c & 6) == 6 else c, c] = 1
    table["ccx"] = ccx
    return table


_FIXED = _fixed_gates()


def dense_gate_matrix(kind: str, angle=None) -> np.ndarray:
    """Unitary of one gate over its own targets, first target = MSB."""
    if kind == "p":
        return np.diag([1, _phase(angle)]).astype(complex)
    if kind == "cp":
        return np.diag([1, 1, 1, _phase(angle)]).astype(complex)
    return _FIXED[kind].copy()


class DenseSimulator:
    """Literal 2**n amplitude array with qubit 0 as the most-significant bit."""

    kind = "dense"

    def __init__(self, num_qubits: int, precision: PrecisionConfig | None = None):
        if num_qubits > MAX_DENSE_QUBITS:
            raise ConfigurationError(
                "dense backend capped at %d qubits" % MAX_DENSE_QUBITS
            )
        self.num_qubits = num_qubits
        # Arithmetic stays complex128 regardless; the config only feeds
        # tolerance defaults so dense answers line up with symbolic ones.
        self.precision = precision or PrecisionConfig()

    def initial_state(self) -> np.ndarray:
        state = np.zeros(1 << self.num_qubits, dtype=complex)
        state[0] = 1.0
        return state

    def from_amplitudes(self, amplitudes) -> np.ndarray:
        state = np.asarray([complex(a) for a in amplitudes], dtype=complex)
        if state.shape != (1 << self.num_qubits,):
            raise ValueError("amplitude vector has wrong length")
        return state

    def apply(self, state: np.ndarray, gate: Gate) -> np.ndarray:
        n = self.num_qubits
        targets = gate.targets
        u = dense_gate_matrix(gate.kind, gate.angle)
        k = len(targets)
        tensor = state.reshape((2,) * n)
        moved = np.moveaxis(tensor, targets, range(k))
        shaped = moved.reshape(1 << k, -1)
        out = (u @ shaped).reshape((2,) * n)
        result = np.moveaxis(out, range(k), targets).reshape(-1).copy()
        norm = np.linalg.norm(result)
        assert abs(norm - 1.0) < 1e-10, "dense state norm drifted"
        return result

    def prob(self, state: np.ndarray, assignment: dict[int, int]) -> float:
        probs = np.abs(state.reshape((2,) * self.num_qubits)) ** 2
        idx = [slice(None)] * self.num_qubits
        for q, b in assignment.items():
            idx[q] = b
        return float(probs[tuple(idx)].sum())

    def counts(self, state: np.ndarray, p: float, tol: float) -> int:
        probs = np.abs(state) ** 2
        return int(np.count_nonzero(np.abs(probs - p) <= tol))

    def measure(self, state: np.ndarray, rng) -> str:
        probs = np.abs(state) ** 2
        cum = np.cumsum(probs)
        r = rng.random() * cum[-1]
        idx = int(np.searchsorted(cum, r, side="right"))
        idx = min(idx, len(state) - 1)
        while probs[idx] == 0.0:  # never report an out-of-support string
            idx = (idx + 1) % len(state)
        return format(idx, "0%db" % self.num_qubits)

    def amplitude(self, state: np.ndarray, index: int) -> complex:
        return complex(state[index])

    def node_count(self, state: np.ndarray) -> int:
        return int(state.size)


def dense_probabilities(state) -> np.ndarray:
    """All 2**n outcome probabilities of a dense payload."""
    return np.abs(np.asarray(state)) ** 2


register_backend("dense", DenseSimulator)
