"""The backend contract: state creation, seventeen gates, three queries.

Every representation registers a simulator class here.  A backend provides
``initial_state``, gate application through symbolic matrix-vector
multiplication, and the three exact queries (``prob``, ``measure``,
``measurement_counts``).  The free functions at the bottom are the public
surface; they resolve the backend through the registry so user code never
touches a concrete simulator class.

Conventions fixed here for the whole package:

* qubit 0 is the most-significant bit of a basis index;
* gate angles are in half-turns (``p(t)`` applies ``exp(i*pi*t)`` to |1>),
  see :mod:`symsim.numerics`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .numerics import PrecisionConfig

GATE_ARITY = {
    "i": 1,
    "h": 1,
    "x": 1,
    "y": 1,
    "z": 1,
    "s": 1,
    "sdg": 1,
    "t": 1,
    "tdg": 1,
    "p": 1,
    "cx": 2,
    "cz": 2,
    "cp": 2,
    "swap": 2,
    "iswap": 2,
    "cswap": 3,
    "ccx": 3,
}

GATE_KINDS = tuple(GATE_ARITY)

ANGLED_GATES = frozenset({"p", "cp"})


class ConfigurationError(Exception):
    """A backend cannot be configured as requested (e.g. unsupported n)."""


@dataclass(frozen=True)
class Gate:
    """One gate application: kind, target qubits, optional angle.

    ``targets`` are in the gate's own order (control first for cx/cz/cp,
    controls first for ccx, control then the two swapped qubits for cswap).
    ``angle`` is in half-turns and allowed only for p and cp.
    """

    kind: str
    targets: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_ARITY:
            raise ValueError("unknown gate kind %r" % (self.kind,))
        targets = tuple(int(q) for q in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(targets) != GATE_ARITY[self.kind]:
            raise ValueError(
                "gate %s takes %d target(s), got %d"
                % (self.kind, GATE_ARITY[self.kind], len(targets))
            )
        if len(set(targets)) != len(targets):
            raise ValueError("gate targets must be pairwise distinct")
        if any(q < 0 for q in targets):
            raise ValueError("gate targets must be non-negative")
        if (self.angle is not None) != (self.kind in ANGLED_GATES):
            if self.kind in ANGLED_GATES:
                raise ValueError("gate %s requires an angle" % self.kind)
            raise ValueError("gate %s takes no angle" % self.kind)
        if self.angle is not None:
            object.__setattr__(self, "angle", float(self.angle))

    def validate_for(self, num_qubits: int):
        for q in self.targets:
            if q >= num_qubits:
                raise ValueError(
                    "qubit index %d out of range for %d qubits" % (q, num_qubits)
                )


def _permutation_rows(arity: int, image: Callable[[int], int], arith):
    dim = 1 << arity
    zero, one = arith.zero, arith.one
    rows = [[zero] * dim for _ in range(dim)]
    for c in range(dim):
        rows[image(c)][c] = one
    return tuple(tuple(r) for r in rows)


def gate_unitary(kind: str, angle, arith):
    """Small unitary of a gate kind over its own targets.

    Entry ``[r][c]`` maps input basis ``c`` to output basis ``r`` where the
    first listed target is the most-significant bit of both indices.  Values
    are produced at the arithmetic's precision, never cached across
    precision configurations.
    """
    zero, one = arith.zero, arith.one
    minus_one = arith.neg(one)
    if kind == "i":
        return ((one, zero), (zero, one))
    if kind == "h":
        c = arith.sqrt_half()
        return ((c, c), (c, arith.neg(c)))
    if kind == "x":
        return ((zero, one), (one, zero))
    if kind == "y":
        im = arith.make(0, 1)
        return ((zero, arith.neg(im)), (im, zero))
    if kind == "z":
        return ((one, zero), (zero, minus_one))
    if kind == "s":
        return ((one, zero), (zero, arith.make(0, 1)))
    if kind == "sdg":
        return ((one, zero), (zero, arith.make(0, -1)))
    if kind == "t":
        return ((one, zero), (zero, arith.phase_halfturns(0.25)))
    if kind == "tdg":
        return ((one, zero), (zero, arith.phase_halfturns(-0.25)))
    if kind == "p":
        return ((one, zero), (zero, arith.phase_halfturns(angle)))
    if kind == "cx":
        return _permutation_rows(2, lambda b: b ^ 1 if b & 2 else b, arith)
    if kind == "cz":
        return (
            (one, zero, zero, zero),
            (zero, one, zero, zero),
            (zero, zero, one, zero),
            (zero, zero, zero, minus_one),
        )
    if kind == "cp":
        ph = arith.phase_halfturns(angle)
        return (
            (one, zero, zero, zero),
            (zero, one, zero, zero),
            (zero, zero, one, zero),
            (zero, zero, zero, ph),
        )
    if kind == "swap":
        return _permutation_rows(2, lambda b: ((b & 1) << 1) | (b >> 1), arith)
    if kind == "iswap":
        im = arith.make(0, 1)
        return (
            (one, zero, zero, zero),
            (zero, zero, im, zero),
            (zero, im, zero, zero),
            (zero, zero, zero, one),
        )
    if kind == "cswap":
        def cswap_image(b):
            if b & 4:
                return 4 | ((b & 1) << 1) | ((b >> 1) & 1)
            return b

        return _permutation_rows(3, cswap_image, arith)
    if kind == "ccx":
        return _permutation_rows(3, lambda b: b ^ 1 if (b & 6) == 6 else b, arith)
    raise ValueError("unknown gate kind %r" % (kind,))


def validate_assignment(assignment: Mapping[int, int], num_qubits: int) -> dict[int, int]:
    out = {}
    for q, b in assignment.items():
        q = int(q)
        b = int(b)
        if not 0 <= q < num_qubits:
            raise ValueError("qubit index %d out of range" % q)
        if b not in (0, 1):
            raise ValueError("assignment values must be 0 or 1")
        out[q] = b
    return out


def bits_to_index(bits, num_qubits: int) -> int:
    """Basis index of a bit sequence with qubit 0 as the most-significant bit."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def index_to_bits(index: int, num_qubits: int) -> tuple[int, ...]:
    return tuple((index >> (num_qubits - 1 - q)) & 1 for q in range(num_qubits))


@dataclass(frozen=True)
class QuantumState:
    """Backend-tagged immutable handle to a diagram-represented state vector.

    Gate application returns a new handle; the old one stays valid and all
    queries on it keep answering for the pre-gate state.
    """

    kind: str
    num_qubits: int
    simulator: object = field(repr=False)
    payload: object = field(repr=False)


_REGISTRY: dict[str, type] = {}


def register_backend(name: str, simulator_cls: type):
    _REGISTRY[name.lower()] = simulator_cls


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def resolve_backend(name: str) -> type:
    cls = _REGISTRY.get(name.lower())
    if cls is None:
        raise ConfigurationError(
            "unknown backend %r; available: %s" % (name, ", ".join(available_backends()))
        )
    return cls


def new_state(
    kind: str, num_qubits: int, precision: PrecisionConfig | None = None
) -> QuantumState:
    """All-zeros basis state on the named backend."""
    if num_qubits < 1:
        raise ConfigurationError("num_qubits must be >= 1")
    cls = resolve_backend(kind)
    sim = cls(num_qubits, precision)
    return QuantumState(sim.kind, num_qubits, sim, sim.initial_state())


def apply_gate(state: QuantumState, gate: Gate) -> QuantumState:
    gate.validate_for(state.num_qubits)
    payload = state.simulator.apply(state.payload, gate)
    return QuantumState(state.kind, state.num_qubits, state.simulator, payload)


def prob(state: QuantumState, assignment: Mapping[int, int]) -> float:
    assignment = validate_assignment(assignment, state.num_qubits)
    return state.simulator.prob(state.payload, assignment)


def measure(state: QuantumState, rng) -> str:
    """Sample one basis string; the state is not modified."""
    return state.simulator.measure(state.payload, rng)


def measurement_counts(state: QuantumState, p: float, tol: float | None = None) -> int:
    """Exact number of outcomes whose probability is within tol of p."""
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    if tol is None:
        tol = default_counts_tol(state)
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return state.simulator.counts(state.payload, p, tol)


def default_counts_tol(state: QuantumState) -> float:
    return float(state.simulator.precision.leaf_epsilon) * (1 << 10)


def amplitude(state: QuantumState, index: int) -> complex:
    """Amplitude of one basis index (diagnostic surface, not a paper query)."""
    if not 0 <= index < (1 << state.num_qubits):
        raise ValueError("basis index out of range")
    return state.simulator.amplitude(state.payload, index)


def state_node_count(state: QuantumState) -> int:
    return state.simulator.node_count(state.payload)


def state_from_amplitudes(
    kind: str, amplitudes, precision: PrecisionConfig | None = None
) -> QuantumState:
    """Build a state directly from a 2**n amplitude vector (diagnostic)."""
    n = (len(amplitudes) - 1).bit_length()
    if len(amplitudes) != 1 << n or n < 1:
        raise ValueError("amplitude vector length must be a power of two >= 2")
    cls = resolve_backend(kind)
    sim = cls(n, precision)
    return QuantumState(sim.kind, n, sim, sim.from_amplitudes(amplitudes))
