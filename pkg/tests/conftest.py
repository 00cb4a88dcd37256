import random

import pytest

from symsim.api import GATE_ARITY, GATE_KINDS, Gate
from symsim.circuits import Circuit

SYMBOLIC_BACKENDS = ("bdd", "wbdd", "cflobdd")
ALL_BACKENDS = SYMBOLIC_BACKENDS + ("dense",)


def random_circuit(rng: random.Random, num_qubits: int, depth: int,
                   kinds=GATE_KINDS) -> Circuit:
    """Seeded random circuit drawing from the given gate kinds."""
    usable = [k for k in kinds if GATE_ARITY[k] <= num_qubits]
    ops = []
    for _ in range(depth):
        kind = rng.choice(usable)
        targets = tuple(rng.sample(range(num_qubits), GATE_ARITY[kind]))
        angle = rng.uniform(-2.0, 2.0) if kind in ("p", "cp") else None
        ops.append(Gate(kind, targets, angle))
    return Circuit(num_qubits, tuple(ops))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
