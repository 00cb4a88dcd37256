"""Scripting bindings: a mutable QuantumState with one method per gate.

The object wraps a symsim state handle and delegates every call 1:1 to the
core; no simulation logic lives here.  Typical use::

    from symsim_bindings import QuantumState

    qs = QuantumState("CFLOBDD", 16)
    qs.h(0)
    for i in range(1, 16):
        qs.cx(0, i)
    print(qs.prob({i: 1 for i in range(16)}))
"""

from __future__ import annotations

import random

import symsim
from symsim import Gate, PrecisionConfig

__all__ = ["QuantumState"]


class QuantumState:
    """One quantum register on a named backend, mutated gate by gate.

    ``seed`` fixes the sampling stream used by :meth:`measure`; leave it
    unset for nondeterministic sampling.  Angles are in half-turns, as in
    the core (``cp(a, b, 0.5)`` applies the phase i).
    """

    def __init__(self, backend: str, num_qubits: int, precision_bits: int | None = None,
                 seed: int | None = None):
        precision = None
        if precision_bits is not None:
            precision = PrecisionConfig(mantissa_bits=precision_bits)
        self._state = symsim.new_state(backend, num_qubits, precision)
        self._rng = random.Random(seed)

    @property
    def backend(self) -> str:
        return self._state.kind

    @property
    def num_qubits(self) -> int:
        return self._state.num_qubits

    def _apply(self, kind, targets, angle=None):
        self._state = symsim.apply_gate(self._state, Gate(kind, targets, angle))

    # gates -----------------------------------------------------------------

    def i(self, q):
        self._apply("i", (q,))

    def h(self, q):
        self._apply("h", (q,))

    def x(self, q):
        self._apply("x", (q,))

    def y(self, q):
        self._apply("y", (q,))

    def z(self, q):
        self._apply("z", (q,))

    def s(self, q):
        self._apply("s", (q,))

    def sdg(self, q):
        self._apply("sdg", (q,))

    def t(self, q):
        self._apply("t", (q,))

    def tdg(self, q):
        self._apply("tdg", (q,))

    def p(self, q, theta):
        self._apply("p", (q,), theta)

    def cx(self, control, target):
        self._apply("cx", (control, target))

    def cz(self, a, b):
        self._apply("cz", (a, b))

    def cp(self, a, b, theta):
        self._apply("cp", (a, b), theta)

    def swap(self, a, b):
        self._apply("swap", (a, b))

    def iswap(self, a, b):
        self._apply("iswap", (a, b))

    def cswap(self, control, a, b):
        self._apply("cswap", (control, a, b))

    def ccx(self, c1, c2, target):
        self._apply("ccx", (c1, c2, target))

    # queries ----------------------------------------------------------------

    def prob(self, qubit_mapping) -> float:
        return symsim.prob(self._state, qubit_mapping)

    def measure(self) -> str:
        return symsim.measure(self._state, self._rng)

    def measurement_counts(self, p, tol=None) -> int:
        return symsim.measurement_counts(self._state, p, tol)
