"""Circuit IR and the line-oriented ``.qc`` text format.

Grammar::

    file    := line*
    line    := comment | blank | header | gate
    header  := "qubits" INT          # exactly once, before any gate
    gate    := MNEMONIC INT+ [ANGLE] # one of the 17 gate mnemonics
    comment := "#" to end of line (also allowed after a gate)

Qubit indices are decimal; angles are decimal reals in half-turns (an angle
``t`` applies the phase ``exp(i*pi*t)``), so ``cp a b 0.5`` is the S-type
controlled phase.  Every parse failure is reported as a
:class:`CircuitSyntaxError` carrying a 1-based line number; the parser never
raises anything else, no matter the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .api import (
    ANGLED_GATES,
    GATE_ARITY,
    Gate,
    QuantumState,
    apply_gate,
    new_state,
)
from .numerics import PrecisionConfig


class CircuitSyntaxError(Exception):
    def __init__(self, line: int, reason: str):
        super().__init__("line %d: %s" % (line, reason))
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    ops: tuple[Gate, ...]

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        for op in self.ops:
            op.validate_for(self.num_qubits)


def parse(text: str) -> Circuit:
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    num_qubits = None
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        word = tokens[0].lower()
        if word == "qubits":
            if num_qubits is not None:
                raise CircuitSyntaxError(lineno, "duplicate qubits header")
            if len(tokens) != 2:
                raise CircuitSyntaxError(lineno, "qubits header takes one count")
            try:
                num_qubits = int(tokens[1])
            except ValueError:
                raise CircuitSyntaxError(
                    lineno, "qubit count %r is not an integer" % tokens[1]
                ) from None
            if num_qubits < 1:
                raise CircuitSyntaxError(lineno, "qubit count must be positive")
            continue
        if num_qubits is None:
            raise CircuitSyntaxError(lineno, "missing qubits header before gates")
        if word not in GATE_ARITY:
            raise CircuitSyntaxError(lineno, "unknown mnemonic %r" % tokens[0])
        arity = GATE_ARITY[word]
        needs_angle = word in ANGLED_GATES
        expected = 1 + arity + (1 if needs_angle else 0)
        if len(tokens) != expected:
            if needs_angle and len(tokens) == 1 + arity:
                raise CircuitSyntaxError(lineno, "gate %s is missing its angle" % word)
            if not needs_angle and len(tokens) == 2 + arity:
                extra = tokens[-1]
                try:
                    int(extra)
                except ValueError:
                    raise CircuitSyntaxError(
                        lineno, "gate %s takes no angle" % word
                    ) from None
            raise CircuitSyntaxError(
                lineno,
                "gate %s takes %d qubit index(es), got %d token(s)"
                % (word, arity, len(tokens) - 1),
            )
        try:
            targets = tuple(int(tok) for tok in tokens[1 : 1 + arity])
        except ValueError:
            raise CircuitSyntaxError(lineno, "qubit index must be an integer") from None
        angle = None
        if needs_angle:
            try:
                angle = float(tokens[1 + arity])
            except ValueError:
                raise CircuitSyntaxError(
                    lineno, "angle %r is not a number" % tokens[1 + arity]
                ) from None
            if angle != angle or angle in (float("inf"), float("-inf")):
                raise CircuitSyntaxError(lineno, "angle must be finite")
        for q in targets:
            if q < 0 or q >= num_qubits:
                raise CircuitSyntaxError(
                    lineno, "qubit index %d out of range (n=%d)" % (q, num_qubits)
                )
        if len(set(targets)) != len(targets):
            raise CircuitSyntaxError(lineno, "gate targets must be distinct")
        ops.append(Gate(word, targets, angle))
    if num_qubits is None:
        raise CircuitSyntaxError(1, "missing qubits header")
    return Circuit(num_qubits, tuple(ops))


def serialize(circuit: Circuit) -> str:
    lines = ["qubits %d" % circuit.num_qubits]
    for op in circuit.ops:
        parts = [op.kind] + [str(q) for q in op.targets]
        if op.angle is not None:
            parts.append(repr(op.angle))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def load(path) -> Circuit:
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        return parse(fh.read())


def run(
    circuit: Circuit, kind: str, precision: PrecisionConfig | None = None
) -> QuantumState:
    """new_state then every gate in program order (no batching)."""
    state = new_state(kind, circuit.num_qubits, precision)
    for op in circuit.ops:
        state = apply_gate(state, op)
    return state
