"""Symbolic quantum-circuit simulation over decision-diagram backends.

Three canonical diagram representations (multi-terminal BDDs, weighted
BDDs and CFLOBDDs) plus a brute-force dense oracle sit behind one backend
contract: state creation, seventeen gate kinds, and three exact queries
(outcome probability, sampling, outcome counting).
"""

from . import backends_loaded  # noqa: F401
from .api import (
    ConfigurationError,
    Gate,
    QuantumState,
    amplitude,
    apply_gate,
    available_backends,
    measure,
    measurement_counts,
    new_state,
    prob,
    register_backend,
    state_from_amplitudes,
    state_node_count,
)
from .circuits import Circuit, CircuitSyntaxError, load, parse, run, serialize
from .numerics import PrecisionConfig, amp_add, amp_approx_eq, amp_mul

__all__ = [
    "Circuit",
    "CircuitSyntaxError",
    "ConfigurationError",
    "Gate",
    "PrecisionConfig",
    "QuantumState",
    "amp_add",
    "amp_approx_eq",
    "amp_mul",
    "amplitude",
    "apply_gate",
    "available_backends",
    "load",
    "measure",
    "measurement_counts",
    "new_state",
    "parse",
    "prob",
    "register_backend",
    "run",
    "serialize",
    "state_from_amplitudes",
    "state_node_count",
]

__version__ = "0.1.0"
