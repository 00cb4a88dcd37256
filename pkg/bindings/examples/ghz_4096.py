"""Build a 4096-qubit GHZ state on the CFLOBDD backend and verify that the
all-ones outcome is measured with 50% probability."""

import symsim_bindings

epsilon = 1e-8

# number of qubits in the quantum state
numQubits = 2 ** 12
# initialize the quantum state
qs = symsim_bindings.QuantumState("CFLOBDD", numQubits)
qs.h(0)  # apply a Hadamard gate to qubit 0
for i in range(1, numQubits):
    qs.cx(0, i)  # apply a CNOT gate from qubit 0 to qubit i

qubit_mapping = {}  # map from qubit number -> desired outcome
for i in range(0, numQubits):
    qubit_mapping[i] = 1

# query the probability of the outcome encoded in the qubit mapping
prob = qs.prob(qubit_mapping)
if abs(prob - 0.5) < epsilon:
    print("Circuit is correct")
else:
    print("Incorrect circuit")
