"""Controlled phases between Hadamard layers; checks the interference
pattern on the last two qubits."""

import symsim_bindings

epsilon = 1e-8

numQubits = 3
qc = symsim_bindings.QuantumState("BDD", numQubits)

for i in range(0, numQubits):
    qc.h(i)

qc.cp(0, 1, 0.25)  # controlled phase
qc.cp(1, 2, 0.5)   # controlled phase

for i in range(0, numQubits):
    qc.h(i)

qubit_mapping_1 = {}
qubit_mapping_1[1] = 1
qubit_mapping_1[2] = 1
assert abs(qc.prob(qubit_mapping_1) - 0.125) < epsilon

qubit_mapping_2 = {}
qubit_mapping_2[0] = 0
assert qc.prob(qubit_mapping_2) > 0.75

print("ok")
