"""Superpose three data qubits, fold their parity onto a fourth, and check
the parity qubit's marginals."""

import symsim_bindings

epsilon = 1e-8

numQubits = 4
qc = symsim_bindings.QuantumState("BDD", numQubits)
for i in range(0, numQubits - 1):
    qc.h(i)

for i in range(0, numQubits - 1):
    qc.cx(i, 3)

qubit_mapping_1 = {}
qubit_mapping_1[3] = 1
assert abs(qc.prob(qubit_mapping_1) - 0.5) < epsilon

qubit_mapping_2 = {}
qubit_mapping_2[2] = 1
qubit_mapping_2[3] = 1
assert abs(qc.prob(qubit_mapping_2) - 0.25) < epsilon

print("ok")
