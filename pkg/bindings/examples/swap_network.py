"""A controlled-swap network on the weighted-BDD backend; checks one
marginal of the permuted register."""

import symsim_bindings

epsilon = 1e-8

numQubits = 8
qc = symsim_bindings.QuantumState("WBDD", numQubits)

for i in range(0, 4):
    qc.h(i)

qc.x(7)

qc.cswap(0, 6, 7)
qc.cswap(1, 5, 6)
qc.swap(6, 7)
qc.cswap(2, 4, 5)
qc.swap(4, 5)
qc.cswap(3, 4, 7)

qubit_mapping = {}
qubit_mapping[4] = 0
qubit_mapping[5] = 1
qubit_mapping[6] = 0
qubit_mapping[7] = 0
assert abs(qc.prob(qubit_mapping) - 0.125) < epsilon

print("ok")
