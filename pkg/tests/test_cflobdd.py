import math
import random

import numpy as np
import pytest

from symsim.api import ConfigurationError, Gate
from symsim.cflobdd import CflobddSimulator
from symsim.dense import DenseSimulator

from conftest import random_circuit


def run(sim, gates):
    st = sim.initial_state()
    for g in gates:
        st = sim.apply(st, g)
    return st


def all_bits(nvars):
    for idx in range(1 << nvars):
        yield [(idx >> (nvars - 1 - i)) & 1 for i in range(nvars)]


def test_rejects_non_power_of_two():
    with pytest.raises(ConfigurationError):
        CflobddSimulator(3)
    with pytest.raises(ConfigurationError):
        CflobddSimulator(12)


def test_constant():
    sim = CflobddSimulator(4)
    c = sim.constant(2, sim.arith.zero)
    for bits in all_bits(4):
        assert sim.eval_bits(c, bits) == 0
    c2 = sim.constant(2, sim.arith.zero)
    assert c.grouping is c2.grouping and c.values == c2.values
    # one grouping per level
    assert sim.node_count(c) == 3


def test_basis_state():
    sim = CflobddSimulator(4)
    for index in (0, 5, 15):
        v = sim.basis_state(index)
        sim.check_invariants(v)
        for idx, bits in enumerate(all_bits(4)):
            assert sim.eval_bits(v, bits) == (1 if idx == index else 0)
    assert abs(sim.prob(sim.basis_state(0), {q: 0 for q in range(4)}) - 1) < 1e-12


def test_basis_state_large_is_logarithmic():
    sim = CflobddSimulator(4096)
    v = sim.initial_state()
    assert sim.node_count(v) <= 4 * 12 + 4


def test_pair_product_add_identities(rng):
    sim = CflobddSimulator(4)
    zero = sim.constant(2, sim.arith.zero)
    for _ in range(5):
        vals = [complex(rng.choice([0, 0.5, -0.5, 0.25]), 0) for _ in range(16)]
        f = sim.from_amplitudes(vals)
        g = sim.combine(f, zero, "add")
        assert g.grouping is f.grouping and g.values == f.values


def test_pointwise_exhaustive_level2(rng):
    sim = CflobddSimulator(4)
    pool = [0, 0.5, -0.5, 1.0, 0.25]
    for _ in range(8):
        va = [complex(rng.choice(pool), rng.choice(pool)) for _ in range(16)]
        vb = [complex(rng.choice(pool), rng.choice(pool)) for _ in range(16)]
        fa, fb = sim.from_amplitudes(va), sim.from_amplitudes(vb)
        fsum = sim.combine(fa, fb, "add")
        fprod = sim.combine(fa, fb, "mul")
        sim.check_invariants(fsum)
        sim.check_invariants(fprod)
        for idx, bits in enumerate(all_bits(4)):
            assert sim.eval_bits(fsum, bits) == va[idx] + vb[idx]
            assert sim.eval_bits(fprod, bits) == va[idx] * vb[idx]


def test_add_associativity_canonical(rng):
    sim = CflobddSimulator(4)
    pool = [0, 0.5, -0.5, 0.25, 1.0]
    for _ in range(5):
        vecs = [
            sim.from_amplitudes(
                [complex(rng.choice(pool), 0) for _ in range(16)]
            )
            for _ in range(3)
        ]
        f, g, h = vecs
        left = sim.combine(sim.combine(f, g, "add"), h, "add")
        right = sim.combine(f, sim.combine(g, h, "add"), "add")
        assert left.grouping is right.grouping
        assert left.values == right.values


def test_kron():
    sim = CflobddSimulator(4)
    rng = random.Random(3)
    one = sim.constant(1, sim.arith.one)
    for _ in range(5):
        va = [complex(rng.choice([0.5, -0.5, 0.25]), 0) for _ in range(4)]
        vb = [complex(rng.choice([0.5, 0, 1.0]), 0) for _ in range(4)]
        fa = sim.vector(va)
        fb = sim.vector(vb)
        k = sim.kron(fa, fb)
        want = np.kron(va, vb)
        for idx, bits in enumerate(all_bits(4)):
            assert complex(sim.eval_bits(k, bits)) == want[idx]
        lifted = sim.kron(one, fb)
        for idx, bits in enumerate(all_bits(4)):
            assert complex(sim.eval_bits(lifted, bits)) == vb[idx % 4]
    # kron of basis states is the concatenated basis state
    z = sim.vector([0, 1, 0, 0])  # |01> over two qubits
    k = sim.kron(sim.vector([1, 0, 0, 0]), z)
    assert complex(sim.eval_bits(k, [0, 0, 0, 1])) == 1


def test_matvec_hadamard_column():
    """H (matrix) times |1>: amplitudes (1/sqrt2, -1/sqrt2)."""
    sim = CflobddSimulator(1)
    h = sim.gate_matrix(Gate("h", (0,)))
    v1 = sim.basis_state(1)
    w = sim.matvec(h, v1)
    s = 1 / math.sqrt(2)
    assert abs(complex(sim.eval_bits(w, [0])) - s) < 1e-15
    assert abs(complex(sim.eval_bits(w, [1])) + s) < 1e-15
    ident = sim.identity_matrix(1)
    w2 = sim.matvec(ident, w)
    assert w2.grouping is w.grouping and w2.values == w.values


def test_matvec_random_two_qubit_vs_dense(rng):
    sim = CflobddSimulator(2)
    for kind in ("cx", "cz", "swap", "iswap", "cp"):
        angle = 0.375 if kind == "cp" else None
        vals = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(4)]
        norm = math.sqrt(sum(abs(v) ** 2 for v in vals))
        vals = [v / norm for v in vals]
        v = sim.from_amplitudes(vals)
        w = sim.matvec(sim.gate_matrix(Gate(kind, (0, 1), angle)), v)
        dsim = DenseSimulator(2)
        dst = dsim.apply(dsim.from_amplitudes(vals), Gate(kind, (0, 1), angle))
        for idx, bits in enumerate(all_bits(2)):
            assert abs(complex(sim.eval_bits(w, bits)) - dst[idx]) < 1e-12


def test_path_count_constant_and_conservation():
    sim = CflobddSimulator(8)
    c = sim.constant(3, sim.arith.make(0.125, 0))
    assert sim.path_counts(c.grouping) == (256,)
    rng = random.Random(9)
    vals = [complex(rng.choice([0, 0.25, -0.25]), 0) for _ in range(256)]
    v = sim.from_amplitudes(vals)
    assert sum(sim.path_counts(v.grouping)) == 256


def test_ghz_structure_and_counts():
    for n in (8, 64, 1024):
        sim = CflobddSimulator(n)
        st = run(sim, [Gate("h", (0,))] + [Gate("cx", (0, i)) for i in range(1, n)])
        sim.check_invariants(st)
        counts = dict(zip(st.values, sim.path_counts(st.grouping)))
        support = {
            cnt for val, cnt in counts.items() if abs(complex(val)) > 1e-6
        }
        assert support == {2}
        total = sum(counts.values())
        assert total == 1 << n
        # grouping count grows logarithmically
        assert sim.node_count(st) <= 4 * math.log2(n) + 8


def test_restrict():
    sim = CflobddSimulator(4)
    rng = random.Random(10)
    vals = [complex(rng.uniform(-1, 1), 0) for _ in range(16)]
    norm = math.sqrt(sum(abs(v) ** 2 for v in vals))
    vals = [v / norm for v in vals]
    v = sim.from_amplitudes(vals)
    r = sim.restrict(v, {})
    assert r.grouping is v.grouping and r.values == v.values
    # restrict to a total assignment: constant equal to f(a)
    target = {0: 1, 1: 0, 2: 1, 3: 1}
    rt = sim.restrict(v, target)
    assert rt.grouping.num_exits == 1
    assert rt.values[0] == sim.eval_bits(v, [1, 0, 1, 1])
    # partial restrict agrees with the dense marginal
    dsim = DenseSimulator(4)
    dst = dsim.from_amplitudes(vals)
    for m in ({1: 1}, {0: 0, 2: 1}, {3: 0}):
        assert abs(sim.prob(v, m) - dsim.prob(dst, m)) < 1e-12


def test_structural_sharing_witness():
    """The H matrix's level-0 fork is called from both A and B sides."""
    sim = CflobddSimulator(1)
    m = sim.gate_matrix(Gate("h", (0,)))
    g = m.grouping
    refs = (1 if g.a is sim.fork else 0) + sum(1 for b in g.b if b is sim.fork)
    assert refs >= 2


def test_canonicity_exhaustive_small(rng):
    """Semantic equality (exhaustive eval) iff same (grouping, values)."""
    sim = CflobddSimulator(4)
    pool = [0, 0.5, -0.5, 0.25]
    seen = {}
    for _ in range(60):
        vals = tuple(complex(rng.choice(pool), 0) for _ in range(16))
        v = sim.from_amplitudes(vals)
        key = tuple(complex(sim.eval_bits(v, bits)) for bits in all_bits(4))
        handle = (id(v.grouping), v.values)
        if key in seen:
            assert seen[key] == handle
        seen[key] = handle


def test_cross_backend_full_circuits(rng):
    for n in (2, 4, 8):
        circuit = random_circuit(rng, n, 15)
        csim, dsim = CflobddSimulator(n), DenseSimulator(n)
        cst = run(csim, circuit.ops)
        csim.check_invariants(cst)
        dst = dsim.initial_state()
        for g in circuit.ops:
            dst = dsim.apply(dst, g)
        for idx, bits in enumerate(all_bits(n)):
            assert abs(complex(sim_eval(csim, cst, bits)) - dst[idx]) < 1e-9


def sim_eval(sim, st, bits):
    return sim.eval_bits(st, bits)


def test_measure_support_and_determinism():
    sim = CflobddSimulator(2)
    st = run(sim, [Gate("h", (0,)), Gate("cx", (0, 1))])
    a = [sim.measure(st, random.Random(5)) for _ in range(20)]
    b = [sim.measure(st, random.Random(5)) for _ in range(20)]
    assert a == b
    assert set(a) <= {"00", "11"}
