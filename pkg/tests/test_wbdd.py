import math
import random

from symsim.api import Gate
from symsim.mtbdd import MtbddSimulator
from symsim.wbdd import WbddSimulator

from conftest import random_circuit


def run(sim, gates):
    st = sim.initial_state()
    for g in gates:
        st = sim.apply(st, g)
    return st


def test_normalize_extracts_common_factor():
    """Edges (1/sqrt2, t) and (-1/sqrt2, t) factor to 1/sqrt2 with (1, -1)."""
    sim = WbddSimulator(1)
    s = sim.manager.amp_rep(sim.arith.sqrt_half())
    w, node = sim.normalize(0, (s, sim.term), (sim.arith.neg(s), sim.term))
    assert w == s
    assert node.wlo == 1 and node.whi == -1
    assert node.lo is sim.term and node.hi is sim.term


def test_normalize_zero_low_rule():
    sim = WbddSimulator(1)
    w = sim.manager.amp_rep(sim.arith.make(0.5, 0.25))
    child = sim.term
    factor, node = sim.normalize(0, sim.zero_edge(), (w, child))
    assert factor == w
    assert node.wlo == 0 and node.lo is sim.term
    assert node.whi == 1 and node.hi is child


def test_normalize_idempotent():
    sim = WbddSimulator(1)
    s = sim.manager.amp_rep(sim.arith.sqrt_half())
    e1 = sim.normalize(0, (s, sim.term), (sim.arith.neg(s), sim.term))
    e2 = sim.normalize(0, (e1[0] * e1[1].wlo, e1[1].lo), (e1[0] * e1[1].whi, e1[1].hi))
    assert e1 == e2


def test_eval_hadamard_paper_example():
    """H: root weight 1/sqrt2 common to all paths; (1,1) path gives -1/sqrt2."""
    sim = WbddSimulator(1)
    m = sim.gate_matrix(Gate("h", (0,)))
    s = 1 / math.sqrt(2)
    assert abs(m[0] - s) < 1e-15
    assert abs(sim.eval_bits(m, {0: 1, 1: 1}) + s) < 1e-15
    assert abs(sim.eval_bits(m, {0: 0, 1: 0}) - s) < 1e-15


def test_eval_identity_off_diagonal():
    sim = WbddSimulator(1)
    m = sim.gate_matrix(Gate("i", (0,)))
    assert sim.eval_bits(m, {0: 0, 1: 1}) == 0


def test_matvec_h_on_zero_and_identity():
    sim = WbddSimulator(1)
    h = sim.gate_matrix(Gate("h", (0,)))
    v0 = sim.initial_state()
    v1 = sim.matvec(h, v0)
    s = 1 / math.sqrt(2)
    assert abs(v1[0] - s) < 1e-15  # root weight 1/sqrt2, uniform structure
    assert v1[1] is sim.term
    ident = sim.gate_matrix(Gate("i", (0,)))
    v2 = sim.matvec(ident, v1)
    assert v2 == v1
    v3 = sim.matvec(h, v1)
    assert v3 == v0


def test_cross_backend_random_circuits(rng):
    for _ in range(8):
        n = rng.choice([2, 3, 4, 5, 6])
        circuit = random_circuit(rng, n, 15)
        wsim, msim = WbddSimulator(n), MtbddSimulator(n)
        wst = run(wsim, circuit.ops)
        mst = run(msim, circuit.ops)
        wsim.check_invariants(wst)
        for idx in range(1 << n):
            wa = complex(wsim.amplitude(wst, idx))
            ma = complex(msim.amplitude(mst, idx))
            assert abs(wa - ma) < 1e-9


def test_node_probability_ghz():
    sim = WbddSimulator(3)
    st = run(sim, [Gate("h", (0,)), Gate("cx", (0, 1)), Gate("cx", (0, 2))])
    masses = sim.node_probability(st)
    assert masses[sim.term] == 1
    assert abs(sim.prob(st, {0: 1, 1: 1, 2: 1}) - 0.5) < 1e-12
    assert abs(sim.prob(st, {}) - 1.0) < 1e-12


def test_prob_basis_and_worked_example():
    sim = WbddSimulator(3)
    st = sim.basis_state(5)
    assert abs(sim.prob(st, {0: 1, 1: 0, 2: 1}) - 1.0) < 1e-12
    v = 1 / math.sqrt(6)
    st = sim.from_amplitudes([0.5, 0, 0.5, 0.5, 0, 0, 0.5, 0])
    assert abs(sim.prob(st, {1: 1, 2: 0}) - 0.5) < 1e-12
    st6 = sim.from_amplitudes([v, v, v, 0, v, v, v, 0])
    assert sim.counts(st6, 1 / 6, 1e-9) == 6


def test_norm_preserved_along_circuit(rng):
    sim = WbddSimulator(4)
    st = sim.initial_state()
    for g in random_circuit(rng, 4, 25).ops:
        st = sim.apply(st, g)
        assert abs(sim.prob(st, {}) - 1.0) < 1e-9


def test_normalization_invariant_after_every_op(rng):
    sim = WbddSimulator(3)
    st = sim.initial_state()
    for g in random_circuit(rng, 3, 20).ops:
        st = sim.apply(st, g)
        sim.check_invariants(st)


def test_measure_support():
    sim = WbddSimulator(3)
    st = sim.from_amplitudes([0.5, 0, 0.5, 0.5, 0, 0, 0.5, 0])
    rng = random.Random(4)
    seen = {sim.measure(st, rng) for _ in range(400)}
    assert seen == {"000", "010", "011", "110"}
