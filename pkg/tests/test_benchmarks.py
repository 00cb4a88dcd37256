import math
import random

import pytest

import symsim
from symsim.benchmarks import (
    BENCHMARKS,
    BenchReport,
    bench_precision,
    bench_run,
    bv,
    circuit_for,
    constant_dj_oracle,
    dj,
    format_table,
    gf2_rank,
    ghz,
    grover,
    grover_iterations,
    make_oracle,
    qft,
    run_cell,
    simon,
    to_csv,
    verify_bv,
    verify_dj,
    verify_ghz,
    verify_grover,
    verify_qft,
    verify_simon_samples,
)
from symsim.circuits import parse, run, serialize


def run_dense(circuit):
    return run(circuit, "dense")


def test_oracles_are_pure_functions_of_seed():
    for alg in BENCHMARKS:
        a = make_oracle(alg, 8, 123)
        b = make_oracle(alg, 8, 123)
        c = make_oracle(alg, 8, 124)
        assert a == b
        if alg in ("bv", "dj", "simon", "grover"):
            assert a.secret != c.secret or alg == "dj"


def test_simon_zero_period_rejected():
    with pytest.raises(ValueError):
        from symsim.benchmarks import OracleSpec

        OracleSpec("simon", 4, "s", (0, 0, 0, 0))


def test_generated_circuits_roundtrip_and_norm():
    for alg in BENCHMARKS:
        oracle = make_oracle(alg, 6, 7)
        circuit = circuit_for(alg, 6, oracle)
        assert parse(serialize(circuit)) == circuit
        state = run_dense(circuit)
        assert abs(symsim.prob(state, {}) - 1.0) < 1e-9


def test_ghz_verifier_dense():
    state = run_dense(ghz(8))
    assert verify_ghz(state)
    rng = random.Random(0)
    for _ in range(30):
        bits = symsim.measure(state, rng)
        assert bits in ("0" * 8, "1" * 8)


def test_bv_verifier_dense():
    # all-zero secret: data register returns to zeros
    from symsim.benchmarks import OracleSpec

    oracle = OracleSpec("bv", 6, "manual", (0,) * 5)
    state = run_dense(bv(6, oracle))
    assert abs(symsim.prob(state, {i: 0 for i in range(5)}) - 1.0) < 1e-8
    for seed in range(5):
        oracle = make_oracle("bv", 8, seed)
        state = run_dense(bv(8, oracle))
        assert verify_bv(state, oracle)
        rng = random.Random(1)
        data = symsim.measure(state, rng)[:7]
        assert tuple(int(b) for b in data) == oracle.secret


def test_dj_verifier_dense():
    const = constant_dj_oracle(6, 0)
    assert verify_dj(run_dense(dj(6, const)), const)
    const1 = constant_dj_oracle(6, 1)
    assert verify_dj(run_dense(dj(6, const1)), const1)
    for seed in range(5):
        oracle = make_oracle("dj", 8, seed)
        assert oracle.secret[0] == "balanced"
        assert verify_dj(run_dense(dj(8, oracle)), oracle)


def test_simon_verifier_dense():
    from symsim.benchmarks import OracleSpec

    oracle = OracleSpec("simon", 3, "manual", (0, 1, 0))
    state = run_dense(simon(3, oracle))
    rng = random.Random(3)
    samples = [symsim.measure(state, rng) for _ in range(50)]
    assert verify_simon_samples(samples, oracle)
    bad = OracleSpec("simon", 3, "manual", (1, 1, 1))
    assert not verify_simon_samples(["100"], bad)
    # rank of the span reaches n-1
    oracle = make_oracle("simon", 4, 11)
    state = run_dense(simon(4, oracle))
    ys = [int(symsim.measure(state, rng)[:4], 2) for _ in range(100)]
    assert gf2_rank(ys) == 3


def test_qft_closed_form_dense():
    n = 4
    x = 0b1011
    ops = [("x %d" % q) for q in range(n) if (x >> (n - 1 - q)) & 1]
    circuit = parse(
        "qubits %d\n" % n + "\n".join(ops) + "\n" + serialize(qft(n)).split("\n", 1)[1]
    )
    state = run_dense(circuit)
    for k in range(1 << n):
        want = 2 ** (-n / 2) * complex(
            math.cos(2 * math.pi * x * k / 2**n), math.sin(2 * math.pi * x * k / 2**n)
        )
        assert abs(symsim.amplitude(state, k) - want) < 1e-9
    # uniform spectrum from the zero state
    assert verify_qft(run_dense(qft(6)))


def test_qft_inverse_restores_basis_state():
    n = 4
    x = 0b0110
    fwd = qft(n)
    inv_ops = []
    for g in reversed(fwd.ops):
        if g.kind == "cp":
            inv_ops.append(type(g)(g.kind, g.targets, -g.angle))
        else:
            inv_ops.append(g)
    prep = [type(fwd.ops[0])("x", (q,)) for q in range(n) if (x >> (n - 1 - q)) & 1]
    state = run_dense(
        type(fwd)(n, tuple(prep) + fwd.ops + tuple(inv_ops))
    )
    m = {q: (x >> (n - 1 - q)) & 1 for q in range(n)}
    assert abs(symsim.prob(state, m) - 1.0) < 1e-9


def test_grover_small_exact_and_verified():
    from symsim.benchmarks import grover_peak_iterations

    oracle = make_oracle("grover", 2, 5)
    assert grover_peak_iterations(2) == 1
    state = run_dense(grover(2, oracle))
    m = {q: oracle.secret[q] for q in range(2)}
    assert abs(symsim.prob(state, m) - 1.0) < 1e-8
    assert grover_iterations(8) == 13
    assert grover_peak_iterations(8) == 12
    for seed in range(5):
        oracle = make_oracle("grover", 4, seed)
        assert verify_grover(run_dense(grover(4, oracle)), oracle)


def test_grover_ancillae_return_clean():
    oracle = make_oracle("grover", 4, 1)
    circuit = grover(4, oracle)
    assert circuit.num_qubits == 6
    state = run_dense(circuit)
    assert abs(symsim.prob(state, {4: 0, 5: 0}) - 1.0) < 1e-9


def test_bench_precision_policy():
    assert bench_precision("ghz", 4096).mantissa_bits == 53
    assert bench_precision("bv", 16).mantissa_bits == 53
    assert bench_precision("bv", 256).mantissa_bits > 53
    assert bench_precision("dj", 128).mantissa_bits > 53


def test_run_cell_and_csv_determinism():
    r1 = run_cell("ghz", 8, "bdd", runs=2, budget=60, seed=9)
    assert r1.verified_runs == 2 and r1.total_runs == 2
    assert r1.peak_nodes > 0 and not r1.timeout
    reports_a = bench_run("ghz", ["bdd"], [4, 8], runs=1, budget=60, seed=3)
    reports_b = bench_run("ghz", ["bdd"], [4, 8], runs=1, budget=60, seed=3)

    def strip_timing(csv_text):
        rows = []
        for line in csv_text.splitlines():
            cols = line.split(",")
            rows.append(",".join(cols[:3] + cols[4:]))
        return rows

    assert strip_timing(to_csv(reports_a)) == strip_timing(to_csv(reports_b))


def test_bench_all_dense_small():
    reports = bench_run("all", ["dense"], [4], runs=1, budget=120, seed=2)
    assert len(reports) == 6
    for r in reports:
        assert r.total_runs == 1 and r.verified_runs == 1, (r.benchmark, r.error)
    table = format_table(reports)
    assert "GHZ" in table and "GROVER" in table


def test_bench_timeout_recorded():
    r = run_cell("qft", 10, "bdd", runs=1, budget=0.0, seed=0)
    assert r.timeout and r.total_runs == 0


def test_bench_configuration_error_recorded():
    r = run_cell("ghz", 6, "cflobdd", runs=1, budget=60, seed=0)
    assert r.error is not None and r.total_runs == 0
