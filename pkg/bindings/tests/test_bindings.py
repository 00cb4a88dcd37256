import pathlib
import runpy
import subprocess
import sys
import time

import pytest

import symsim
from symsim_bindings import QuantumState

EXAMPLES = pathlib.Path(__file__).resolve().parent.parent / "examples"


def test_constructor_and_gate_methods():
    qs = QuantumState("BDD", 3, seed=1)
    qs.h(0)
    qs.cx(0, 1)
    qs.cx(0, 2)
    assert qs.backend == "bdd"
    assert qs.num_qubits == 3
    assert abs(qs.prob({0: 1, 1: 1, 2: 1}) - 0.5) < 1e-8
    assert qs.measurement_counts(0.5) == 2
    assert qs.measure() in ("000", "111")


def test_all_seventeen_gate_methods_exist():
    qs = QuantumState("dense", 4, seed=0)
    qs.i(0); qs.h(0); qs.x(1); qs.y(2); qs.z(3)
    qs.s(0); qs.sdg(0); qs.t(1); qs.tdg(1); qs.p(2, 0.3)
    qs.cx(0, 1); qs.cz(1, 2); qs.cp(2, 3, 0.25)
    qs.swap(0, 3); qs.iswap(1, 2)
    qs.cswap(0, 1, 2); qs.ccx(1, 2, 3)
    assert abs(qs.prob({}) - 1.0) < 1e-9


def test_errors_surface_as_exceptions():
    with pytest.raises(symsim.ConfigurationError):
        QuantumState("CFLOBDD", 3)
    qs = QuantumState("BDD", 2)
    with pytest.raises(ValueError):
        qs.h(5)


def test_measure_seed_determinism():
    def sample(seed):
        qs = QuantumState("WBDD", 2, seed=seed)
        qs.h(0)
        qs.cx(0, 1)
        return [qs.measure() for _ in range(10)]

    assert sample(7) == sample(7)
    assert set(sample(7)) <= {"00", "11"}


def test_binding_answers_match_cli(tmp_path):
    """Bit-identical prob answers through the bindings and the CLI."""
    circuit = tmp_path / "c.qc"
    circuit.write_text("qubits 3\nh 0\ncx 0 1\nt 2\ncp 0 2 0.25\n")
    qs = QuantumState("BDD", 3)
    qs.h(0)
    qs.cx(0, 1)
    qs.t(2)
    qs.cp(0, 2, 0.25)
    bound_answer = repr(qs.prob({0: 1, 1: 1}))
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "symsim.cli",
            "run",
            "--backend",
            "bdd",
            "--circuit",
            str(circuit),
            "--prob",
            "0=1,1=1",
        ],
        capture_output=True,
        text=True,
        check=True,
    )
    cli_answer = proc.stdout.strip().split(" = ")[1]
    assert cli_answer == bound_answer


def run_example(name, capsys):
    runpy.run_path(str(EXAMPLES / name), run_name="__main__")
    return capsys.readouterr().out


def test_example_parity_check(capsys):
    assert run_example("parity_check.py", capsys).strip() == "ok"


def test_example_phase_interference(capsys):
    assert run_example("phase_interference.py", capsys).strip() == "ok"


def test_example_swap_network(capsys):
    assert run_example("swap_network.py", capsys).strip() == "ok"


def test_ghz_4096_prints_circuit_is_correct(capsys):
    """The 4096-qubit flagship program completes well under 120 s."""
    t0 = time.perf_counter()
    out = run_example("ghz_4096.py", capsys)
    elapsed = time.perf_counter() - t0
    assert out.strip() == "Circuit is correct"
    assert elapsed < 120, "ghz_4096 took %.1fs" % elapsed
