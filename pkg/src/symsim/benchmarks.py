"""The six benchmark algorithms with seeded oracles and the timing harness.

Oracle generation is a pure function of (algorithm, width, seed).  Every
generator returns a :class:`Circuit`; verifiers check the final state (or
measured samples, for Simon) against the oracle's secret.  ``bench_run``
executes cells of (benchmark, width, backend), records wall time, verdicts,
peak diagram sizes and timeouts, and reports as CSV plus an aligned table.

Qubit accounting: BV and DJ use ``n`` total qubits (n-1 data bits plus one
ancilla).  Simon's data register is ``n`` wide and the circuit uses ``2n``
qubits.  Grover's search register is ``n`` wide; the circuit adds
``max(0, n-2)`` clean ancillae for the multi-controlled-Z cascade.  Reports
are labeled with the register width ``n``.

Precision escalation: Hadamard-heavy algorithms produce amplitudes around
``2**(-n/2)``; once those dip near the default leaf epsilon the mantissa is
raised (and the epsilon shrunk) so distinct tiny leaves stop coalescing.
The chosen mantissa widths are recorded in the text report footnotes.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .api import (
    ConfigurationError,
    Gate,
    apply_gate,
    measure,
    measurement_counts,
    new_state,
    prob,
    state_node_count,
)
from .circuits import Circuit
from .numerics import PrecisionConfig

VERIFY_EPS = 1e-8

BENCHMARKS = ("ghz", "bv", "dj", "simon", "qft", "grover")


@dataclass(frozen=True)
class OracleSpec:
    """Seeded secret of one benchmark instance."""

    algorithm: str
    width: int
    seed: str
    secret: tuple

    def __post_init__(self):
        if self.algorithm == "simon" and not any(self.secret):
            raise ValueError("simon period must be nonzero")


def make_oracle(algorithm: str, width: int, seed) -> OracleSpec:
    """Uniformly random secret for the algorithm, reproducible from seed."""
    seed = str(seed)
    rng = random.Random("oracle:%s:%d:%s" % (algorithm, width, seed))
    if algorithm == "bv":
        secret = tuple(rng.randrange(2) for _ in range(width - 1))
    elif algorithm == "dj":
        # balanced oracle f(x) = r.x with nonzero r
        while True:
            r = tuple(rng.randrange(2) for _ in range(width - 1))
            if any(r):
                break
        secret = ("balanced",) + r
    elif algorithm == "simon":
        while True:
            s = tuple(rng.randrange(2) for _ in range(width))
            if any(s):
                break
        secret = s
    elif algorithm == "grover":
        secret = tuple(rng.randrange(2) for _ in range(width))
    elif algorithm in ("ghz", "qft"):
        secret = ()
    else:
        raise ValueError("unknown benchmark %r" % algorithm)
    return OracleSpec(algorithm, width, seed, secret)


def constant_dj_oracle(width: int, value: int = 0) -> OracleSpec:
    return OracleSpec("dj", width, "constant", ("constant", value))


# -- circuit generators -------------------------------------------------------


def ghz(n: int) -> Circuit:
    if n < 2:
        raise ValueError("ghz needs n >= 2")
    ops = [Gate("h", (0,))]
    ops += [Gate("cx", (0, i)) for i in range(1, n)]
    return Circuit(n, tuple(ops))


def bv(n: int, oracle: OracleSpec) -> Circuit:
    """Bernstein-Vazirani over n-1 data bits plus one ancilla."""
    secret = oracle.secret
    if len(secret) != n - 1:
        raise ValueError("secret length must be n-1")
    anc = n - 1
    ops = [Gate("h", (q,)) for q in range(n - 1)]
    ops += [Gate("x", (anc,)), Gate("h", (anc,))]
    ops += [Gate("cx", (i, anc)) for i in range(n - 1) if secret[i]]
    ops += [Gate("h", (q,)) for q in range(n - 1)]
    return Circuit(n, tuple(ops))


def dj(n: int, oracle: OracleSpec) -> Circuit:
    """Deutsch-Jozsa over n-1 data bits plus one ancilla."""
    kind = oracle.secret[0]
    anc = n - 1
    ops = [Gate("h", (q,)) for q in range(n - 1)]
    ops += [Gate("x", (anc,)), Gate("h", (anc,))]
    if kind == "balanced":
        r = oracle.secret[1:]
        if len(r) != n - 1:
            raise ValueError("balanced mask length must be n-1")
        ops += [Gate("cx", (i, anc)) for i in range(n - 1) if r[i]]
    elif kind == "constant":
        if oracle.secret[1]:
            ops.append(Gate("x", (anc,)))
    else:
        raise ValueError("bad dj oracle kind %r" % kind)
    ops += [Gate("h", (q,)) for q in range(n - 1)]
    return Circuit(n, tuple(ops))


def simon(n: int, oracle: OracleSpec) -> Circuit:
    """Simon's circuit: n data qubits, n output qubits, period s != 0.

    The oracle computes f(x) = x xor (x_j and s) for the first set bit j of
    s, which is 2-to-1 with period exactly s.
    """
    s = oracle.secret
    if len(s) != n:
        raise ValueError("period length must be n")
    ops = [Gate("h", (q,)) for q in range(n)]
    ops += [Gate("cx", (i, n + i)) for i in range(n)]
    j = next(i for i in range(n) if s[i])
    ops += [Gate("cx", (j, n + i)) for i in range(n) if s[i]]
    ops += [Gate("h", (q,)) for q in range(n)]
    return Circuit(2 * n, tuple(ops))


def qft(n: int) -> Circuit:
    """Quantum Fourier transform; cp angles are exact dyadic half-turns."""
    ops = []
    for j in range(n):
        ops.append(Gate("h", (j,)))
        for k in range(j + 1, n):
            ops.append(Gate("cp", (k, j), 2.0 ** -(k - j)))
    for q in range(n // 2):
        ops.append(Gate("swap", (q, n - 1 - q)))
    return Circuit(n, tuple(ops))


def _mcz(qubits: Sequence[int], anc_start: int) -> list[Gate]:
    """Multi-controlled Z via a Toffoli cascade through clean ancillae."""
    k = len(qubits)
    if k == 1:
        return [Gate("z", (qubits[0],))]
    if k == 2:
        return [Gate("cz", (qubits[0], qubits[1]))]
    anc = list(range(anc_start, anc_start + k - 2))
    up = [Gate("ccx", (qubits[0], qubits[1], anc[0]))]
    up += [Gate("ccx", (qubits[i], anc[i - 2], anc[i - 1])) for i in range(2, k - 1)]
    return up + [Gate("cz", (qubits[k - 1], anc[-1]))] + up[::-1]


def grover_iterations(n: int) -> int:
    """ceil(pi*sqrt(N)/4): the classic iteration-count expression."""
    return math.ceil(math.pi * math.sqrt(2**n) / 4)


def grover_peak_iterations(n: int) -> int:
    """Iteration count closest to the success-probability peak.

    The ceiling expression lands one step past the peak for small n (the
    success probability drops to 0.25 at n=2); rounding to the nearest
    integer of pi/(4*asin(2**(-n/2))) - 1/2 keeps every width above the
    0.9 verification threshold.
    """
    theta = math.asin(2 ** (-n / 2))
    return max(1, round(math.pi / (4 * theta) - 0.5))


def grover(n: int, oracle: OracleSpec, iterations: int | None = None) -> Circuit:
    """Grover search for one marked n-bit string.

    Uses n + max(0, n-2) qubits; the ancillae return to |0> after every
    multi-controlled Z.  The default iteration count is the peak count;
    pass ``iterations`` to reproduce other protocols.
    """
    marked = oracle.secret
    if len(marked) != n:
        raise ValueError("marked string length must be n")
    if iterations is None:
        iterations = grover_peak_iterations(n)
    data = list(range(n))
    total = n + max(0, n - 2)
    ops = [Gate("h", (q,)) for q in data]
    for _ in range(iterations):
        flips = [Gate("x", (q,)) for q in data if not marked[q]]
        ops += flips + _mcz(data, n) + flips
        ops += [Gate("h", (q,)) for q in data]
        ops += [Gate("x", (q,)) for q in data]
        ops += _mcz(data, n)
        ops += [Gate("x", (q,)) for q in data]
        ops += [Gate("h", (q,)) for q in data]
    return Circuit(total, tuple(ops))


GENERATORS = {
    "ghz": lambda n, oracle: ghz(n),
    "bv": bv,
    "dj": dj,
    "simon": simon,
    "qft": lambda n, oracle: qft(n),
    "grover": grover,
}


def circuit_for(benchmark: str, n: int, oracle: OracleSpec | None) -> Circuit:
    return GENERATORS[benchmark](n, oracle)


# -- verification ----------------------------------------------------------------


def verify_ghz(state) -> bool:
    n = state.num_qubits
    ones = prob(state, {q: 1 for q in range(n)})
    zeros = prob(state, {q: 0 for q in range(n)})
    return abs(ones - 0.5) < VERIFY_EPS and abs(zeros - 0.5) < VERIFY_EPS


def verify_bv(state, oracle: OracleSpec) -> bool:
    want = {i: oracle.secret[i] for i in range(len(oracle.secret))}
    return abs(prob(state, want) - 1.0) < VERIFY_EPS


def verify_dj(state, oracle: OracleSpec) -> bool:
    zeros = {i: 0 for i in range(oracle.width - 1)}
    p = prob(state, zeros)
    if oracle.secret[0] == "constant":
        return abs(p - 1.0) < VERIFY_EPS
    return p < VERIFY_EPS


def verify_simon_samples(samples: Iterable[str], oracle: OracleSpec) -> bool:
    """Every measured data string must be orthogonal to the period (GF(2))."""
    n = len(oracle.secret)
    s = int("".join(map(str, oracle.secret)), 2)
    for bits in samples:
        y = int(bits[:n], 2)
        if bin(y & s).count("1") % 2:
            return False
    return True


def gf2_rank(values: Iterable[int]) -> int:
    basis = []
    for v in values:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def verify_qft(state) -> bool:
    """On the all-zeros input the spectrum is exactly uniform."""
    n = state.num_qubits
    if measurement_counts(state, 2.0**-n) != 1 << n:
        return False
    return abs(prob(state, {0: 1}) - 0.5) < VERIFY_EPS


def verify_grover(state, oracle: OracleSpec) -> bool:
    n = len(oracle.secret)
    want = {q: oracle.secret[q] for q in range(n)}
    return prob(state, want) > 0.9


# -- precision policy ----------------------------------------------------------------


def bench_precision(benchmark: str, n: int) -> PrecisionConfig:
    """Mantissa width for one cell; mirrors the paper's escalation knob."""
    if benchmark in ("bv", "dj", "qft"):
        amp_bits = (n - 1 + 1) // 2  # amplitudes reach 2**(-(n-1)/2)
    elif benchmark == "simon":
        amp_bits = n
    else:
        amp_bits = 0
    if amp_bits <= 32:
        return PrecisionConfig()
    return PrecisionConfig(mantissa_bits=amp_bits + 40)


# -- the harness --------------------------------------------------------------------


@dataclass
class BenchReport:
    benchmark: str
    qubits: int
    backend: str
    mean_seconds: float | None
    verified_runs: int
    total_runs: int
    timeout: bool
    peak_nodes: int
    seed: int
    precision_bits: int = 53
    error: str | None = None


class _Timeout(Exception):
    pass


def _execute(circuit: Circuit, backend: str, precision, budget: float):
    """Run gates sequentially, tracking peak size, aborting past budget."""
    t0 = time.perf_counter()
    state = new_state(backend, circuit.num_qubits, precision)
    peak = state_node_count(state)
    for op in circuit.ops:
        if time.perf_counter() - t0 > budget:
            raise _Timeout()
        state = apply_gate(state, op)
        size = state_node_count(state)
        if size > peak:
            peak = size
    return state, peak, t0


def run_cell(
    benchmark: str,
    n: int,
    backend: str,
    runs: int,
    budget: float,
    seed: int,
) -> BenchReport:
    precision = bench_precision(benchmark, n)
    report = BenchReport(
        benchmark=benchmark,
        qubits=n,
        backend=backend,
        mean_seconds=None,
        verified_runs=0,
        total_runs=0,
        timeout=False,
        peak_nodes=0,
        seed=seed,
        precision_bits=precision.mantissa_bits,
    )
    times = []
    for run_idx in range(runs):
        run_seed = "%d:%s:%d:%d" % (seed, benchmark, n, run_idx)
        oracle = make_oracle(benchmark, n, run_seed)
        try:
            circuit = circuit_for(benchmark, n, oracle)
        except ValueError as exc:
            report.error = str(exc)
            break
        try:
            state, peak, t0 = _execute(circuit, backend, precision, budget)
            if benchmark == "ghz":
                ok = verify_ghz(state)
            elif benchmark == "bv":
                ok = verify_bv(state, oracle)
            elif benchmark == "dj":
                ok = verify_dj(state, oracle)
            elif benchmark == "qft":
                ok = verify_qft(state)
            elif benchmark == "grover":
                ok = verify_grover(state, oracle)
            else:
                rng = random.Random("measure:" + run_seed)
                sample = measure(state, rng)
                ok = verify_simon_samples([sample], oracle)
            elapsed = time.perf_counter() - t0
        except _Timeout:
            report.timeout = True
            break
        except ConfigurationError as exc:
            report.error = str(exc)
            break
        report.total_runs += 1
        report.verified_runs += int(ok)
        report.peak_nodes = max(report.peak_nodes, peak)
        times.append(elapsed)
    if times:
        report.mean_seconds = sum(times) / len(times)
    return report


def _cell_args(suite, backends, qubit_list, runs, budget, seed):
    benches = BENCHMARKS if suite == "all" else (suite,)
    for benchmark in benches:
        for n in qubit_list:
            for backend in backends:
                yield (benchmark, n, backend, runs, budget, seed)


def bench_run(
    suite: str,
    backends: Sequence[str],
    qubit_list: Sequence[int],
    runs: int = 50,
    budget: float = 900.0,
    seed: int = 0,
    parallel: bool = False,
) -> list[BenchReport]:
    cells = list(_cell_args(suite, backends, qubit_list, runs, budget, seed))
    if parallel:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor() as pool:
            return list(pool.map(_run_cell_star, cells))
    return [run_cell(*args) for args in cells]


def _run_cell_star(args):
    return run_cell(*args)


# -- reporting ------------------------------------------------------------------------


CSV_HEADER = "benchmark,qubits,backend,mean_seconds,verified_runs,total_runs,timeout,peak_nodes,seed"


def to_csv(reports: Iterable[BenchReport]) -> str:
    lines = [CSV_HEADER]
    for r in reports:
        mean = "" if r.mean_seconds is None else "%.6f" % r.mean_seconds
        lines.append(
            "%s,%d,%s,%s,%d,%d,%s,%d,%d"
            % (
                r.benchmark,
                r.qubits,
                r.backend,
                mean,
                r.verified_runs,
                r.total_runs,
                "true" if r.timeout else "false",
                r.peak_nodes,
                r.seed,
            )
        )
    return "\n".join(lines) + "\n"


def write_csv(reports: Iterable[BenchReport], path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_csv(reports))


def format_table(reports: Sequence[BenchReport]) -> str:
    """Aligned text table, one row per (benchmark, width), backend columns."""
    backends = []
    for r in reports:
        if r.backend not in backends:
            backends.append(r.backend)
    cells = {}
    rows = []
    footnotes = {}
    for r in reports:
        rkey = (r.benchmark, r.qubits)
        if rkey not in cells:
            cells[rkey] = {}
            rows.append(rkey)
        if r.timeout:
            text = "Timeout"
        elif r.error is not None:
            text = "n/a"
        elif r.mean_seconds is None:
            text = "-"
        else:
            text = "%.3f" % r.mean_seconds
            if r.verified_runs != r.total_runs:
                text += " (%d/%d ok)" % (r.verified_runs, r.total_runs)
        cells[rkey][r.backend] = text
        if r.precision_bits != 53:
            footnotes[rkey] = r.precision_bits
    header = ["Benchmark", "#Qubits"] + ["%s (sec)" % b for b in backends]
    table = [header]
    for rkey in rows:
        bench, n = rkey
        label = str(n) + ("*" if rkey in footnotes else "")
        table.append(
            [bench.upper(), label]
            + [cells[rkey].get(b, "-") for b in backends]
        )
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    out = []
    for row in table:
        out.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    for rkey in rows:
        if rkey in footnotes:
            out.append(
                "* %s at %d qubits ran at %d mantissa bits"
                % (rkey[0].upper(), rkey[1], footnotes[rkey])
            )
    return "\n".join(out) + "\n"
