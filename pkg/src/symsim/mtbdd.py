"""Multi-terminal BDD backend: reduced ordered diagrams with complex leaves.

Vectors live on variables ``0..n-1`` in qubit order (qubit 0 first, i.e.
most significant).  Gate matrices live on ``2n`` interleaved variables with
row variable ``2i`` and column variable ``2i+1`` for qubit ``i``.  Terminals
are interned on the leaf-epsilon grid, which is what makes near-equal leaves
coalesce; queries run on exact path counts (arbitrary-precision integers)
and exact rational squared magnitudes.
"""

from __future__ import annotations

from fractions import Fraction

from .api import Gate, gate_unitary, register_backend
from .ddcore import Manager
from .numerics import PrecisionConfig


class Terminal:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __repr__(self):
        return "Terminal(%r)" % (self.value,)


class Internal:
    __slots__ = ("var", "lo", "hi")

    def __init__(self, var, lo, hi):
        self.var = var
        self.lo = lo
        self.hi = hi

    def __repr__(self):
        return "Internal(%d)" % self.var


class MtbddSimulator:
    """One simulation: a manager plus the vector/matrix construction ops."""

    kind = "bdd"

    def __init__(self, num_qubits: int, precision: PrecisionConfig | None = None):
        self.num_qubits = num_qubits
        self.manager = Manager(precision)
        self.precision = self.manager.precision
        self.arith = self.manager.arith

    # -- node construction --------------------------------------------------

    def terminal(self, value):
        rep = self.manager.amp_rep(value)
        key = self.arith.bucket_key(rep)
        return self.manager.intern("mt_term", key, lambda: Terminal(rep))

    def node(self, var, lo, hi):
        if lo is hi:
            return lo
        return self.manager.intern(
            "mt_node", (var, lo, hi), lambda: Internal(var, lo, hi)
        )

    @property
    def zero_t(self):
        return self.terminal(self.arith.zero)

    @property
    def one_t(self):
        return self.terminal(self.arith.one)

    # -- pointwise algebra -----------------------------------------------------

    def apply_op(self, f, g, op: str):
        """Pointwise add or mul over all assignments."""
        if op == "add":
            if isinstance(f, Terminal) and self.arith.is_zero(f.value):
                return g
            if isinstance(g, Terminal) and self.arith.is_zero(g.value):
                return f
        elif op == "mul":
            zt = self.zero_t
            if f is zt or g is zt:
                return zt
            if isinstance(f, Terminal) and f.value == 1:
                return g
            if isinstance(g, Terminal) and g.value == 1:
                return f
        if isinstance(f, Terminal) and isinstance(g, Terminal):
            fn = self.arith.add if op == "add" else self.arith.mul
            return self.terminal(fn(f.value, g.value))
        if id(f) > id(g):  # both ops commute; canonicalize the cache key
            f, g = g, f
        key = ("mt_" + op, f, g)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        var = min(self._var(f), self._var(g))
        result = self.node(
            var,
            self.apply_op(self._cof(f, var, 0), self._cof(g, var, 0), op),
            self.apply_op(self._cof(f, var, 1), self._cof(g, var, 1), op),
        )
        self.manager.cache_put(key, result)
        return result

    @staticmethod
    def _var(node):
        return node.var if isinstance(node, Internal) else 1 << 62

    @staticmethod
    def _cof(node, var, bit):
        if isinstance(node, Internal) and node.var == var:
            return node.hi if bit else node.lo
        return node

    # -- gate matrices ------------------------------------------------------------

    def gate_matrix(self, gate: Gate):
        gate.validate_for(self.num_qubits)
        key = ("mt_gate", gate.kind, gate.targets, gate.angle)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        u = gate_unitary(gate.kind, gate.angle, self.arith)
        targets = gate.targets
        pos = {q: i for i, q in enumerate(targets)}
        k = len(targets)
        n = self.num_qubits
        zt = self.zero_t
        memo = {}

        def rec(qubit, rbits, cbits):
            if qubit == n:
                return self.terminal(u[rbits][cbits])
            mkey = (qubit, rbits, cbits)
            hit = memo.get(mkey)
            if hit is not None:
                return hit
            if qubit in pos:
                shift = k - 1 - pos[qubit]
                quads = [
                    [rec(qubit + 1, rbits | (xb << shift), cbits | (yb << shift))
                     for yb in (0, 1)]
                    for xb in (0, 1)
                ]
                result = self.node(
                    2 * qubit,
                    self.node(2 * qubit + 1, quads[0][0], quads[0][1]),
                    self.node(2 * qubit + 1, quads[1][0], quads[1][1]),
                )
            else:
                sub = rec(qubit + 1, rbits, cbits)
                result = self.node(
                    2 * qubit,
                    self.node(2 * qubit + 1, sub, zt),
                    self.node(2 * qubit + 1, zt, sub),
                )
            memo[mkey] = result
            return result

        m = rec(0, 0, 0)
        self.manager.cache_put(key, m)
        return m

    def matvec(self, m, v):
        """w(x) = sum_y M(x, y) v(y) over qubit-indexed vector variables."""
        return self._matvec(m, v, 0)

    def _matvec(self, m, v, qubit):
        if qubit == self.num_qubits:
            return self.terminal(self.arith.mul(m.value, v.value))
        key = ("mt_mv", m, v, qubit)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        xvar, yvar = 2 * qubit, 2 * qubit + 1
        branches = []
        for xb in (0, 1):
            mx = self._cof(m, xvar, xb)
            terms = []
            for yb in (0, 1):
                terms.append(
                    self._matvec(
                        self._cof(mx, yvar, yb),
                        self._cof(v, qubit, yb),
                        qubit + 1,
                    )
                )
            branches.append(self.apply_op(terms[0], terms[1], "add"))
        result = self.node(qubit, branches[0], branches[1])
        self.manager.cache_put(key, result)
        return result

    # -- restriction and path counting ----------------------------------------------

    def restrict(self, f, assignment: dict[int, int]):
        """Cofactor under the partial assignment; restricted vars disappear."""
        if not assignment:
            return f
        memo = {}

        def rec(node):
            if isinstance(node, Terminal):
                return node
            hit = memo.get(node)
            if hit is not None:
                return hit
            bit = assignment.get(node.var)
            if bit is not None:
                result = rec(node.hi if bit else node.lo)
            else:
                result = self.node(node.var, rec(node.lo), rec(node.hi))
            memo[node] = result
            return result

        return rec(f)

    def path_counts(self, f, active_vars) -> dict:
        """Terminal -> exact number of assignments of active_vars reaching it."""
        active = sorted(active_vars)
        rank = {var: i for i, var in enumerate(active)}
        total_vars = len(active)
        memo = {}

        def rec(node, start):
            key = (node, start)
            hit = memo.get(key)
            if hit is not None:
                return hit
            if isinstance(node, Terminal):
                result = {node: 1 << (total_vars - start)}
            else:
                r = rank[node.var]
                scale = 1 << (r - start)
                result = {}
                for child in (node.lo, node.hi):
                    for term, cnt in rec(child, r + 1).items():
                        result[term] = result.get(term, 0) + cnt * scale
            memo[key] = result
            return result

        return rec(f, 0)

    # -- queries --------------------------------------------------------------------

    def prob(self, root, assignment: dict[int, int]) -> float:
        restricted = self.restrict(root, assignment)
        remaining = [v for v in range(self.num_qubits) if v not in assignment]
        counts = self.path_counts(restricted, remaining)
        total = Fraction(0)
        for term, cnt in counts.items():
            total += self.arith.abs2(term.value) * cnt
        return float(total)

    def counts(self, root, p: float, tol: float) -> int:
        counts = self.path_counts(root, range(self.num_qubits))
        p, tol = Fraction(p), Fraction(tol)
        hits = 0
        for term, cnt in counts.items():
            if abs(self.arith.abs2(term.value) - p) <= tol:
                hits += cnt
        return hits

    def _mass(self, node) -> Fraction:
        """Squared-magnitude mass over the variables below node's own."""
        key = ("mt_mass", node)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if isinstance(node, Terminal):
            result = self.arith.abs2(node.value)
        else:
            result = Fraction(0)
            for child in (node.lo, node.hi):
                gap = self._var_or_n(child) - node.var - 1
                result += (1 << gap) * self._mass(child)
        self.manager.cache_put(key, result)
        return result

    def _var_or_n(self, node):
        return node.var if isinstance(node, Internal) else self.num_qubits

    def measure(self, root, rng) -> str:
        bits = []
        node = root
        for q in range(self.num_qubits):
            if isinstance(node, Terminal) or node.var > q:
                bits.append(1 if rng.random() < 0.5 else 0)
                continue
            weights = []
            for child in (node.lo, node.hi):
                gap = self._var_or_n(child) - q - 1
                weights.append((1 << gap) * self._mass(child))
            if weights[1] == 0:
                bit = 0
            elif weights[0] == 0:
                bit = 1
            else:
                bit = 1 if rng.random() < float(weights[1] / (weights[0] + weights[1])) else 0
            bits.append(bit)
            node = node.hi if bit else node.lo
        return "".join(map(str, bits))

    def amplitude(self, root, index: int) -> complex:
        node = root
        n = self.num_qubits
        while isinstance(node, Internal):
            bit = (index >> (n - 1 - node.var)) & 1
            node = node.hi if bit else node.lo
        return self.arith.to_complex(node.value)

    # -- state construction -----------------------------------------------------------

    def initial_state(self):
        return self.basis_state(0)

    def basis_state(self, index: int):
        node = self.one_t
        zt = self.zero_t
        for q in range(self.num_qubits - 1, -1, -1):
            bit = (index >> (self.num_qubits - 1 - q)) & 1
            node = self.node(q, zt, node) if bit else self.node(q, node, zt)
        return node

    def from_amplitudes(self, amplitudes):
        def build(var, lo, hi):
            if hi - lo == 1:
                return self.terminal(self.arith.make(
                    complex(amplitudes[lo]).real, complex(amplitudes[lo]).imag
                ))
            mid = (lo + hi) // 2
            return self.node(var, build(var + 1, lo, mid), build(var + 1, mid, hi))

        return build(0, 0, len(amplitudes))

    def apply(self, root, gate: Gate):
        return self.matvec(self.gate_matrix(gate), root)

    def node_count(self, root) -> int:
        seen = set()
        stack = [root]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            if isinstance(node, Internal):
                stack.append(node.lo)
                stack.append(node.hi)
        return len(seen)

    def eval_bits(self, root, bits):
        """Stored amplitude for one total assignment (exact representative)."""
        node = root
        while isinstance(node, Internal):
            node = node.hi if bits[node.var] else node.lo
        return node.value


register_backend("bdd", MtbddSimulator)
