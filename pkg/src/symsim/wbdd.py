"""Weighted-BDD backend: complex weights on edges, one shared terminal.

The value of a total assignment is the product of the root weight and the
edge weights along its path.  Canonical form: at every node the low weight
is 1 unless it is 0, in which case the high weight is 1; zero-weight edges
point directly at the terminal.  Weights are interned on the leaf-epsilon
grid so equal-up-to-rounding constructions share structure.
"""

from __future__ import annotations

from fractions import Fraction

from .api import Gate, gate_unitary, register_backend
from .ddcore import Manager
from .numerics import PrecisionConfig


class WTerminal:
    __slots__ = ()

    def __repr__(self):
        return "WTerminal"


class WNode:
    __slots__ = ("var", "wlo", "lo", "whi", "hi")

    def __init__(self, var, wlo, lo, whi, hi):
        self.var = var
        self.wlo = wlo
        self.lo = lo
        self.whi = whi
        self.hi = hi

    def __repr__(self):
        return "WNode(%d)" % self.var


class WbddSimulator:
    """Weighted-diagram simulation; state payloads are (weight, node) edges."""

    kind = "wbdd"

    def __init__(self, num_qubits: int, precision: PrecisionConfig | None = None):
        self.num_qubits = num_qubits
        self.manager = Manager(precision)
        self.precision = self.manager.precision
        self.arith = self.manager.arith
        self.term = self.manager.intern("w_term", (), WTerminal)

    # -- edges and normalization ---------------------------------------------

    def zero_edge(self):
        return (self.manager.zero, self.term)

    def unit_edge(self):
        return (self.manager.one, self.term)

    def normalize(self, var, elo, ehi):
        """Canonical (factor, node) edge for a decision on var.

        The extracted factor times the normalized node reproduces the input
        function exactly (up to grid bucketing of the weights).
        """
        arith = self.arith
        rep = self.manager.amp_rep
        wlo, lo = elo
        whi, hi = ehi
        if arith.is_zero(wlo):
            elo = (self.manager.zero, self.term)
            wlo, lo = elo
        if arith.is_zero(whi):
            ehi = (self.manager.zero, self.term)
            whi, hi = ehi
        if wlo == whi and lo is hi:
            return (wlo, lo)
        if arith.is_zero(wlo) and arith.is_zero(whi):
            return self.zero_edge()
        if not arith.is_zero(wlo):
            factor = wlo
            whi_n = rep(arith.div(whi, wlo))
            if arith.is_zero(whi_n):
                whi_n, hi = self.manager.zero, self.term
            if whi_n == 1 and lo is hi:
                return (factor, lo)
            node = self._node(var, self.manager.one, lo, whi_n, hi)
            return (factor, node)
        factor = whi
        node = self._node(var, self.manager.zero, self.term, self.manager.one, hi)
        return (factor, node)

    def _node(self, var, wlo, lo, whi, hi):
        return self.manager.intern(
            "w_node",
            (var, wlo, lo, whi, hi),
            lambda: WNode(var, wlo, lo, whi, hi),
        )

    @staticmethod
    def _var(node):
        return node.var if isinstance(node, WNode) else 1 << 62

    def _cof(self, node, var, bit):
        """Edge of node's cofactor at var (identity edge when skipped)."""
        if isinstance(node, WNode) and node.var == var:
            return (node.whi, node.hi) if bit else (node.wlo, node.lo)
        return (self.manager.one, node)

    # -- algebra -------------------------------------------------------------------

    def add_edges(self, ea, eb):
        wa, na = ea
        wb, nb = eb
        arith = self.arith
        if arith.is_zero(wa):
            return eb
        if arith.is_zero(wb):
            return ea
        c = self.manager.amp_rep(arith.div(wb, wa))
        if arith.is_zero(c):
            return ea
        factor, node = self._add_norm(na, nb, c)
        return (self.manager.amp_rep(arith.mul(wa, factor)), node)

    def _add_norm(self, na, nb, c):
        """(factor, node) for na + c*nb; both nodes canonical."""
        if na is self.term and nb is self.term:
            s = self.manager.amp_rep(self.arith.add(self.arith.one, c))
            if self.arith.is_zero(s):
                return self.zero_edge()
            return (s, self.term)
        key = ("w_add", na, nb, c)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        var = min(self._var(na), self._var(nb))
        branches = []
        for bit in (0, 1):
            wa, ca = self._cof(na, var, bit)
            wb, cb = self._cof(nb, var, bit)
            branches.append(
                self.add_edges((wa, ca), (self.arith.mul(c, wb), cb))
            )
        result = self.normalize(var, branches[0], branches[1])
        self.manager.cache_put(key, result)
        return result

    def mul_edges(self, ea, eb):
        wa, na = ea
        wb, nb = eb
        arith = self.arith
        if arith.is_zero(wa) or arith.is_zero(wb):
            return self.zero_edge()
        factor, node = self._mul_norm(na, nb)
        return (
            self.manager.amp_rep(arith.mul(arith.mul(wa, wb), factor)),
            node,
        )

    def _mul_norm(self, na, nb):
        if na is self.term and nb is self.term:
            return (self.manager.one, self.term)
        if id(na) > id(nb):
            na, nb = nb, na
        key = ("w_mul", na, nb)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        var = min(self._var(na), self._var(nb))
        branches = []
        for bit in (0, 1):
            wa, ca = self._cof(na, var, bit)
            wb, cb = self._cof(nb, var, bit)
            branches.append(self.mul_edges((wa, ca), (wb, cb)))
        result = self.normalize(var, branches[0], branches[1])
        self.manager.cache_put(key, result)
        return result

    # -- gate matrices over interleaved variables ------------------------------------

    def gate_matrix(self, gate: Gate):
        gate.validate_for(self.num_qubits)
        key = ("w_gate", gate.kind, gate.targets, gate.angle)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        u = gate_unitary(gate.kind, gate.angle, self.arith)
        targets = gate.targets
        pos = {q: i for i, q in enumerate(targets)}
        k = len(targets)
        n = self.num_qubits
        memo = {}

        def rec(qubit, rbits, cbits):
            if qubit == n:
                value = u[rbits][cbits]
                if self.arith.is_zero(value):
                    return self.zero_edge()
                return (self.manager.amp_rep(value), self.term)
            mkey = (qubit, rbits, cbits)
            hit = memo.get(mkey)
            if hit is not None:
                return hit
            if qubit in pos:
                shift = k - 1 - pos[qubit]
                rows = []
                for xb in (0, 1):
                    cols = [
                        rec(qubit + 1, rbits | (xb << shift), cbits | (yb << shift))
                        for yb in (0, 1)
                    ]
                    rows.append(self.normalize(2 * qubit + 1, cols[0], cols[1]))
                result = self.normalize(2 * qubit, rows[0], rows[1])
            else:
                sub = rec(qubit + 1, rbits, cbits)
                zero = self.zero_edge()
                lo = self.normalize(2 * qubit + 1, sub, zero)
                hi = self.normalize(2 * qubit + 1, zero, sub)
                result = self.normalize(2 * qubit, lo, hi)
            memo[mkey] = result
            return result

        m = rec(0, 0, 0)
        self.manager.cache_put(key, m)
        return m

    def matvec(self, medge, vedge):
        return self._matvec(medge, vedge, 0)

    def _matvec(self, medge, vedge, qubit):
        wm, nm = medge
        wv, nv = vedge
        arith = self.arith
        if arith.is_zero(wm) or arith.is_zero(wv):
            return self.zero_edge()
        factor, node = self._matvec_norm(nm, nv, qubit)
        return (
            self.manager.amp_rep(arith.mul(arith.mul(wm, wv), factor)),
            node,
        )

    def _matvec_norm(self, nm, nv, qubit):
        if qubit == self.num_qubits:
            return (self.manager.one, self.term)
        key = ("w_mv", nm, nv, qubit)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        xvar, yvar = 2 * qubit, 2 * qubit + 1
        branches = []
        for xb in (0, 1):
            wmx, nmx = self._cof(nm, xvar, xb)
            terms = []
            for yb in (0, 1):
                wmy, nmy = self._cof(nmx, yvar, yb)
                wvy, nvy = self._cof(nv, qubit, yb)
                terms.append(
                    self._matvec(
                        (self.arith.mul(wmx, wmy), nmy), (wvy, nvy), qubit + 1
                    )
                )
            branches.append(self.add_edges(terms[0], terms[1]))
        result = self.normalize(qubit, branches[0], branches[1])
        self.manager.cache_put(key, result)
        return result

    # -- queries -----------------------------------------------------------------

    def eval_bits(self, edge, bits):
        """Stored amplitude of one total assignment."""
        w, node = edge
        while isinstance(node, WNode):
            if bits[node.var]:
                w = self.arith.mul(w, node.whi)
                node = node.hi
            else:
                w = self.arith.mul(w, node.wlo)
                node = node.lo
            if self.arith.is_zero(w):
                return self.arith.zero
        return w

    def node_probability(self, edge) -> dict:
        """Downstream squared-magnitude mass for every reachable node."""
        out = {}
        self._collect_mass(edge[1], out)
        return out

    def _collect_mass(self, node, out):
        if node in out:
            return out[node]
        if node is self.term:
            out[node] = Fraction(1)
            return out[node]
        total = Fraction(0)
        for w, child in ((node.wlo, node.lo), (node.whi, node.hi)):
            gap = self._var_or_n(child) - node.var - 1
            total += self.arith.abs2(w) * (1 << gap) * self._collect_mass(child, out)
        out[node] = total
        return total

    def _mass(self, node) -> Fraction:
        key = ("w_mass", node)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if node is self.term:
            result = Fraction(1)
        else:
            result = Fraction(0)
            for w, child in ((node.wlo, node.lo), (node.whi, node.hi)):
                gap = self._var_or_n(child) - node.var - 1
                result += self.arith.abs2(w) * (1 << gap) * self._mass(child)
        self.manager.cache_put(key, result)
        return result

    def _var_or_n(self, node):
        return node.var if isinstance(node, WNode) else self.num_qubits

    def prob(self, edge, assignment: dict[int, int]) -> float:
        w, node = edge
        memo = {}

        def rec(node, var):
            if var == self.num_qubits:
                return Fraction(1)
            key = (node, var)
            hit = memo.get(key)
            if hit is not None:
                return hit
            if node is self.term or node.var > var:
                mult = 1 if var in assignment else 2
                result = mult * rec(node, var + 1)
            elif var in assignment:
                ew, child = (
                    (node.whi, node.hi) if assignment[var] else (node.wlo, node.lo)
                )
                a2 = self.arith.abs2(ew)
                result = a2 * rec(child, var + 1) if a2 else Fraction(0)
            else:
                result = Fraction(0)
                for ew, child in ((node.wlo, node.lo), (node.whi, node.hi)):
                    a2 = self.arith.abs2(ew)
                    if a2:
                        result += a2 * rec(child, var + 1)
            memo[key] = result
            return result

        return float(self.arith.abs2(w) * rec(node, 0))

    def _value_counts(self, node) -> dict:
        """|path product|^2 -> number of downstream assignments."""
        key = ("w_vcount", node)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if node is self.term:
            result = {Fraction(1): 1}
        else:
            result = {}
            for w, child in ((node.wlo, node.lo), (node.whi, node.hi)):
                a2 = self.arith.abs2(w)
                scale = 1 << (self._var_or_n(child) - node.var - 1)
                for val, cnt in self._value_counts(child).items():
                    k = a2 * val
                    result[k] = result.get(k, 0) + cnt * scale
        self.manager.cache_put(key, result)
        return result

    def counts(self, edge, p: float, tol: float) -> int:
        w, node = edge
        root_scale = self.arith.abs2(w)
        gap = self._var_or_n(node)
        p, tol = Fraction(p), Fraction(tol)
        hits = 0
        for val, cnt in self._value_counts(node).items():
            if abs(root_scale * val - p) <= tol:
                hits += cnt * (1 << gap)
        return hits

    def measure(self, edge, rng) -> str:
        bits = []
        node = edge[1]
        for q in range(self.num_qubits):
            if node is self.term or node.var > q:
                bits.append(1 if rng.random() < 0.5 else 0)
                continue
            weights = []
            for w, child in ((node.wlo, node.lo), (node.whi, node.hi)):
                gap = self._var_or_n(child) - q - 1
                weights.append(self.arith.abs2(w) * (1 << gap) * self._mass(child))
            if weights[1] == 0:
                bit = 0
            elif weights[0] == 0:
                bit = 1
            else:
                bit = 1 if rng.random() < float(weights[1] / (weights[0] + weights[1])) else 0
            bits.append(bit)
            node = node.hi if bit else node.lo
        return "".join(map(str, bits))

    def amplitude(self, edge, index: int) -> complex:
        bits = [(index >> (self.num_qubits - 1 - q)) & 1 for q in range(self.num_qubits)]
        return self.arith.to_complex(self.eval_bits(edge, bits))

    # -- construction ----------------------------------------------------------------

    def initial_state(self):
        return self.basis_state(0)

    def basis_state(self, index: int):
        edge = self.unit_edge()
        zero = self.zero_edge()
        for q in range(self.num_qubits - 1, -1, -1):
            bit = (index >> (self.num_qubits - 1 - q)) & 1
            edge = self.normalize(q, zero, edge) if bit else self.normalize(q, edge, zero)
        return edge

    def from_amplitudes(self, amplitudes):
        def build(var, lo, hi):
            if hi - lo == 1:
                c = complex(amplitudes[lo])
                if c == 0:
                    return self.zero_edge()
                return (self.manager.amp_rep(self.arith.make(c.real, c.imag)), self.term)
            mid = (lo + hi) // 2
            return self.normalize(var, build(var + 1, lo, mid), build(var + 1, mid, hi))

        return build(0, 0, len(amplitudes))

    def restrict(self, edge, assignment: dict[int, int]):
        if not assignment:
            return edge
        memo = {}

        def rec(node):
            if node is self.term:
                return (self.manager.one, self.term)
            hit = memo.get(node)
            if hit is not None:
                return hit
            bit = assignment.get(node.var)
            if bit is not None:
                w, child = (node.whi, node.hi) if bit else (node.wlo, node.lo)
                if self.arith.is_zero(w):
                    result = self.zero_edge()
                else:
                    sw, sn = rec(child)
                    result = (self.manager.amp_rep(self.arith.mul(w, sw)), sn)
            else:
                branches = []
                for w, child in ((node.wlo, node.lo), (node.whi, node.hi)):
                    sw, sn = rec(child)
                    branches.append((self.arith.mul(w, sw), sn))
                result = self.normalize(node.var, branches[0], branches[1])
            memo[node] = result
            return result

        w, node = edge
        sw, sn = rec(node)
        return (self.manager.amp_rep(self.arith.mul(w, sw)), sn)

    def apply(self, edge, gate: Gate):
        return self.matvec(self.gate_matrix(gate), edge)

    def node_count(self, edge) -> int:
        seen = set()
        stack = [edge[1]]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            if isinstance(node, WNode):
                stack.append(node.lo)
                stack.append(node.hi)
        return len(seen)

    def check_invariants(self, edge):
        """Walk the diagram asserting the normalization rules everywhere."""
        seen = set()
        stack = [edge[1]]
        while stack:
            node = stack.pop()
            if id(node) in seen or node is self.term:
                continue
            seen.add(id(node))
            wlo, whi = node.wlo, node.whi
            if self.arith.is_zero(wlo):
                assert node.lo is self.term, "zero low edge must hit the terminal"
                assert whi == 1, "zero low edge requires unit high weight"
            else:
                assert wlo == 1, "nonzero low weight must be 1"
            if self.arith.is_zero(whi):
                assert node.hi is self.term, "zero high edge must hit the terminal"
            assert not (wlo == whi and node.lo is node.hi), "redundant node"
            for child in (node.lo, node.hi):
                if isinstance(child, WNode):
                    assert child.var > node.var, "variable order violated"
                    stack.append(child)


register_backend("wbdd", WbddSimulator)
