"""CFLOBDD backend: hierarchical groupings with procedure-call sharing.

A level-k grouping reads 2**k variables: its A-connection (a level-(k-1)
grouping) reads the first half and one B-connection per middle state reads
the second half.  Return maps route B-exits to the grouping's own exits.
Canonical form maintained everywhere:

* the A-connection's return map is the identity (middle states are exactly
  the A-exits, in order);
* every B return map is injective and exit indices appear in left-to-right
  discovery order across the B-connections;
* no two middle states carry the same (B-connection, return map) pair;
* groupings are hash-consed, so structural equality is handle equality.

A state vector is a root grouping plus a value tuple mapping root exits to
amplitudes, with distinct exits holding distinct amplitude buckets.  Qubit
counts must be powers of two; a vector over n = 2**L qubits is a level-L
grouping, and an n-qubit gate matrix is a level-(L+1) grouping over
interleaved row/column variables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .api import ConfigurationError, Gate, gate_unitary, register_backend
from .ddcore import Manager
from .numerics import PrecisionConfig


class ForkGrouping:
    """Level-0 grouping that decides one variable: two exits."""

    __slots__ = ()
    level = 0
    num_exits = 2

    def __repr__(self):
        return "Fork"


class DontCareGrouping:
    """Level-0 grouping that skips one variable: one exit."""

    __slots__ = ()
    level = 0
    num_exits = 1

    def __repr__(self):
        return "DontCare"


class InternalGrouping:
    __slots__ = ("level", "a", "b", "brets", "num_exits")

    def __init__(self, level, a, b, brets, num_exits):
        self.level = level
        self.a = a
        self.b = b
        self.brets = brets
        self.num_exits = num_exits

    def __repr__(self):
        return "Grouping(level=%d, exits=%d)" % (self.level, self.num_exits)


class CflVec(NamedTuple):
    grouping: object
    values: tuple


def _collapse(seq):
    """Distinct entries in first-occurrence order plus the renumbering."""
    order = {}
    renum = []
    for item in seq:
        idx = order.get(item)
        if idx is None:
            idx = order[item] = len(order)
        renum.append(idx)
    return tuple(order), tuple(renum)


class CflobddSimulator:
    kind = "cflobdd"

    def __init__(self, num_qubits: int, precision: PrecisionConfig | None = None):
        if num_qubits & (num_qubits - 1):
            raise ConfigurationError(
                "cflobdd backend requires a power-of-two qubit count, got %d"
                % num_qubits
            )
        self.num_qubits = num_qubits
        self.level = num_qubits.bit_length() - 1
        self.manager = Manager(precision)
        self.precision = self.manager.precision
        self.arith = self.manager.arith
        self.fork = self.manager.intern("cfl_fork", (), ForkGrouping)
        self.dontcare = self.manager.intern("cfl_dc", (), DontCareGrouping)

    # -- grouping construction ----------------------------------------------

    def _intern(self, level, a, b, brets, num_exits):
        key = (level, a, b, brets)
        return self.manager.intern(
            "cfl_g", key, lambda: InternalGrouping(level, a, b, brets, num_exits)
        )

    def constant_grouping(self, level):
        """The unique one-exit grouping: all variables don't-care."""
        if level == 0:
            return self.dontcare
        key = ("cfl_const", level)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        sub = self.constant_grouping(level - 1)
        g = self._intern(level, sub, (sub,), ((0,),), 1)
        self.manager.cache_put(key, g)
        return g

    def reduce_grouping(self, g, rt):
        """Merge exits per the reduction tuple, keeping canonical form.

        rt maps old exit -> new exit; scanning old exits left to right, the
        first occurrences of new indices must be 0, 1, 2, ... (callers get
        this for free from _collapse).
        """
        if rt == tuple(range(g.num_exits)):
            return g
        key = ("cfl_red", g, rt)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if g.level == 0:
            assert rt == (0, 0), "level-0 reduction must merge the fork"
            result = self.dontcare
        else:
            newmid = []
            mid_index = {}
            amap = []
            for j, (bj, bret) in enumerate(zip(g.b, g.brets)):
                induced = tuple(rt[e] for e in bret)
                collapsed, renum = _collapse(induced)
                bj2 = self.reduce_grouping(bj, renum)
                mkey = (bj2, collapsed)
                idx = mid_index.get(mkey)
                if idx is None:
                    idx = mid_index[mkey] = len(newmid)
                    newmid.append(mkey)
                amap.append(idx)
            a2 = self.reduce_grouping(g.a, tuple(amap))
            result = self._intern(
                g.level,
                a2,
                tuple(b for b, _ in newmid),
                tuple(r for _, r in newmid),
                max(rt) + 1,
            )
        self.manager.cache_put(key, result)
        return result

    def make_internal(self, a, pairs):
        """Canonical internal grouping from an A-connection and labeled
        B-connections.

        pairs[j] = (b_grouping, labels) for A-exit j, labels one hashable
        label per B-exit (distinct within one pair).  Returns the grouping
        plus the tuple of distinct labels in exit order.
        """
        exit_index = {}
        newmid = []
        mid_index = {}
        amap = []
        for b, labels in pairs:
            mkey = (b, labels)
            idx = mid_index.get(mkey)
            if idx is None:
                idx = mid_index[mkey] = len(newmid)
                newmid.append(mkey)
                for lab in labels:
                    if lab not in exit_index:
                        exit_index[lab] = len(exit_index)
            amap.append(idx)
        a2 = self.reduce_grouping(a, tuple(amap))
        brets = tuple(
            tuple(exit_index[lab] for lab in labels) for _, labels in newmid
        )
        g = self._intern(
            a.level + 1,
            a2,
            tuple(b for b, _ in newmid),
            brets,
            len(exit_index),
        )
        return g, tuple(exit_index)

    def pair_product(self, g1, g2):
        """Joint grouping whose exits enumerate reachable exit pairs."""
        key = ("cfl_pp", g1, g2)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if g1.level == 0:
            f, dc = self.fork, self.dontcare
            if g1 is f and g2 is f:
                result = (f, ((0, 0), (1, 1)))
            elif g1 is f:
                result = (f, ((0, 0), (1, 0)))
            elif g2 is f:
                result = (f, ((0, 0), (0, 1)))
            else:
                result = (dc, ((0, 0),))
        else:
            pa, apairs = self.pair_product(g1.a, g2.a)
            exit_index = {}
            bs = []
            brets = []
            for j1, j2 in apairs:
                pb, bpairs = self.pair_product(g1.b[j1], g2.b[j2])
                bret = []
                for x, y in bpairs:
                    pair = (g1.brets[j1][x], g2.brets[j2][y])
                    idx = exit_index.get(pair)
                    if idx is None:
                        idx = exit_index[pair] = len(exit_index)
                    bret.append(idx)
                bs.append(pb)
                brets.append(tuple(bret))
            g = self._intern(
                g1.level, pa, tuple(bs), tuple(brets), len(exit_index)
            )
            result = (g, tuple(exit_index))
        self.manager.cache_put(key, result)
        return result

    # -- vector operations ------------------------------------------------------

    def _vec(self, grouping, values):
        return CflVec(grouping, tuple(values))

    def constant(self, level, value):
        return self._vec(self.constant_grouping(level), (self.manager.amp_rep(value),))

    def _finish(self, grouping, raw_values):
        """Collapse equal value buckets and reduce the grouping to match."""
        reps = [self.manager.amp_rep(v) for v in raw_values]
        values, rt = _collapse(reps)
        return self._vec(self.reduce_grouping(grouping, rt), values)

    def combine(self, v1, v2, op: str):
        fn = self.arith.add if op == "add" else self.arith.mul
        g, pairs = self.pair_product(v1.grouping, v2.grouping)
        raw = [fn(v1.values[i], v2.values[j]) for i, j in pairs]
        return self._finish(g, raw)

    def scalar_mul(self, c, v):
        raw = [self.arith.mul(c, x) for x in v.values]
        return self._finish(v.grouping, raw)

    def kron(self, v1, v2):
        """h(x . y) = f(x) * g(y); one level up."""
        pairs = [
            (v2.grouping, tuple((j, e) for e in range(v2.grouping.num_exits)))
            for j in range(v1.grouping.num_exits)
        ]
        g, labels = self.make_internal(v1.grouping, pairs)
        raw = [self.arith.mul(v1.values[j], v2.values[e]) for j, e in labels]
        return self._finish(g, raw)

    # -- matrix-vector multiplication ----------------------------------------------

    def _combine_labeled(self, lg1, lg2):
        """Pointwise sum of two combo-labeled groupings."""
        g1, labs1 = lg1
        g2, labs2 = lg2
        g, pairs = self.pair_product(g1, g2)
        raw = []
        for i, j in pairs:
            merged = dict(labs1[i])
            for k, c in labs2[j]:
                merged[k] = merged.get(k, 0) + c
            raw.append(tuple(sorted(merged.items())))
        labels, rt = _collapse(raw)
        return (self.reduce_grouping(g, rt), labels)

    @staticmethod
    def _scale_combo_labels(labels, factor):
        return tuple(
            tuple(sorted((k, c * factor) for k, c in combo)) for combo in labels
        )

    def matvec_product(self, mg, vg):
        """Grouping over row variables whose exits carry formal sums.

        Each exit label is a tuple of ((matrix_exit, vector_exit), count)
        pairs: the count of column assignments routed to that exit pair.
        """
        key = ("cfl_mvp", mg, vg)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if vg.level == 0:
            combos = []
            for x in (0, 1):
                j = x if mg.a is self.fork else 0
                b = mg.b[j]
                acc = {}
                for y in (0, 1):
                    mexit = mg.brets[j][y if b is self.fork else 0]
                    vexit = y if vg is self.fork else 0
                    k = (mexit, vexit)
                    acc[k] = acc.get(k, 0) + 1
                combos.append(tuple(sorted(acc.items())))
            if combos[0] == combos[1]:
                result = (self.dontcare, (combos[0],))
            else:
                result = (self.fork, tuple(combos))
        else:
            ag, albs = self.matvec_product(mg.a, vg.a)
            lifted = {}
            for combo in albs:
                for (p, r), _ in combo:
                    if (p, r) in lifted:
                        continue
                    bg, blbs = self.matvec_product(mg.b[p], vg.b[r])
                    blbs = tuple(
                        tuple(
                            sorted(
                                ((mg.brets[p][i], vg.brets[r][j]), c)
                                for (i, j), c in combo_b
                            )
                        )
                        for combo_b in blbs
                    )
                    lifted[(p, r)] = (bg, blbs)
            pairs = []
            for combo in albs:
                acc = None
                for (p, r), c in combo:
                    bg, blbs = lifted[(p, r)]
                    term = (bg, self._scale_combo_labels(blbs, c))
                    acc = term if acc is None else self._combine_labeled(acc, term)
                pairs.append(acc)
            result = self.make_internal(ag, pairs)
        self.manager.cache_put(key, result)
        return result

    def matvec(self, m: CflVec, v: CflVec) -> CflVec:
        g, combos = self.matvec_product(m.grouping, v.grouping)
        arith = self.arith
        raw = []
        for combo in combos:
            total = arith.zero
            for (i, j), c in combo:
                mv, vv = m.values[i], v.values[j]
                # Zero factors carry the huge column counts of identity
                # blocks; skip them before the int coefficient touches
                # floating point.
                if arith.is_zero(mv) or arith.is_zero(vv):
                    continue
                total = arith.add(total, arith.mul(c, arith.mul(mv, vv)))
            raw.append(total)
        return self._finish(g, raw)

    # -- restriction, path counting, queries --------------------------------------------

    def restrict_grouping(self, g, mask):
        """Cofactor with restricted positions turned into don't-cares.

        mask is a tuple over g's variable span with entries None, 0 or 1.
        Returns (grouping, exit_map) where exit_map lists the surviving old
        exits in the new discovery order.
        """
        if all(x is None for x in mask):
            return g, tuple(range(g.num_exits))
        key = ("cfl_res", g, mask)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if g.level == 0:
            bit = mask[0]
            if g is self.fork:
                result = (self.dontcare, (bit,))
            else:
                result = (self.dontcare, (0,))
        else:
            half = len(mask) // 2
            a2, amap = self.restrict_grouping(g.a, mask[:half])
            pairs = []
            for j_new in range(a2.num_exits):
                j = amap[j_new]
                b2, bmap = self.restrict_grouping(g.b[j], mask[half:])
                labels = tuple(g.brets[j][e] for e in bmap)
                pairs.append((b2, labels))
            result = self.make_internal(a2, pairs)
        self.manager.cache_put(key, result)
        return result

    def restrict(self, v: CflVec, assignment: dict[int, int]) -> CflVec:
        mask = tuple(assignment.get(q) for q in range(self.num_qubits))
        g, emap = self.restrict_grouping(v.grouping, mask)
        return self._vec(g, tuple(v.values[e] for e in emap))

    def path_counts(self, g) -> tuple:
        """Exact number of assignments routed to each exit."""
        key = ("cfl_pc", g)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if g is self.fork:
            result = (1, 1)
        elif g is self.dontcare:
            result = (2,)
        else:
            ca = self.path_counts(g.a)
            out = [0] * g.num_exits
            for j, (bj, bret) in enumerate(zip(g.b, g.brets)):
                cb = self.path_counts(bj)
                for e, cnt in enumerate(cb):
                    out[bret[e]] += ca[j] * cnt
            result = tuple(out)
        self.manager.cache_put(key, result)
        return result

    def prob(self, v: CflVec, assignment: dict[int, int]) -> float:
        if assignment:
            v = self.restrict(v, assignment)
        counts = self.path_counts(v.grouping)
        total = Fraction(0)
        for value, cnt in zip(v.values, counts):
            a2 = self.arith.abs2(value)
            if a2:
                total += a2 * cnt
        return float(total / (1 << len(assignment)))

    def counts(self, v: CflVec, p: float, tol: float) -> int:
        counts = self.path_counts(v.grouping)
        p, tol = Fraction(p), Fraction(tol)
        hits = 0
        for value, cnt in zip(v.values, counts):
            if abs(self.arith.abs2(value) - p) <= tol:
                hits += cnt
        return hits

    def measure(self, v: CflVec, rng) -> str:
        counts = self.path_counts(v.grouping)
        weights = [
            self.arith.abs2(value) * cnt for value, cnt in zip(v.values, counts)
        ]
        total = sum(weights)
        r = Fraction(rng.random()) * total
        acc = Fraction(0)
        exit_idx = len(weights) - 1
        for e, w in enumerate(weights):
            if w == 0:
                continue
            acc += w
            if r < acc:
                exit_idx = e
                break
        bits = self._sample_path(v.grouping, exit_idx, rng)
        return "".join(map(str, bits))

    def _sample_path(self, g, target_exit, rng):
        """Uniformly random assignment among those reaching target_exit."""
        if g is self.fork:
            return [target_exit]
        if g is self.dontcare:
            return [rng.randrange(2)]
        ca = self.path_counts(g.a)
        options = []
        total = 0
        for j, (bj, bret) in enumerate(zip(g.b, g.brets)):
            cb = self.path_counts(bj)
            for e, cnt in enumerate(cb):
                if bret[e] == target_exit:
                    w = ca[j] * cnt
                    if w:
                        options.append((j, e, w))
                        total += w
        pick = rng.randrange(total)
        for j, e, w in options:
            if pick < w:
                break
            pick -= w
        return self._sample_path(g.a, j, rng) + self._sample_path(g.b[j], e, rng)

    def eval_exit(self, g, bits) -> int:
        """Exit index reached by threading bits through the hierarchy."""
        if g is self.fork:
            return bits[0]
        if g is self.dontcare:
            return 0
        half = len(bits) // 2
        j = self.eval_exit(g.a, bits[:half])
        e = self.eval_exit(g.b[j], bits[half:])
        return g.brets[j][e]

    def eval_bits(self, v: CflVec, bits):
        return v.values[self.eval_exit(v.grouping, list(bits))]

    def amplitude(self, v: CflVec, index: int) -> complex:
        bits = [
            (index >> (self.num_qubits - 1 - q)) & 1 for q in range(self.num_qubits)
        ]
        return self.arith.to_complex(self.eval_bits(v, bits))

    # -- state construction --------------------------------------------------------------

    def initial_state(self) -> CflVec:
        return self.basis_state(0)

    def basis_state(self, index: int) -> CflVec:
        bits = tuple(
            (index >> (self.num_qubits - 1 - q)) & 1 for q in range(self.num_qubits)
        )
        g, labels = self._indicator(self.level, bits)
        values = tuple(
            self.manager.one if lab == "hit" else self.manager.zero for lab in labels
        )
        return self._vec(g, values)

    def _indicator(self, level, bits):
        """Grouping for "assignment equals bits", labels in {hit, miss}."""
        key = ("cfl_ind", level, bits)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if level == 0:
            labels = ("hit", "miss") if bits[0] == 0 else ("miss", "hit")
            result = (self.fork, labels)
        else:
            half = len(bits) // 2
            a, albs = self._indicator(level - 1, bits[:half])
            pairs = []
            for lab in albs:
                if lab == "hit":
                    pairs.append(self._indicator(level - 1, bits[half:]))
                else:
                    pairs.append((self.constant_grouping(level - 1), ("miss",)))
            result = self.make_internal(a, pairs)
        self.manager.cache_put(key, result)
        return result

    def from_amplitudes(self, amplitudes) -> CflVec:
        if len(amplitudes) != 1 << self.num_qubits:
            raise ValueError("amplitude vector has wrong length")
        return self.vector(amplitudes)

    def vector(self, amplitudes) -> CflVec:
        """Vector over log2(len) variables; length must be 2**(2**k)."""
        nvars = len(amplitudes).bit_length() - 1
        if len(amplitudes) != 1 << nvars or nvars & (nvars - 1) or nvars < 1:
            raise ValueError("vector length must be a power-of-two variable count")
        reps = []
        for a in amplitudes:
            c = complex(a)
            reps.append(self.manager.amp_rep(self.arith.make(c.real, c.imag)))
        g, labels = self._build_values(tuple(reps))
        return self._vec(g, labels)

    def _build_values(self, values):
        """Canonical grouping distinguishing the entries of a value vector."""
        if len(values) == 2:
            if values[0] == values[1]:
                return (self.dontcare, (values[0],))
            return (self.fork, (values[0], values[1]))
        chunk = 1 << ((len(values).bit_length() - 1) // 2)
        rows = tuple(
            tuple(values[i : i + chunk]) for i in range(0, len(values), chunk)
        )
        a, rowlabs = self._build_values(rows)
        pairs = [self._build_values(row) for row in rowlabs]
        return self.make_internal(a, pairs)

    # -- gate matrices -----------------------------------------------------------------------

    _PROJ0 = ((1, 0), (0, 0))
    _PROJ1 = ((0, 0), (0, 1))
    _RAISE = ((0, 0), (1, 0))  # |1><0|
    _LOWER = ((0, 1), (0, 0))  # |0><1|

    def _factor_matrix(self, entries) -> CflVec:
        """Level-1 matrix vector from 2x2 entries over (row, column) vars."""
        flat = [entries[x][y] for x in (0, 1) for y in (0, 1)]
        reps = [self.manager.amp_rep(self.arith.make(c.real, c.imag))
                if isinstance(c, complex)
                else self.manager.amp_rep(c)
                for c in flat]
        g, labels = self._build_values(tuple(reps))
        return self._vec(g, labels)

    def identity_matrix(self, level) -> CflVec:
        key = ("cfl_imat", level)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        if level == 1:
            one, zero = self.arith.one, self.arith.zero
            result = self._factor_matrix(((one, zero), (zero, one)))
        else:
            sub = self.identity_matrix(level - 1)
            result = self.kron(sub, sub)
        self.manager.cache_put(key, result)
        return result

    def _gate_terms(self, gate: Gate):
        """Gate as sum of one-qubit tensor factors: [(coeff, {qubit: 2x2})]."""
        arith = self.arith
        one = arith.one
        u = gate_unitary(gate.kind, gate.angle, arith)
        t = gate.targets
        if len(t) == 1:
            return [(one, {t[0]: u})]
        p0, p1 = self._PROJ0, self._PROJ1
        up, dn = self._RAISE, self._LOWER
        if gate.kind in ("cx", "cz", "cp"):
            # u = diag-block matrix: controlled application of lower-right 2x2
            sub = ((u[2][2], u[2][3]), (u[3][2], u[3][3]))
            return [
                (one, {t[0]: p0}),
                (one, {t[0]: p1, t[1]: sub}),
            ]
        if gate.kind == "swap":
            a, b = t
            return [
                (one, {a: p0, b: p0}),
                (one, {a: p1, b: p1}),
                (one, {a: dn, b: up}),
                (one, {a: up, b: dn}),
            ]
        if gate.kind == "iswap":
            a, b = t
            im = arith.make(0, 1)
            return [
                (one, {a: p0, b: p0}),
                (one, {a: p1, b: p1}),
                (im, {a: dn, b: up}),
                (im, {a: up, b: dn}),
            ]
        if gate.kind == "cswap":
            c, a, b = t
            return [
                (one, {c: p0}),
                (one, {c: p1, a: p0, b: p0}),
                (one, {c: p1, a: p1, b: p1}),
                (one, {c: p1, a: dn, b: up}),
                (one, {c: p1, a: up, b: dn}),
            ]
        if gate.kind == "ccx":
            c1, c2, tt = t
            x = ((arith.zero, one), (one, arith.zero))
            return [
                (one, {c1: p0}),
                (one, {c1: p1, c2: p0}),
                (one, {c1: p1, c2: p1, tt: x}),
            ]
        raise ValueError("no tensor decomposition for %r" % gate.kind)

    def _entries_at_precision(self, entries):
        return tuple(
            tuple(
                v if not isinstance(v, int) else (self.arith.one if v else self.arith.zero)
                for v in row
            )
            for row in entries
        )

    def _extend_term(self, factors, lo, hi) -> CflVec:
        """Kronecker extension of the factors over qubit range [lo, hi)."""
        span = hi - lo
        level = span.bit_length()  # span == 2**(level-1) qubits -> matrix level
        if not any(lo <= q < hi for q in factors):
            return self.identity_matrix(level)
        if span == 1:
            return self._factor_matrix(
                self._entries_at_precision(factors[lo])
            )
        mid = lo + span // 2
        return self.kron(
            self._extend_term(factors, lo, mid), self._extend_term(factors, mid, hi)
        )

    def gate_matrix(self, gate: Gate) -> CflVec:
        gate.validate_for(self.num_qubits)
        key = ("cfl_gate", gate.kind, gate.targets, gate.angle)
        hit = self.manager.cache_get(key)
        if hit is not None:
            return hit
        total = None
        for coeff, factors in self._gate_terms(gate):
            term = self._extend_term(factors, 0, self.num_qubits)
            if coeff != 1:
                term = self.scalar_mul(coeff, term)
            total = term if total is None else self.combine(total, term, "add")
        self.manager.cache_put(key, total)
        return total

    def apply(self, v: CflVec, gate: Gate) -> CflVec:
        return self.matvec(self.gate_matrix(gate), v)

    # -- diagnostics -------------------------------------------------------------------------

    def node_count(self, v: CflVec) -> int:
        seen = set()
        stack = [v.grouping]
        while stack:
            g = stack.pop()
            if id(g) in seen:
                continue
            seen.add(id(g))
            if isinstance(g, InternalGrouping):
                stack.append(g.a)
                stack.extend(g.b)
        return len(seen)

    def check_invariants(self, v: CflVec):
        """Walk all reachable groupings asserting the canonicity rules."""
        buckets = [self.arith.bucket_key(x) for x in v.values]
        assert len(set(buckets)) == len(buckets), "duplicate value buckets at root"
        assert v.grouping.num_exits == len(v.values), "value tuple arity mismatch"
        seen = set()

        def walk(g):
            if id(g) in seen or g.level == 0:
                return
            seen.add(id(g))
            assert g.a.num_exits == len(g.b), "A-return map must be the identity"
            assert len(g.b) == len(g.brets)
            next_exit = 0
            mids = set()
            for bj, bret in zip(g.b, g.brets):
                assert bj.level == g.level - 1
                assert len(bret) == bj.num_exits, "return map arity mismatch"
                assert len(set(bret)) == len(bret), "return map must be injective"
                key = (id(bj), bret)
                assert key not in mids, "duplicate middle state"
                mids.add(key)
                for e in bret:
                    if e == next_exit:
                        next_exit += 1
                    else:
                        assert e < next_exit, "exit discovery order violated"
            assert next_exit == g.num_exits, "unreachable exits"
            assert g.a.level == g.level - 1
            walk(g.a)
            for bj in g.b:
                walk(bj)

        walk(v.grouping)


register_backend("cflobdd", CflobddSimulator)
