"""Hash-consing infrastructure shared by the diagram backends.

A :class:`Manager` owns the unique tables that make structural equality
coincide with object identity, an amplitude intern table bucketed on the
leaf-epsilon grid, and the memo caches used by recursive diagram operations.
One manager per simulation; handles must never cross managers.
"""

from __future__ import annotations

import sys

from .numerics import ComplexArithmetic, PrecisionConfig

# Deep diagrams recurse one frame per decision variable; 2n+ levels for
# matrices at n=1024 overflow CPython's default limit.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


class ResourceLimitError(Exception):
    """Raised when a unique table exceeds its configured capacity."""


class Manager:
    """Unique tables plus operation caches for one simulation.

    Single-threaded by contract: all operations on one manager must be
    externally serialized.  Distinct managers are fully independent.
    """

    def __init__(
        self,
        precision: PrecisionConfig | None = None,
        max_nodes: int | None = None,
        cache_limit: int | None = None,
        caches_enabled: bool = True,
    ):
        self.arith = ComplexArithmetic(precision)
        self.precision = self.arith.precision
        self.max_nodes = max_nodes
        self.cache_limit = cache_limit
        self.caches_enabled = caches_enabled
        self._tables: dict[str, dict] = {}
        self._cache: dict = {}
        self._amp_reps: dict[tuple[int, int], object] = {}

    # -- amplitude interning -------------------------------------------------

    def amp_rep(self, value):
        """Representative amplitude for value's epsilon-grid cell.

        The first value interned in a cell becomes the representative for
        every later near-equal value, which is what makes leaf coalescing
        deterministic within a manager.
        """
        key = self.arith.bucket_key(value)
        rep = self._amp_reps.get(key)
        if rep is None:
            rep = value
            self._amp_reps[key] = rep
        return rep

    @property
    def zero(self):
        return self.amp_rep(self.arith.zero)

    @property
    def one(self):
        return self.amp_rep(self.arith.one)

    # -- unique tables ---------------------------------------------------------

    def table(self, kind: str) -> dict:
        tab = self._tables.get(kind)
        if tab is None:
            tab = self._tables[kind] = {}
        return tab

    def intern(self, kind: str, key, build):
        """Return the interned node for key, constructing it on first use."""
        tab = self.table(kind)
        node = tab.get(key)
        if node is None:
            if self.max_nodes is not None and self.node_count() >= self.max_nodes:
                raise ResourceLimitError(
                    "unique table capacity of %d nodes exhausted" % self.max_nodes
                )
            node = build()
            tab[key] = node
        return node

    def node_count(self) -> int:
        return sum(len(t) for t in self._tables.values())

    # -- operation caches -------------------------------------------------------

    def cache_get(self, key):
        if not self.caches_enabled:
            return None
        return self._cache.get(key)

    def cache_put(self, key, value):
        if not self.caches_enabled:
            return
        if self.cache_limit is not None and len(self._cache) >= self.cache_limit:
            # Dropping everything is always sound; absence just forces
            # recomputation.
            self._cache.clear()
        self._cache[key] = value
