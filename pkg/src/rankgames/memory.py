"""Memory structures, expanded arenas and memory products.

A memory state is an integer.  ``update(m, v)`` gives the state after
reading ``v``; ``start(v)`` is the state after reading the first vertex
of a play starting in ``v`` (the initial state for plays from the
initial vertex).
"""
from __future__ import annotations

from collections import deque

import numpy as np

from .arena import Arena
from .plays import UPPlay


class MemoryStructure:
    initial = 0

    def update(self, m: int, v: int) -> int:
        raise NotImplementedError

    def start(self, v: int) -> int:
        return self.initial

    def label(self, m):
        return m

    @property
    def size(self) -> int:
        raise NotImplementedError


class TrivialMemory(MemoryStructure):
    size = 1

    def update(self, m, v):
        return 0

    def __repr__(self):
        return "TrivialMemory()"


TRIVIAL = TrivialMemory()


class TableMemory(MemoryStructure):
    """Explicit update table of shape (k, n)."""

    def __init__(self, table, initial=0, starts=None):
        self.table = np.asarray(table, dtype=np.int64)
        k = self.table.shape[0]
        if not 0 <= initial < k or (self.table.size and (self.table.min() < 0 or self.table.max() >= k)):
            raise ValueError("memory state out of range")
        self.initial = int(initial)
        self.starts = starts

    @property
    def size(self):
        return self.table.shape[0]

    def update(self, m, v):
        return int(self.table[m, v])

    def start(self, v):
        if self.starts is None:
            return self.initial
        return int(self.starts[v])


class LazyMemory(MemoryStructure):
    """Memory over arbitrary hashable labels, interned on first use.

    ``step(label, v)`` is the update on labels.  ``start_label(v)``, if
    given, makes the memory re-rootable at any vertex; ``initial`` is then
    the state for ``root``.
    """

    def __init__(self, step, initial_label=None, start_label=None, root=None):
        self._step = step
        self._start_label = start_label
        self._labels = []
        self._ids = {}
        self._cache = {}
        self._starts = {}
        if initial_label is None:
            initial_label = start_label(root)
        self.initial = self.intern(initial_label)

    def intern(self, label) -> int:
        i = self._ids.get(label)
        if i is None:
            i = len(self._labels)
            self._ids[label] = i
            self._labels.append(label)
        return i

    def label(self, m):
        return self._labels[m]

    def state_of(self, label):
        return self._ids.get(label)

    @property
    def size(self):
        return len(self._labels)

    def update(self, m, v):
        key = (m, v)
        r = self._cache.get(key)
        if r is None:
            r = self.intern(self._step(self._labels[m], v))
            self._cache[key] = r
        return r

    def start(self, v):
        if self._start_label is None:
            return self.initial
        r = self._starts.get(v)
        if r is None:
            r = self._starts[v] = self.intern(self._start_label(v))
        return r


def run_update(M: MemoryStructure, prefix) -> int:
    """State after reading a nonempty play prefix."""
    if len(prefix) == 0:
        raise ValueError("empty prefix")
    m = M.start(prefix[0])
    for v in prefix[1:]:
        m = M.update(m, v)
    return m


class ProductArena:
    """Reachable part of the expanded arena A × M.

    Product vertex ``p`` stands for the pair ``pairs[p] = (v, m)``.
    """

    def __init__(self, source: Arena, memory: MemoryStructure, roots=None, alive=None):
        self.source = source
        self.memory = memory
        if roots is None:
            roots = [source.initial]
        self.pairs = []
        self.index = {}
        succs = []
        queue = deque()

        def visit(pair):
            p = self.index.get(pair)
            if p is None:
                p = len(self.pairs)
                self.index[pair] = p
                self.pairs.append(pair)
                succs.append(None)
                queue.append(p)
            return p

        root_ids = [visit((int(v), memory.start(int(v)))) for v in roots]
        while queue:
            p = queue.popleft()
            v, m = self.pairs[p]
            out = []
            for w in source.successors(v):
                w = int(w)
                if alive is not None and not alive[w]:
                    continue
                out.append(visit((w, memory.update(m, w))))
            succs[p] = out
        self.vertex = np.array([v for v, _ in self.pairs], dtype=np.int64)
        self.state = np.array([m for _, m in self.pairs], dtype=np.int64)
        self.roots = root_ids
        self.arena = Arena(source.owner[self.vertex], succs, root_ids[0])

    @property
    def reachable_size(self) -> int:
        return len(self.pairs)

    @property
    def full_size(self) -> int:
        return self.source.n * self.memory.size

    def start_of(self, v) -> int:
        """Product vertex of a play starting in source vertex v."""
        return self.index[(v, self.memory.start(v))]

    def project(self, mask) -> np.ndarray:
        """Source vertices v whose start pair lies in the given product set."""
        out = np.zeros(self.source.n, dtype=bool)
        for v in range(self.source.n):
            p = self.index.get((v, self.memory.start(v)))
            if p is not None and mask[p]:
                out[v] = True
        return out


def product_arena(A: Arena, M: MemoryStructure, roots=None, alive=None) -> ProductArena:
    return ProductArena(A, M, roots, alive)


class ProductMemory(LazyMemory):
    """M1 × M2 where M2 reads vertices of the product arena ``A × M1``."""

    def __init__(self, M1: MemoryStructure, M2: MemoryStructure, P1: ProductArena):
        self.M1, self.M2, self.P1 = M1, M2, P1

        def step(label, v):
            m1, m2 = label
            n1 = M1.update(m1, v)
            return n1, M2.update(m2, self._pair_index(v, n1))

        def start_label(v):
            m1 = M1.start(v)
            return m1, M2.start(self._pair_index(v, m1))

        super().__init__(step, start_label=start_label, root=P1.source.initial)

    def _pair_index(self, v, m1):
        p = self.P1.index.get((v, m1))
        if p is None:
            raise KeyError(f"pair {(v, m1)} is not in the reachable product")
        return p

    @property
    def size(self):
        return self.M1.size * self.M2.size

    @property
    def reached(self):
        return len(self._labels)


def product_memory(M1, M2, P1: ProductArena) -> ProductMemory:
    return ProductMemory(M1, M2, P1)


def extend_play(M: MemoryStructure, play: UPPlay) -> UPPlay:
    """The play over pairs (v, m) induced by reading ``play`` with M."""
    m = M.start(play.first)
    prefix = [(play.prefix[0], m)] if play.prefix else []
    for v in play.prefix[1:]:
        m = M.update(m, v)
        prefix.append((v, m))
    cyc = []
    seen = {}
    k = len(play.cycle)
    i = 0
    first = not play.prefix
    while True:
        v = play.cycle[i % k]
        if first:
            first = False
        else:
            m = M.update(m, v)
        key = (i % k, m)
        if key in seen:
            j = seen[key]
            return UPPlay(tuple(prefix + cyc[:j]), tuple(cyc[j:]))
        seen[key] = i
        cyc.append((v, m))
        i += 1
