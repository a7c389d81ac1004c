"""Finite-state strategies, simulation and consistency checks."""
from __future__ import annotations

from collections import deque

import numpy as np

from .memory import TRIVIAL, MemoryStructure, TableMemory
from .plays import UPPlay


class FiniteStateStrategy:
    """Mealy-style strategy: memory structure plus next-move function.

    ``nxt(v, m)`` returns the successor chosen at an owned vertex v when
    the memory (after reading v) is in state m.
    """

    def __init__(self, player: int, memory: MemoryStructure, nxt):
        self.player = player
        self.memory = memory
        self._nxt = nxt

    def move(self, v, m) -> int:
        return int(self._nxt(v, m))

    @property
    def size(self) -> int:
        return self.memory.size

    def is_positional(self) -> bool:
        return False


class PositionalStrategy(FiniteStateStrategy):
    def __init__(self, player: int, choice):
        self.choice = np.asarray(choice, dtype=np.int64)
        super().__init__(player, TRIVIAL, lambda v, m: self.choice[v])

    def is_positional(self):
        return True

    def __repr__(self):
        return f"PositionalStrategy({self.player}, {self.choice.tolist()})"


def complete_choice(arena, player, choice) -> np.ndarray:
    """Fill undefined (-1) entries at owned vertices with the lowest successor."""
    choice = np.array(choice, dtype=np.int64)
    gap = (choice < 0) & (arena.owner == player)
    choice[gap] = arena.lowest_successor[gap]
    choice[arena.owner != player] = -1
    return choice


def positional(arena, player, choice) -> PositionalStrategy:
    return PositionalStrategy(player, complete_choice(arena, player, choice))


def override(strategy: FiniteStateStrategy, mask, choice) -> FiniteStateStrategy:
    """Play ``choice`` on the masked vertices and ``strategy`` elsewhere."""
    if strategy.is_positional():
        merged = np.where(mask & (choice >= 0), choice, strategy.choice)
        return PositionalStrategy(strategy.player, merged)

    def nxt(v, m):
        if mask[v] and choice[v] >= 0:
            return choice[v]
        return strategy.move(v, m)
    return FiniteStateStrategy(strategy.player, strategy.memory, nxt)


def simulate(arena, s0: FiniteStateStrategy, s1: FiniteStateStrategy, start=None) -> UPPlay:
    """The unique play consistent with both strategies."""
    v = arena.initial if start is None else int(start)
    strats = (s0, s1)
    mem = [s0.memory.start(v), s1.memory.start(v)]
    seen = {}
    trace = []
    while True:
        key = (v, mem[0], mem[1])
        if key in seen:
            i = seen[key]
            return UPPlay(tuple(trace[:i]), tuple(trace[i:]))
        seen[key] = len(trace)
        trace.append(v)
        p = int(arena.owner[v])
        w = strats[p].move(v, mem[p])
        if not arena.has_edge(v, w):
            raise ValueError(f"strategy of player {p} leaves the arena at {v} -> {w}")
        v = w
        mem = [s0.memory.update(mem[0], v), s1.memory.update(mem[1], v)]


def is_consistent(arena, play, strategy: FiniteStateStrategy) -> bool:
    """Does every owned position of the play follow the strategy?

    ``play`` is an UPPlay or a finite prefix.  For an UPPlay the cycle is
    unrolled until the pair (cycle offset, memory state) repeats.
    """
    M = strategy.memory
    me = strategy.player
    if not isinstance(play, UPPlay):
        seq = list(play)
        m = M.start(seq[0])
        for j, v in enumerate(seq[:-1]):
            if j:
                m = M.update(m, v)
            if arena.owner[v] == me and strategy.move(v, m) != seq[j + 1]:
                return False
        return True
    m = None
    for j in range(len(play.prefix)):
        v = play.prefix[j]
        m = M.start(v) if j == 0 else M.update(m, v)
        if arena.owner[v] == me and strategy.move(v, m) != play.at(j + 1):
            return False
    k = len(play.cycle)
    seen = set()
    i = 0
    while True:
        v = play.cycle[i % k]
        m = M.start(v) if m is None else M.update(m, v)
        if (i % k, m) in seen:
            return True
        seen.add((i % k, m))
        if arena.owner[v] == me and strategy.move(v, m) != play.cycle[(i + 1) % k]:
            return False
        i += 1


def reachable_states(arena, strategy: FiniteStateStrategy, start=None):
    """(vertex, state) pairs reachable when the opponent moves freely."""
    v0 = arena.initial if start is None else start
    M = strategy.memory
    first = (v0, M.start(v0))
    seen = {first}
    order = [first]
    queue = deque([first])
    while queue:
        v, m = queue.popleft()
        if arena.owner[v] == strategy.player:
            nexts = [strategy.move(v, m)]
        else:
            nexts = arena.successors(v).tolist()
        for w in nexts:
            pair = (int(w), M.update(m, int(w)))
            if pair not in seen:
                seen.add(pair)
                order.append(pair)
                queue.append(pair)
    return order


def tabulate(arena, strategy: FiniteStateStrategy, start=None) -> FiniteStateStrategy:
    """Equivalent strategy with an explicit update table.

    Only the part reachable from ``start`` is kept; states are renumbered
    in breadth-first order so the result is deterministic.  Table entries
    that no play from ``start`` can use point to state 0.
    """
    v0 = arena.initial if start is None else start
    M = strategy.memory
    pairs = reachable_states(arena, strategy, v0)
    ids = {}
    for _, m in pairs:
        ids.setdefault(m, len(ids))
    k = len(ids)
    table = np.zeros((k, arena.n), dtype=np.int64)
    nxt = np.full((k, arena.n), -1, dtype=np.int64)
    for v, m in pairs:
        i = ids[m]
        if arena.owner[v] == strategy.player:
            nxt[i, v] = strategy.move(v, m)
            outs = [nxt[i, v]]
        else:
            outs = arena.successors(v).tolist()
        for w in outs:
            table[i, w] = ids[M.update(m, int(w))]
    starts = np.zeros(arena.n, dtype=np.int64)
    starts[v0] = ids[M.start(v0)]
    mem = TableMemory(table, ids[M.start(v0)], starts)
    return FiniteStateStrategy(strategy.player, mem, lambda v, m: nxt[m, v])
