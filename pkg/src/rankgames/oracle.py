"""Brute-force ground truth by enumerating strategies.

Nothing here relies on the attractor-based solvers: values are obtained
by enumerating positional strategies for one player and all simple
lassos of the other.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .arena import Arena
from .memory import TableMemory, product_arena
from .plays import UPPlay
from .values import INF


class TooLarge(RuntimeError):
    pass


DEFAULT_LIMIT = 10 ** 7


@dataclass
class OracleResult:
    upper: dict            # start -> min over Player-0 strategies of the max cost
    lower: dict            # start -> max over Player-1 strategies of the min cost
    sigma: dict = field(default_factory=dict)   # start -> optimal Player-0 choices
    tau: dict = field(default_factory=dict)     # start -> optimal Player-1 choices

    def value(self, v):
        return self.upper[v]

    def coincide(self) -> bool:
        return all(self.upper[v] == self.lower[v] for v in self.upper)


def strategy_pairs(arena: Arena, starts) -> int:
    """Number of positional strategy pairs on the part reachable from starts."""
    seen = set(starts)
    stack = list(starts)
    total = 1
    while stack:
        v = stack.pop()
        succ = arena.successors(v).tolist()
        total *= len(succ)
        for w in succ:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return total


def _first_gap(arena, start, me, choice):
    """First undecided vertex of ``me`` in breadth-first order, or None."""
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if arena.owner[v] == me:
            w = choice.get(v)
            if w is None:
                return v
            nexts = (w,)
        else:
            nexts = arena.successors(v).tolist()
        for w in nexts:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return None


def _worst_lasso(arena, start, me, choice, evaluator, maximize, cutoff):
    """Best value the opponent of ``me`` gets against positional ``choice``.

    Plays of a positional pair are simple lassos, and every simple lasso
    of the graph left by ``choice`` arises from some positional reply, so
    the opponent's options are exactly these lassos.  ``maximize`` tells
    whether the opponent maximizes.  Stops early once the cutoff is met.
    Vertices of ``me`` missing from a partial ``choice`` are dead ends, so
    the result is what the opponent secures against every completion.
    """
    top = INF if maximize else 0
    best = -1 if maximize else INF
    path = [start]
    where = {start: 0}
    owner = arena.owner
    succs = arena.successor_lists()

    def done():
        if best == top:
            return True
        if cutoff is None:
            return False
        return best >= cutoff if maximize else best <= cutoff

    def rec(v):
        nonlocal best
        if owner[v] == me:
            w = choice.get(v)
            outs = () if w is None else (w,)
        else:
            outs = succs[v]
        for w in outs:
            if w in where:
                i = where[w]
                val = evaluator(UPPlay(tuple(path[:i]), tuple(path[i:])))
                if (val > best) if maximize else (val < best):
                    best = val
                    if done():
                        return True
                continue
            where[w] = len(path)
            path.append(w)
            stop = rec(w)
            path.pop()
            del where[w]
            if stop:
                return True
        return False

    rec(start)
    return best


def _optimize(arena, start, me, evaluator):
    """Optimal positional strategy of ``me`` (0 minimizes, 1 maximizes).

    Branch and bound over partial strategies: a branch is dropped once
    the opponent can already secure a lasso that is no better for ``me``
    than the best complete strategy found so far.
    """
    maximize_me = me == 1
    best = [(-1 if maximize_me else INF), None]
    top = INF if maximize_me else 0

    def rec(choice):
        if best[1] is not None:
            secured = _worst_lasso(arena, start, me, choice, evaluator, not maximize_me,
                                   best[0])
            if (secured <= best[0]) if maximize_me else (secured >= best[0]):
                return
        v = _first_gap(arena, start, me, choice)
        if v is None:
            val = _worst_lasso(arena, start, me, choice, evaluator, not maximize_me,
                               None)
            if best[1] is None or ((val > best[0]) if maximize_me else (val < best[0])):
                best[0], best[1] = val, dict(choice)
            return
        for w in arena.successors(v).tolist():
            choice[v] = w
            rec(choice)
            del choice[v]
            if best[1] is not None and best[0] == top:
                return

    rec({})
    return best[0], best[1]


def oracle_value_positional(arena: Arena, evaluator, starts=None, limit=DEFAULT_LIMIT) -> OracleResult:
    """Min-max and max-min values over positional strategies.

    ``evaluator`` maps an UPPlay to a cost.  Each bracket enumerates one
    player's positional strategies (restricted to reachable vertices) and
    lets the other reply positionally.  Raises TooLarge when the number
    of positional strategy pairs exceeds ``limit``.
    """
    if starts is None:
        starts = [arena.initial]
    pairs = strategy_pairs(arena, starts)
    if pairs > limit:
        raise TooLarge(f"{pairs} positional strategy pairs exceed the limit {limit}")
    res = OracleResult({}, {})
    for v in starts:
        res.upper[v], res.sigma[v] = _optimize(arena, v, 0, evaluator)
        res.lower[v], res.tau[v] = _optimize(arena, v, 1, evaluator)
    return res


def counter_skeleton(n, k) -> TableMemory:
    """k-state memory that counts steps modulo k."""
    table = np.array([[(m + 1) % k] * n for m in range(k)], dtype=np.int64)
    return TableMemory(table)


def oracle_value_finite_memory(arena: Arena, evaluator, memory=2, starts=None,
                               limit=DEFAULT_LIMIT) -> OracleResult:
    """Values over strategies implemented by a fixed memory skeleton.

    Positional strategies on ``arena × memory`` are exactly the strategies
    with that memory; plays of the product are projected before being
    evaluated.  ``memory`` is a MemoryStructure or a number of states of a
    step-counting skeleton.  The upper bracket lets Player 0 use the memory
    while Player 1 replies positionally on the product, and dually.
    """
    if isinstance(memory, int):
        memory = counter_skeleton(arena.n, memory)
    if starts is None:
        starts = [arena.initial]
    P = product_arena(arena, memory, roots=list(starts))
    proj = P.vertex.tolist()

    def ev(play):
        return evaluator(play.map(lambda p: proj[p]))

    inner = oracle_value_positional(P.arena, ev, starts=[P.start_of(v) for v in starts], limit=limit)
    res = OracleResult({}, {})
    for v in starts:
        p = P.start_of(v)
        res.upper[v], res.lower[v] = inner.upper[p], inner.lower[p]
        res.sigma[v], res.tau[v] = inner.sigma[p], inner.tau[p]
    return res


def check_determinacy(arena: Arena, evaluator, b, starts=None, oracle=None,
                      limit=DEFAULT_LIMIT) -> bool:
    """Every start is won by exactly one player for threshold b.

    Player 0 wins if some strategy keeps the cost at most b; Player 1 wins
    if some strategy forces it above b.
    """
    if oracle is None:
        oracle = oracle_value_positional(arena, evaluator, starts, limit)
    for v in oracle.upper:
        p0 = oracle.upper[v] <= b
        p1 = oracle.lower[v] > b
        if p0 == p1:
            return False
    return True


def sample_up_plays(arena: Arena, count, max_prefix=6, max_cycle=6, seed=0, start=None) -> list:
    """Random ultimately periodic plays from random walks.

    A walk runs until it revisits a vertex; the repeated stretch becomes
    the cycle.  Deterministic for a given seed.
    """
    if count < 0 or max_prefix < 0 or max_cycle <= 0:
        raise ValueError("limits must be positive")
    rng = random.Random(seed)
    v0 = arena.initial if start is None else start
    succs = arena.successor_lists()
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        walk = [v0]
        pos = {v0: [0]}
        target = rng.randint(1, max_prefix + max_cycle)
        while True:
            w = rng.choice(succs[walk[-1]])
            walk.append(w)
            pos.setdefault(w, []).append(len(walk) - 1)
            if len(walk) > target and len(pos[w]) > 1:
                break
            if len(walk) > 4 * (max_prefix + max_cycle) + arena.n:
                break
        # close the cycle at the last vertex's most recent earlier visit
        w = walk[-1]
        if len(pos[w]) < 2:
            continue
        i = pos[w][-2]
        prefix, cycle = walk[:i], walk[i:-1]
        if len(cycle) > max_cycle and attempts < 50 * (count + 1):
            continue
        out.append(UPPlay(tuple(prefix), tuple(cycle)))
    return out
