"""Request-response games with costs.

The cost of a request is the summed edge cost until its first response;
the cost of a play is the largest cost of any request (infinite when a
request stays open).  Solving goes through a memory that tracks the cost
accumulated by the oldest open request of each pair, which yields a
vertex-ranked sup request-response game.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .memory import LazyMemory
from .plays import UPPlay
from .qualitative import RequestResponse
from .ranked import VertexRankedGame, solve_sup_bound
from .reduction import Cap, ReductionWitness, lift_strategy
from .values import INF

BOTTOM = -1  # no open request; compares below every real cost


class RRCostSpec:
    """Pairs (Q_c, P_c) with per-pair edge costs (missing edges cost 0)."""

    def __init__(self, requests, responses, costs=None):
        self.requests = [np.asarray(q, dtype=bool) for q in requests]
        self.responses = [np.asarray(p, dtype=bool) for p in responses]
        if len(self.requests) != len(self.responses):
            raise ValueError("requests and responses differ in number")
        costs = costs if costs is not None else [{} for _ in self.requests]
        if len(costs) != len(self.requests):
            raise ValueError("one cost table per pair expected")
        self.costs = [{(int(u), int(v)): int(w) for (u, v), w in tab.items()} for tab in costs]
        if any(w < 0 for tab in self.costs for w in tab.values()):
            raise ValueError("costs must be non-negative")

    @property
    def d(self):
        return len(self.requests)

    @property
    def W(self):
        return max((w for tab in self.costs for w in tab.values()), default=0)

    def cost(self, c, u, v):
        return self.costs[c].get((u, v), 0)

    def condition(self) -> RequestResponse:
        return RequestResponse(self.requests, self.responses)


class RRCostGame:
    def __init__(self, arena, spec: RRCostSpec):
        self.arena = arena
        self.spec = spec

    def cost(self, play: UPPlay):
        return eval_cost_reqres(self.spec, play)


def eval_cost_reqres(spec: RRCostSpec, play: UPPlay):
    seq = play.unroll(2)
    k = len(play.cycle)
    n_pre = len(play.prefix)
    worst = 0
    for c in range(spec.d):
        Q, P = spec.requests[c], spec.responses[c]
        # every prefix position and one position per cycle offset
        for j in range(n_pre + k):
            if not Q[seq[j]]:
                continue
            total = 0
            i = j
            limit = max(n_pre, j) + k  # one full period past the prefix suffices
            while not P[seq[i]]:
                if i >= limit:
                    return INF
                total += spec.cost(c, seq[i], seq[i + 1])
                i += 1
            worst = max(worst, total)
    return worst


def cap_bound(spec: RRCostSpec, arena) -> int:
    """Bound on the optimal finite cost: d · 2^d · n · W."""
    return spec.d * 2 ** spec.d * arena.n * spec.W


def counter_memory(arena, spec: RRCostSpec, b: int, strict=False) -> LazyMemory:
    """Memory states (current vertex, open costs r, overflow flag, answer peak).

    ``r[c]`` is the cost accumulated by the oldest open request of pair c
    or BOTTOM.  Once some cost exceeds b the flag is raised for good.
    ``peak`` is the largest cost closed by the last step, so the cost of
    a request is visible at the position where it is answered.  With
    ``strict`` the peak is dropped and the first vertex only opens
    requests, without answering them.
    """
    d = spec.d
    Q = [q.tolist() for q in spec.requests]
    P = [p.tolist() for p in spec.responses]
    costs = spec.costs
    bots = (BOTTOM,) * d

    def step(label, w):
        v, r, flag, _ = label
        if flag:
            return w, bots, 1, 0
        r2 = [x + costs[c].get((v, w), 0) if x != BOTTOM else BOTTOM for c, x in enumerate(r)]
        if any(x > b for x in r2):
            return w, bots, 1, 0
        peak = 0
        for c in range(d):
            if Q[c][w]:
                r2[c] = max(r2[c], 0)
            if P[c][w]:
                if r2[c] > peak:
                    peak = r2[c]
                r2[c] = BOTTOM
        return w, tuple(r2), 0, (0 if strict else peak)

    def start_label(v):
        r = [0 if Q[c][v] else BOTTOM for c in range(d)]
        if not strict:
            r = [BOTTOM if P[c][v] else x for c, x in enumerate(r)]
        return v, tuple(r), 0, 0

    return LazyMemory(step, start_label=start_label, root=arena.initial)


def counter_rank(label, b) -> int:
    _, r, flag, peak = label
    if flag:
        return b + 1
    return max(max(r, default=0), peak, 0)


def build_rr_reduction(game: RRCostGame, strict=False) -> ReductionWitness:
    """Witness of the reduction to a vertex-ranked sup request-response game.

    Threshold b+1 with the cap function as correction, b the cap bound.
    """
    spec = game.spec
    b = cap_bound(spec, game.arena)
    M = counter_memory(game.arena, spec, b, strict)
    cond = spec.condition()

    def pair_rank(pair):
        return counter_rank(M.label(pair[1]), b)

    def pair_holds(play):
        return cond.holds(play.map(lambda x: x[0]))

    def target_condition(P):
        return cond.pullback(P.vertex)

    return ReductionWitness(game, M, Cap(b + 1), b + 1, pair_rank, pair_holds,
                            target_condition, "sup", cap=b, name="request-response")


def memory_bound(game: RRCostGame) -> int:
    """Size of the full state space V × ({⊥} ∪ [b+1])^d × {0,1} × peaks."""
    b = cap_bound(game.spec, game.arena)
    d = game.spec.d
    return game.arena.n * ((b + 2) ** d * (b + 1) + 1)


@dataclass
class RRSolution:
    value: object            # optimal cost, or None when only a bound was asked
    bound: object
    wins: bool               # Player 0 achieves the query from the initial vertex
    strategy: object         # Player-0 strategy in the source game, or None
    witness: ReductionWitness
    target_strategy: object = None
    tried: list = None


def _target_wins(T: VertexRankedGame, b):
    r = solve_sup_bound(T, b)
    return bool(r.w0[T.arena.initial]), r


def solve_rr(game: RRCostGame, bound=None, strict=False) -> RRSolution:
    """Decide 'cost at most bound' or, without a bound, find the optimal cost."""
    R = build_rr_reduction(game, strict)
    T = R.target
    cap = R.cap
    tried = []

    def decide(x):
        tried.append(x)
        return _target_wins(T, x)

    if bound is not None:
        q = cap if bound == INF else min(int(bound), cap)
        won, r = decide(q)
        strat = lift_strategy(R, r.strategy_0) if won else None
        return RRSolution(None, bound, won, strat, R, r.strategy_0 if won else None, tried)
    won, r = decide(cap)
    if not won:
        return RRSolution(INF, None, False, None, R, None, tried)
    lo, hi = 0, cap
    best = r
    while lo < hi:
        mid = (lo + hi) // 2
        ok, rm = decide(mid)
        if ok:
            hi, best = mid, rm
        else:
            lo = mid + 1
    if best is r and lo != cap:
        best = decide(lo)[1]
    return RRSolution(lo, None, True, lift_strategy(R, best.strategy_0), R, best.strategy_0, tried)
