"""Safety games with faults.

At a Player-0 vertex a fault may override her move and send the play
along a fault edge instead.  ``val(v)`` is the least number of faults the
environment needs to force the play out of the safe set when Player 0
plays well.  Ranking vertices by ``n - val`` turns resilience into a
vertex-ranked safety game.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from .arena import Arena, as_mask, attractor
from .qualitative import SafetyAvoid
from .ranked import VertexRankedGame, optimize_bound, solve_bound, uniform_optimal_strategy
from .values import INF


class FaultArena:
    def __init__(self, arena: Arena, faults, safe):
        self.arena = arena
        self.faults = sorted({(int(u), int(v)) for u, v in faults})
        for u, v in self.faults:
            if not (0 <= u < arena.n and 0 <= v < arena.n):
                raise IndexError(f"fault edge {(u, v)} out of range")
            if arena.owner[u] != 0:
                raise ValueError(f"fault edge {(u, v)} leaves a Player-1 vertex")
        self.safe = as_mask(arena.n, safe).copy()
        self.fault_succ = [[] for _ in range(arena.n)]
        for u, v in self.faults:
            self.fault_succ[u].append(v)

    @property
    def n(self):
        return self.arena.n


def compute_val(fa: FaultArena) -> np.ndarray:
    """Layered attractors: layer k collects what k faults suffice for."""
    arena = fa.arena
    n = arena.n
    val = np.full(n, INF)
    D = attractor(arena, 1, ~fa.safe).attr
    val[D] = 0
    src = np.array([u for u, _ in fa.faults], dtype=np.int64)
    dst = np.array([v for _, v in fa.faults], dtype=np.int64)
    for k in range(1, n + 1):
        trigger = np.zeros(n, dtype=bool)
        if len(src):
            trigger[src[D[dst]]] = True
        nxt = attractor(arena, 1, D | trigger).attr
        if (nxt == D).all():
            break
        val[nxt & ~D] = k
        D = nxt
    return val


def val_oracle(fa: FaultArena, v=None):
    """Fault values from reachability games on a budget product.

    States are (u, k) with k faults left, plus commitment states
    (u, w, k) where Player 0 has chosen w and the environment either lets
    the move happen or spends a fault.  Solved by a plain fixpoint
    iteration, independent of the attractor code.
    """
    arena = fa.arena
    n = arena.n
    succ = arena.successor_lists()
    states = []
    index = {}

    def sid(s):
        if s not in index:
            index[s] = len(states)
            states.append(s)
        return index[s]

    for k in range(n + 1):
        for u in range(n):
            sid(("v", u, k))
    edges = {}
    env = {}
    for k in range(n + 1):
        for u in range(n):
            s = sid(("v", u, k))
            if arena.owner[u] == 0:
                env[s] = False
                out = []
                for w in succ[u]:
                    c = sid(("c", u, w, k))
                    out.append(c)
                    env[c] = True
                    opts = [sid(("v", w, k))]
                    if k > 0:
                        opts += [sid(("v", x, k - 1)) for x in fa.fault_succ[u]]
                    edges[c] = opts
                edges[s] = out
            else:
                env[s] = True
                edges[s] = [sid(("v", w, k)) for w in succ[u]]
    win = [s[0] == "v" and not fa.safe[s[1]] for s in states]
    changed = True
    while changed:
        changed = False
        for s in range(len(states)):
            if win[s]:
                continue
            outs = edges[s]
            if (any if env[s] else all)(win[t] for t in outs):
                win[s] = True
                changed = True
    vals = np.full(n, INF)
    for u in range(n):
        for k in range(n + 1):
            if win[index[("v", u, k)]]:
                vals[u] = k
                break
    return vals if v is None else vals[v]


def resilience_ranks(fa: FaultArena, val=None) -> np.ndarray:
    if val is None:
        val = compute_val(fa)
    n = fa.n
    return np.array([n - int(x) if x != INF else 0 for x in val], dtype=np.int64)


def build_resilience_game(fa: FaultArena, mode="sup", val=None) -> VertexRankedGame:
    return VertexRankedGame(fa.arena, SafetyAvoid(~fa.safe), resilience_ranks(fa, val), mode)


class Resilience:
    def __init__(self, bound, n, strategy, val, game):
        self.bound = bound
        self.strategy = strategy
        self.val = val
        self.game = game
        if bound == INF:
            self.value = "none"
        elif bound == 0:
            self.value = "unbounded"
        else:
            self.value = n - int(bound)

    def tolerated(self):
        """Number of faults that is guaranteed to be survived (None if none)."""
        if self.bound == INF:
            return None
        return INF if self.bound == 0 else self.value - 1


def solve_resilient(fa: FaultArena, mode="sup") -> Resilience:
    """Optimal resilience and a Player-0 strategy achieving it.

    In sup mode the strategy plays, at every vertex, the move of the least
    bound at which that vertex is won, which keeps it optimal after a
    fault moved the play elsewhere.  In lim mode (eventual resilience) the
    strategy is the one of the optimal bound.
    """
    val = compute_val(fa)
    game = build_resilience_game(fa, mode, val)
    if mode == "sup":
        values, strat = uniform_optimal_strategy(game, "sup")
        bound = values[fa.arena.initial]
        bound = INF if bound == INF else int(bound)
    else:
        bound = optimize_bound(game, "lim-cobuchi")
        strat = solve_bound(game, bound, "lim-cobuchi").strategy_0 if bound != INF else None
    if bound == INF:
        strat = None
    return Resilience(bound, fa.n, strat, val, game)


def survives_faults(fa: FaultArena, strategy, max_faults, horizon, start=None) -> bool:
    """Exhaustive check: no play with at most ``max_faults`` faults leaves
    the safe set within ``horizon`` steps (positional strategies)."""
    arena = fa.arena
    v0 = arena.initial if start is None else start
    if not fa.safe[v0]:
        return False
    seen = {(v0, 0): 0}
    queue = deque([(v0, 0)])
    while queue:
        u, j = queue.popleft()
        t = seen[(u, j)]
        if t >= horizon:
            continue
        if arena.owner[u] == 0:
            nexts = [(strategy.move(u, 0), j)]
            if j < max_faults:
                nexts += [(x, j + 1) for x in fa.fault_succ[u]]
        else:
            nexts = [(int(w), j) for w in arena.successors(u)]
        for s in nexts:
            if not fa.safe[s[0]]:
                return False
            if s not in seen:
                seen[s] = t + 1
                queue.append(s)
    return True
