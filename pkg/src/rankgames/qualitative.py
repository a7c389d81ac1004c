"""Qualitative winning conditions: safety, Büchi, co-Büchi, request-response.

Every solver takes an optional ``alive`` mask and then works in the
subgame induced by it; regions returned are subsets of ``alive``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arena import Arena, as_mask, attractor, lowest_successor_in
from .memory import LazyMemory, product_arena
from .plays import UPPlay
from .strategies import FiniteStateStrategy, PositionalStrategy, complete_choice


def _pull(mask, proj):
    return np.asarray(mask)[np.asarray(proj, dtype=np.int64)]


@dataclass(eq=False)
class SafetyAvoid:
    """Never visit a vertex of ``avoid``."""
    avoid: np.ndarray
    prefix_independent = False

    def holds(self, play: UPPlay) -> bool:
        return not any(self.avoid[v] for v in play.vertices())

    def pullback(self, proj):
        return SafetyAvoid(_pull(self.avoid, proj))


def safety_from_safe_set(safe) -> SafetyAvoid:
    """Adapter for the 'always stay inside S' convention."""
    return SafetyAvoid(~np.asarray(safe, dtype=bool))


@dataclass(eq=False)
class Buchi:
    target: np.ndarray
    prefix_independent = True

    def holds(self, play: UPPlay) -> bool:
        return any(self.target[v] for v in play.cycle)

    def pullback(self, proj):
        return Buchi(_pull(self.target, proj))


@dataclass(eq=False)
class CoBuchi:
    """Visit ``forbidden`` only finitely often."""
    forbidden: np.ndarray
    prefix_independent = True

    def holds(self, play: UPPlay) -> bool:
        return not any(self.forbidden[v] for v in play.cycle)

    def pullback(self, proj):
        return CoBuchi(_pull(self.forbidden, proj))


@dataclass(eq=False)
class RequestResponse:
    """Every request ``Q[c]`` is eventually followed by a response ``P[c]``."""
    requests: list
    responses: list
    prefix_independent = False

    @property
    def d(self):
        return len(self.requests)

    def holds(self, play: UPPlay) -> bool:
        cyc = set(play.cycle)
        for Q, P in zip(self.requests, self.responses):
            answered_in_cycle = any(P[v] for v in cyc)
            if any(Q[v] for v in cyc) and not answered_in_cycle:
                return False
            if answered_in_cycle:
                continue
            # requests in the prefix must be answered later in the prefix
            pending = False
            for v in play.prefix:
                if Q[v]:
                    pending = True
                if P[v]:
                    pending = False
            if pending:
                return False
        return True

    def pullback(self, proj):
        return RequestResponse([_pull(Q, proj) for Q in self.requests],
                               [_pull(P, proj) for P in self.responses])


def up_membership(condition, play: UPPlay) -> bool:
    return condition.holds(play)


@dataclass
class SolveResult:
    w0: np.ndarray
    w1: np.ndarray
    strategy_0: FiniteStateStrategy
    strategy_1: FiniteStateStrategy
    extra: dict = field(default_factory=dict)

    def winner(self, v) -> int:
        if self.w0[v]:
            return 0
        if self.w1[v]:
            return 1
        raise KeyError(f"vertex {v} is outside the solved subgame")


def _alive(arena, alive):
    return arena.everything if alive is None else as_mask(arena.n, alive)


def solve_safety(arena: Arena, avoid, alive=None) -> SolveResult:
    """Player 0 avoids ``avoid``; Player 1 attracts to it."""
    alive = _alive(arena, alive)
    avoid = as_mask(arena.n, avoid)
    a = attractor(arena, 1, avoid & alive, alive)
    w1 = a.attr
    w0 = alive & ~w1
    stay = lowest_successor_in(arena, 0, w0)
    return SolveResult(w0, w1, PositionalStrategy(0, complete_choice(arena, 0, stay)),
                       PositionalStrategy(1, complete_choice(arena, 1, a.strategy)))


def _buchi(arena, p, target, alive):
    """Player p's Büchi game on ``target`` within ``alive``.

    Returns (W_p, choice for p, choice for the opponent).
    """
    n = arena.n
    q = 1 - p
    live = alive.copy()
    opp = np.full(n, -1, dtype=np.int64)
    while live.any():
        reach = attractor(arena, p, target & live, live)
        trap = live & ~reach.attr
        if not trap.any():
            break
        lowest_successor_in(arena, q, trap, opp)
        lost = attractor(arena, q, trap, live)
        outer = lost.attr & ~trap
        opp[outer] = lost.strategy[outer]
        live &= ~lost.attr
    mine = np.full(n, -1, dtype=np.int64)
    if live.any():
        lowest_successor_in(arena, p, live, mine)
        steer = reach.attr & ~target & (arena.owner == p)
        mine[steer] = reach.strategy[steer]
    return live, mine, opp


def solve_buchi(arena: Arena, target, alive=None) -> SolveResult:
    alive = _alive(arena, alive)
    target = as_mask(arena.n, target)
    w0, c0, c1 = _buchi(arena, 0, target, alive)
    return SolveResult(w0, alive & ~w0, PositionalStrategy(0, complete_choice(arena, 0, c0)),
                       PositionalStrategy(1, complete_choice(arena, 1, c1)))


def solve_cobuchi(arena: Arena, forbidden, alive=None) -> SolveResult:
    """Player 0 visits ``forbidden`` finitely often: Player 1's Büchi game."""
    alive = _alive(arena, alive)
    forbidden = as_mask(arena.n, forbidden)
    w1, c1, c0 = _buchi(arena, 1, forbidden, alive)
    return SolveResult(alive & ~w1, w1, PositionalStrategy(0, complete_choice(arena, 0, c0)),
                       PositionalStrategy(1, complete_choice(arena, 1, c1)))


def request_masks(arena_n, condition: RequestResponse):
    """Per-vertex bitmasks of requested and answered pairs."""
    qbits = np.zeros(arena_n, dtype=np.int64)
    pbits = np.zeros(arena_n, dtype=np.int64)
    for c, (Q, P) in enumerate(zip(condition.requests, condition.responses)):
        qbits[np.asarray(Q, dtype=bool)] |= 1 << c
        pbits[np.asarray(P, dtype=bool)] |= 1 << c
    return qbits.tolist(), pbits.tolist()


def round_robin_memory(arena_n, condition: RequestResponse, root=0) -> LazyMemory:
    """Memory (open requests, robin pointer) turning request-response into Büchi.

    A state is accepting when the robin pair is not open; the pointer then
    moves on at the next step.  With d pairs there are at most d·2^d states.
    """
    qbits, pbits = request_masks(arena_n, condition)
    d = max(condition.d, 1)

    def step(label, v):
        open_, robin = label
        if not open_ >> robin & 1:
            robin = (robin + 1) % d
        return (open_ | qbits[v]) & ~pbits[v], robin

    def start_label(v):
        return qbits[v] & ~pbits[v], 0

    return LazyMemory(step, start_label=start_label, root=root)


def rr_accepting(label) -> bool:
    open_, robin = label
    return not open_ >> robin & 1


def solve_request_response(arena: Arena, condition: RequestResponse, alive=None) -> SolveResult:
    alive = _alive(arena, alive)
    M = round_robin_memory(arena.n, condition, arena.initial)
    roots = np.flatnonzero(alive).tolist()
    if not roots:
        empty = np.zeros(arena.n, dtype=bool)
        return SolveResult(empty, empty.copy(), PositionalStrategy(0, complete_choice(arena, 0, [-1] * arena.n)),
                           PositionalStrategy(1, complete_choice(arena, 1, [-1] * arena.n)))
    P = product_arena(arena, M, roots=roots, alive=alive)
    acc = np.array([rr_accepting(M.label(m)) for _, m in P.pairs], dtype=bool)
    res = solve_buchi(P.arena, acc)
    w0 = P.project(res.w0) & alive
    return SolveResult(w0, alive & ~w0, lift_product_strategy(arena, P, res.strategy_0),
                       lift_product_strategy(arena, P, res.strategy_1),
                       {"product": P, "product_result": res})


def lift_product_strategy(arena, P, strategy: PositionalStrategy) -> FiniteStateStrategy:
    """A positional strategy on A × M seen as a finite-state strategy on A."""
    choice = strategy.choice
    vert = P.vertex
    index = P.index
    low = arena.lowest_successor

    def nxt(v, m):
        p = index.get((v, m))
        if p is None:
            return low[v]
        return vert[choice[p]]
    return FiniteStateStrategy(strategy.player, P.memory, nxt)


def solve_qualitative(arena: Arena, condition, alive=None) -> SolveResult:
    if isinstance(condition, SafetyAvoid):
        return solve_safety(arena, condition.avoid, alive)
    if isinstance(condition, Buchi):
        return solve_buchi(arena, condition.target, alive)
    if isinstance(condition, CoBuchi):
        return solve_cobuchi(arena, condition.forbidden, alive)
    if isinstance(condition, RequestResponse):
        return solve_request_response(arena, condition, alive)
    raise TypeError(f"unsupported condition {type(condition).__name__}")
