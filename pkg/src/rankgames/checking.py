"""Checking claimed costs of finite-state strategies.

Fixing a Player-0 strategy leaves a game in which only Player 1 moves.
Its arena is the reachable part of ``A × memory`` with Player 0's moves
pruned to the strategy's choice; a claim "cost at most B" holds iff
Player 0 wins that one-player game for bound B.
"""
from __future__ import annotations

import itertools
from collections import deque

import numpy as np

from .arena import Arena
from .memory import product_arena
from .muller import BOTTOM, MullerGame, score_memory
from .qualitative import RequestResponse, solve_request_response
from .ranked import VertexRankedGame, solve_bound
from .reqres import RRCostGame, RRCostSpec, counter_memory
from .strategies import PositionalStrategy, simulate
from .values import INF


def restrict_to_strategy(arena: Arena, strategy, start=None):
    """Arena of the plays consistent with ``strategy``.

    Returns (arena, proj) where ``proj[p]`` is the original vertex of the
    new vertex p; vertex 0 is the start.
    """
    v0 = arena.initial if start is None else start
    M = strategy.memory
    first = (v0, M.start(v0))
    index = {first: 0}
    pairs = [first]
    succs = []
    queue = deque([first])
    while queue:
        v, m = queue.popleft()
        if arena.owner[v] == strategy.player:
            outs = [strategy.move(v, m)]
        else:
            outs = arena.successors(v).tolist()
        row = []
        for w in outs:
            pair = (w, M.update(m, w))
            if pair not in index:
                index[pair] = len(pairs)
                pairs.append(pair)
                queue.append(pair)
            row.append(index[pair])
        succs.append(row)
    proj = np.array([v for v, _ in pairs], dtype=np.int64)
    return Arena(arena.owner[proj], succs, 0), proj


def verify_claim(game, strategy, claim) -> bool:
    """True iff every play consistent with the Player-0 strategy costs at most ``claim``."""
    if strategy.player != 0:
        raise ValueError("claims are checked for Player-0 strategies")
    if claim == INF:
        if isinstance(game, MullerGame):
            return True  # every cost is at most infinity
    R, proj = restrict_to_strategy(game.arena, strategy)
    if isinstance(game, VertexRankedGame):
        g = VertexRankedGame(R, game.condition.pullback(proj), game.ranks[proj], game.mode)
        b = max(g.distinct_ranks()) if claim == INF else claim
        return bool(solve_bound(g, b).w0[0])
    if isinstance(game, RRCostGame):
        spec = game.spec
        cond = RequestResponse([Q[proj] for Q in spec.requests],
                               [P[proj] for P in spec.responses])
        if claim == INF:
            return bool(solve_request_response(R, cond).w0[0])
        costs = [{(p, q): spec.cost(c, int(proj[p]), int(proj[q])) for p, q in R.edges()}
                 for c in range(spec.d)]
        M = counter_memory(R, RRCostSpec(cond.requests, cond.responses, costs), int(claim))
        P = product_arena(R, M)
        # Player 1 alone: every reachable pair must stay below the overflow
        # flag and every play must satisfy the request-response condition
        if any(M.label(m)[2] for _, m in P.pairs):
            return False
        return bool(solve_request_response(R, cond).w0[0])
    if isinstance(game, MullerGame):
        M = score_memory(R, game.spec, cap=int(claim), proj=proj)
        P = product_arena(R, M)
        return not any(M.label(m) == BOTTOM for _, m in P.pairs)
    raise TypeError(f"unsupported game {type(game).__name__}")


def positional_strategies(arena: Arena, player, limit=10 ** 6):
    """All positional strategies of ``player`` (choices at unowned vertices are ignored)."""
    owned = [v for v in range(arena.n) if arena.owner[v] == player]
    options = [arena.successors(v).tolist() for v in owned]
    total = 1
    for o in options:
        total *= len(o)
    if total > limit:
        raise OverflowError(f"{total} positional strategies exceed the limit {limit}")
    base = arena.lowest_successor.copy()
    for combo in itertools.product(*options):
        choice = base.copy()
        choice[owned] = combo
        yield PositionalStrategy(player, choice)


def worst_against_positional(game, strategy, limit=10 ** 6):
    """Largest cost of the strategy's plays against positional opponents."""
    worst = 0
    for tau in positional_strategies(game.arena, 1 - strategy.player, limit):
        play = simulate(game.arena, strategy, tau) if strategy.player == 0 else \
            simulate(game.arena, tau, strategy)
        worst = max(worst, game.cost(play))
        if worst == INF:
            break
    return worst
