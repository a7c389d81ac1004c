"""Vertex-ranked games: costs are the sup or lim-sup of ranks along a play.

A play violating the underlying qualitative condition costs infinity.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arena import as_mask, attractor
from .plays import UPPlay
from .qualitative import SafetyAvoid, SolveResult, solve_cobuchi, solve_qualitative
from .strategies import PositionalStrategy, complete_choice, override
from .values import INF


class NotPrefixIndependent(ValueError):
    pass


class VertexRankedGame:
    def __init__(self, arena, condition, ranks, mode="sup"):
        if mode not in ("sup", "lim"):
            raise ValueError(f"unknown mode {mode!r}")
        ranks = np.asarray(ranks, dtype=np.int64)
        if ranks.shape != (arena.n,) or (ranks < 0).any():
            raise ValueError("ranks must be natural numbers, one per vertex")
        self.arena = arena
        self.condition = condition
        self.ranks = ranks
        self.mode = mode

    def cost(self, play: UPPlay):
        return eval_rank(self, play)

    def with_mode(self, mode) -> "VertexRankedGame":
        return VertexRankedGame(self.arena, self.condition, self.ranks, mode)

    def with_arena(self, arena) -> "VertexRankedGame":
        return VertexRankedGame(arena, self.condition, self.ranks, self.mode)

    def distinct_ranks(self) -> list:
        return sorted(set(self.ranks.tolist()))


def eval_rank(game: VertexRankedGame, play: UPPlay):
    if not game.condition.holds(play):
        return INF
    seen = play.cycle if game.mode == "lim" else play.prefix + play.cycle
    return int(max(game.ranks[v] for v in seen))


def solve_sup_bound(game: VertexRankedGame, b, alive=None) -> SolveResult:
    """Regions and strategies for 'cost at most b' under the sup semantics.

    Player 1 first attracts to a rank above b; on the rest the qualitative
    game decides.
    """
    arena = game.arena
    alive = arena.everything if alive is None else as_mask(arena.n, alive)
    high = (game.ranks > b) & alive
    A = attractor(arena, 1, high, alive)
    rest = alive & ~A.attr
    q = solve_qualitative(arena, game.condition, rest)
    w0 = q.w0 & rest
    s1 = override(q.strategy_1, A.attr, A.strategy)
    return SolveResult(w0, alive & ~w0, q.strategy_0, s1,
                       {"attractor": A.attr, "qualitative": q})


@dataclass
class Layer:
    X: np.ndarray
    A: np.ndarray
    inner: np.ndarray      # Player-0 moves inside X
    attract: np.ndarray    # Player-0 moves on A \ X


@dataclass
class LayeredDecomposition:
    layers: list = field(default_factory=list)
    residual: np.ndarray = None

    def layer_of(self) -> np.ndarray:
        n = len(self.residual)
        out = np.full(n, -1, dtype=np.int64)
        for j, lay in enumerate(self.layers):
            out[lay.A] = j
        return out


def solve_lim_prefix_independent(game: VertexRankedGame, b, alive=None):
    """Lim-sup threshold game for prefix-independent conditions.

    Peels off Player 0's attractor to her sup-winning region again and
    again; what remains is won by Player 1.  Returns (SolveResult,
    LayeredDecomposition).
    """
    if not getattr(game.condition, "prefix_independent", False):
        raise NotPrefixIndependent(type(game.condition).__name__)
    arena = game.arena
    sup = game.with_mode("sup")
    live = (arena.everything if alive is None else as_mask(arena.n, alive)).copy()
    alive0 = live.copy()
    deco = LayeredDecomposition()
    choice0 = np.full(arena.n, -1, dtype=np.int64)
    while True:
        r = solve_sup_bound(sup, b, live)
        X = r.w0
        if not X.any():
            break
        A = attractor(arena, 0, X, live)
        inner = np.where(X, r.strategy_0.choice, -1)
        outer = A.attr & ~X
        attract = np.where(outer, A.strategy, -1)
        choice0 = np.where(X, inner, choice0)
        choice0 = np.where(outer & (arena.owner == 0), attract, choice0)
        deco.layers.append(Layer(X, A.attr, inner, attract))
        live &= ~A.attr
    deco.residual = live
    w0 = alive0 & ~live
    s0 = PositionalStrategy(0, complete_choice(arena, 0, choice0))
    return SolveResult(w0, live.copy(), s0, r.strategy_1, {"layers": deco}), deco


def solve_lim_cobuchi_route(game: VertexRankedGame, b, alive=None) -> SolveResult:
    """Lim-sup threshold game over a safety condition as safety ∩ co-Büchi."""
    if not isinstance(game.condition, SafetyAvoid):
        raise TypeError("the co-Büchi route needs a safety condition")
    arena = game.arena
    alive = arena.everything if alive is None else as_mask(arena.n, alive)
    bad = attractor(arena, 1, game.condition.avoid & alive, alive)
    rest = alive & ~bad.attr
    cb = solve_cobuchi(arena, game.ranks > b, rest)
    w0 = cb.w0 & rest
    s1 = override(cb.strategy_1, bad.attr, bad.strategy)
    return SolveResult(w0, alive & ~w0, cb.strategy_0, s1, {"unsafe": bad.attr})


def choose_method(game: VertexRankedGame) -> str:
    if game.mode == "sup":
        return "sup"
    if getattr(game.condition, "prefix_independent", False):
        return "lim"
    if isinstance(game.condition, SafetyAvoid):
        return "lim-cobuchi"
    raise NotPrefixIndependent(f"no lim-sup solver for {type(game.condition).__name__}")


def solve_bound(game: VertexRankedGame, b, method=None, alive=None) -> SolveResult:
    method = method or choose_method(game)
    if method == "sup":
        return solve_sup_bound(game, b, alive)
    if method == "lim":
        return solve_lim_prefix_independent(game, b, alive)[0]
    if method == "lim-cobuchi":
        return solve_lim_cobuchi_route(game, b, alive)
    raise ValueError(f"unknown method {method!r}")


def optimize_bound(game: VertexRankedGame, method=None, start=None, calls=None):
    """Least occurring rank b such that Player 0 wins from ``start`` w.r.t. b.

    Binary search over the distinct ranks; infinity when she wins for no b.
    ``calls``, if a list, receives each bound that was tried.
    """
    v = game.arena.initial if start is None else start
    ranks = game.distinct_ranks()

    def wins(b):
        if calls is not None:
            calls.append(b)
        return bool(solve_bound(game, b, method).w0[v])

    if not wins(ranks[-1]):
        return INF
    lo, hi = 0, len(ranks) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if wins(ranks[mid]):
            hi = mid
        else:
            lo = mid + 1
    return ranks[lo]


def vertex_values(game: VertexRankedGame, method=None):
    """Optimal bound for every start vertex, plus the per-bound solutions.

    Returns (values, [(b, SolveResult), ...]) with bounds in ascending order.
    """
    values = np.full(game.arena.n, INF)
    results = []
    for b in game.distinct_ranks():
        r = solve_bound(game, b, method)
        values[r.w0 & (values == INF)] = b
        results.append((b, r))
    return values, results


def uniform_optimal_strategy(game: VertexRankedGame, method=None):
    """One Player-0 strategy that is optimal from every start vertex.

    Only available when every per-bound Player-0 strategy is positional:
    each vertex plays the move of the least bound at which it is won.
    """
    values, results = vertex_values(game, method)
    choice = np.full(game.arena.n, -1, dtype=np.int64)
    done = np.zeros(game.arena.n, dtype=bool)
    for b, r in results:
        if not r.strategy_0.is_positional():
            raise TypeError("per-bound strategies are not positional")
        new = r.w0 & ~done
        choice[new] = r.strategy_0.choice[new]
        done |= r.w0
    return values, PositionalStrategy(0, complete_choice(game.arena, 0, choice))
