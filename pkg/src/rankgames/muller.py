"""Quantitative Muller games measured by McNaughton scores.

The score of a set F counts how often F has been visited completely
without leaving F.  The cost of a play is the supremum over its prefixes
of the largest score of a set in F_1; it is infinite exactly when the set
of vertices visited infinitely often belongs to F_1.  A winning Player 0
can always keep every score at most 2, which makes the game reducible to
a safety game over score states.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .memory import LazyMemory
from .plays import UPPlay, inf_set
from .qualitative import SafetyAvoid
from .ranked import solve_sup_bound
from .reduction import Cap, ReductionWitness, lift_strategy
from .values import INF

BOTTOM = ("bottom",)


class MullerSpec:
    """Explicit family F_1 of nonempty vertex sets; F_0 is everything else."""

    def __init__(self, family, n=None):
        sets = []
        for F in family:
            F = frozenset(int(v) for v in F)
            if not F:
                raise ValueError("sets in the family must be nonempty")
            if n is not None and (min(F) < 0 or max(F) >= n):
                raise ValueError(f"unknown vertex in {sorted(F)}")
            if F in sets:
                raise ValueError(f"duplicate set {sorted(F)}")
            sets.append(F)
        self.family = sets
        self.masks = [sum(1 << v for v in F) for F in sets]

    def __contains__(self, X):
        return frozenset(X) in self.family


def score_step(state, F, v):
    """One step of the score recurrence for a single set F (as a bitmask).

    ``state`` is (accumulator bitmask, score).
    """
    acc, score = state
    if v < 0:
        raise IndexError("vertex index out of range")
    bit = 1 << v
    if not F & bit:
        return 0, 0
    if acc | bit == F:
        return 0, score + 1
    return acc | bit, score


def _step_all(spec, states, v):
    return tuple(score_step(s, F, v) for s, F in zip(states, spec.masks))


def _base(spec):
    return tuple((0, 0) for _ in spec.masks)


def score_of_prefix(spec: MullerSpec, prefix) -> int:
    states = _base(spec)
    for v in prefix:
        states = _step_all(spec, states, v)
    return max((s for _, s in states), default=0)


def eval_quantmuller(spec: MullerSpec, play: UPPlay):
    if inf_set(play) in spec:
        return INF
    states = _base(spec)
    best = 0
    for v in play.prefix:
        states = _step_all(spec, states, v)
        best = max(best, max((s for _, s in states), default=0))
    prev = None
    while True:
        before = tuple(s for _, s in states)
        for v in play.cycle:
            states = _step_all(spec, states, v)
            best = max(best, max((s for _, s in states), default=0))
        accs = tuple(a for a, _ in states)
        grew = tuple(s for _, s in states) != before
        if accs == prev and not grew:
            return best
        prev = accs


class MullerGame:
    def __init__(self, arena, spec: MullerSpec):
        self.arena = arena
        self.spec = spec

    def cost(self, play: UPPlay):
        return eval_quantmuller(self.spec, play)


def score_memory(arena, spec: MullerSpec, cap=2, proj=None) -> LazyMemory:
    """Memory over classes of prefixes with all scores at most ``cap``.

    A class is represented by (last vertex, per-set accumulator and
    score); exceeding the cap leads to the absorbing BOTTOM state.
    ``proj`` maps arena vertices to the vertices the family talks about,
    for arenas that are themselves products.
    """
    def step(label, w):
        if label == BOTTOM:
            return BOTTOM
        states = _step_all(spec, label[1], w if proj is None else int(proj[w]))
        if any(s > cap for _, s in states):
            return BOTTOM
        return w, states

    def start_label(v):
        return step((None, _base(spec)), v)

    return LazyMemory(step, start_label=start_label, root=arena.initial)


def score_rank(label, cap=2) -> int:
    if label == BOTTOM:
        return cap + 1
    return max((s for _, s in label[1]), default=0)


def build_muller_reduction(game: MullerGame) -> ReductionWitness:
    """Witness reducing to a vertex-ranked sup-safety game, threshold 3."""
    M = score_memory(game.arena, game.spec)

    def pair_rank(pair):
        return score_rank(M.label(pair[1]))

    def pair_holds(play):
        return not any(M.label(m) == BOTTOM for _, m in play.vertices())

    def target_condition(P):
        return SafetyAvoid(np.array([M.label(m) == BOTTOM for _, m in P.pairs], dtype=bool))

    return ReductionWitness(game, M, Cap(3), 3, pair_rank, pair_holds, target_condition,
                            "sup", cap=2, name="muller")


@dataclass
class MullerSolution:
    value: object
    bound: object
    wins: bool
    qualitative_winner: int
    strategy: object
    witness: ReductionWitness
    target_strategy: object = None


def solve_muller(game: MullerGame, bound=None) -> MullerSolution:
    """Optimal cost in {0, 1, 2, inf}, or the answer for a given bound."""
    R = build_muller_reduction(game)
    T = R.target
    v = T.arena.initial
    results = {}

    def decide(b):
        if b not in results:
            results[b] = solve_sup_bound(T, b)
        return bool(results[b].w0[v])

    value = next((b for b in (0, 1, 2) if decide(b)), INF)
    qual = 0 if value != INF else 1
    if bound is not None:
        b = 2 if bound == INF else min(int(bound), 2)
        won = decide(b)
        s = results[b].strategy_0
        return MullerSolution(None, bound, won, qual, lift_strategy(R, s) if won else None, R,
                              s if won else None)
    if value == INF:
        return MullerSolution(INF, None, False, 1, None, R)
    s = results[value].strategy_0
    return MullerSolution(value, None, True, 0, lift_strategy(R, s), R, s)
