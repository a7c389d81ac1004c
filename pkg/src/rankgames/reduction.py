"""Quantitative reductions between games via memory products.

A reduction witness ties a source game to a vertex-ranked target game
over the expanded arena ``A × M``.  Costs of plays carry over through a
correction function ``f`` up to a threshold ``b``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .memory import extend_play, product_arena, product_memory
from .plays import UPPlay
from .ranked import VertexRankedGame
from .strategies import FiniteStateStrategy
from .values import INF


class ChainMismatch(ValueError):
    pass


# correction functions ----------------------------------------------------

class CorrectionFunction:
    def __call__(self, x):
        if x == INF:
            return INF
        return self.finite(int(x))

    def finite(self, x):
        raise NotImplementedError


class Cap(CorrectionFunction):
    def __init__(self, b):
        self.b = b

    def finite(self, x):
        return min(self.b, x)

    def __repr__(self):
        return f"Cap({self.b})"


class Identity(CorrectionFunction):
    def finite(self, x):
        return x

    def __repr__(self):
        return "Identity()"


class Composed(CorrectionFunction):
    """``outer ∘ inner``."""

    def __init__(self, inner, outer):
        self.inner, self.outer = inner, outer

    def finite(self, x):
        return self.outer(self.inner.finite(x))

    def __repr__(self):
        return f"Composed({self.inner!r}, {self.outer!r})"


class TableTail(CorrectionFunction):
    """Explicit values on 0..T, then affine growth with the given slope."""

    def __init__(self, table, slope=1):
        self.table = [int(x) for x in table]
        self.slope = slope

    def finite(self, x):
        T = len(self.table) - 1
        if x <= T:
            return self.table[x]
        return self.table[T] + self.slope * (x - T)

    def __repr__(self):
        return f"TableTail({self.table}, slope={self.slope})"


def correction_check(f, b, T=None) -> bool:
    """Check the three b-correction clauses over {0..T} ∪ {inf}."""
    if T is None:
        T = (b if b != INF else 0) + 8
    if b != INF and T < b:
        raise ValueError("range must reach b")
    pts = list(range(T + 1))
    vals = [f(x) for x in pts]
    if f(INF) != INF or any(v == INF for v in vals):
        return False
    below = [v for x, v in zip(pts, vals) if x < b]
    if any(u >= w for u, w in zip(below, below[1:])):
        return False
    if b == INF:
        return True
    fb = f(b)
    if any(v >= fb for v in below):
        return False
    return all(v >= fb for x, v in zip(pts, vals) if x >= b) and f(INF) >= fb


def compose_bound(f1, b1, b2):
    """Threshold of the composite of a b1- and a b2-reduction."""
    if b2 >= f1(b1):
        return b1
    # f1 is increasing below b1, so the qualifying arguments form an initial segment
    best = None
    x = 0
    while x < b1 and f1(x) <= b2:
        best = x
        x += 1
    return 0 if best is None else best


# witnesses ---------------------------------------------------------------

class ReductionWitness:
    """Source game, memory M, correction function f and threshold b.

    The target is described on pairs (v, m): ``pair_rank`` gives its rank
    and ``pair_holds`` decides its qualitative condition on a pair play.
    ``target_condition(P)`` builds the same condition over a materialized
    product ``P``.
    """

    def __init__(self, source, memory, f, b, pair_rank, pair_holds, target_condition,
                 mode="sup", cap=None, name=""):
        self.source = source
        self.memory = memory
        self.f = f
        self.b = b
        self.pair_rank = pair_rank
        self.pair_holds = pair_holds
        self.target_condition = target_condition
        self.mode = mode
        self.cap = cap
        self.name = name

    def target_cost(self, pair_play: UPPlay):
        if not self.pair_holds(pair_play):
            return INF
        seen = pair_play.cycle if self.mode == "lim" else pair_play.prefix + pair_play.cycle
        return max(self.pair_rank(x) for x in seen)

    def extend(self, play: UPPlay) -> UPPlay:
        return extend_play(self.memory, play)

    @cached_property
    def product(self):
        return product_arena(self.source.arena, self.memory)

    @cached_property
    def target(self) -> VertexRankedGame:
        P = self.product
        ranks = [self.pair_rank(pair) for pair in P.pairs]
        return VertexRankedGame(P.arena, self.target_condition(P), ranks, self.mode)

    def __repr__(self):
        return f"ReductionWitness({self.name or 'anonymous'}, f={self.f!r}, b={self.b})"


def rank_transform_reduction(game: VertexRankedGame, memory, f, b) -> ReductionWitness:
    """Reduce a vertex-ranked game to itself times M with ranks f(rk).

    Valid whenever f is nondecreasing, finite on finite arguments and a
    b-correction: then the target cost is exactly f of the source cost.
    """
    ranks = game.ranks
    cond = game.condition

    def pair_rank(pair):
        return f(int(ranks[pair[0]]))

    def pair_holds(play):
        return cond.holds(play.map(lambda x: x[0]))

    def target_condition(P):
        return cond.pullback(P.vertex)

    return ReductionWitness(game, memory, f, b, pair_rank, pair_holds, target_condition,
                            game.mode, name="rank-transform")


def identity_reduction(game: VertexRankedGame) -> ReductionWitness:
    from .memory import TRIVIAL
    return rank_transform_reduction(game, TRIVIAL, Identity(), INF)


def compose_reductions(R1: ReductionWitness, R2: ReductionWitness) -> ReductionWitness:
    """Chain R1 (G to G') with R2 (G' to G'')."""
    if R2.source is not R1.target:
        raise ChainMismatch("the second reduction must start from the first one's target")
    P1 = R1.product
    M = product_memory(R1.memory, R2.memory, P1)

    def inner_pair(x):
        v, m = x
        m1, m2 = M.label(m)
        return P1.index[(v, m1)], m2

    def pair_rank(x):
        return R2.pair_rank(inner_pair(x))

    def pair_holds(play):
        return R2.pair_holds(play.map(inner_pair))

    def target_condition(P):
        P2 = R2.product
        proj = [P2.index[inner_pair(pair)] for pair in P.pairs]
        return R2.target.condition.pullback(np.array(proj, dtype=np.int64))

    b = compose_bound(R1.f, R1.b, R2.b)
    return ReductionWitness(R1.source, M, Composed(R1.f, R2.f), b, pair_rank, pair_holds,
                            target_condition, R2.mode, cap=R1.cap,
                            name=f"{R1.name}+{R2.name}")


# strategy transfer -------------------------------------------------------

def lift_strategy(R: ReductionWitness, strategy: FiniteStateStrategy) -> FiniteStateStrategy:
    """Strategy in the source from one in the target (memory M × M2)."""
    P = R.product
    M = product_memory(R.memory, strategy.memory, P)
    low = R.source.arena.lowest_successor

    def nxt(v, m):
        m1, m2 = M.label(m)
        p = P.index.get((v, m1))
        if p is None:
            return low[v]
        return P.vertex[strategy.move(p, m2)]
    return FiniteStateStrategy(strategy.player, M, nxt)


class _SourceMemoryOnProduct:
    """Memory of a source strategy read through product vertices."""

    def __init__(self, memory, P):
        self.memory, self.P = memory, P
        self.initial = memory.initial

    def update(self, m, p):
        return self.memory.update(m, int(self.P.vertex[p]))

    def start(self, p):
        return self.memory.start(int(self.P.vertex[p]))

    def label(self, m):
        return self.memory.label(m)

    @property
    def size(self):
        return self.memory.size


def push_strategy(R: ReductionWitness, strategy: FiniteStateStrategy) -> FiniteStateStrategy:
    """Strategy in the target that follows a source strategy."""
    P = R.product
    M = R.memory

    def nxt(p, ms):
        v, m = P.pairs[p]
        w = strategy.move(v, ms)
        return P.index[(w, M.update(m, w))]
    return FiniteStateStrategy(strategy.player, _SourceMemoryOnProduct(strategy.memory, P), nxt)


# verification ------------------------------------------------------------

@dataclass
class VerificationReport:
    ok: bool
    checked: int
    counterexample: UPPlay = None
    reason: str = ""
    source_cost: object = None
    target_cost: object = None

    def __bool__(self):
        return self.ok


def verify_reduction_on_plays(R: ReductionWitness, plays, T=None) -> VerificationReport:
    """Check the cost correspondence of a witness on sample plays.

    Below b the target cost must equal f of the source cost; at or above
    b it must be at least f(b).  The derived implications (target below
    f(b') forces source below b', and so on) are checked for b' in 0..T.
    """
    f, b = R.f, R.b
    if T is None:
        T = (b if b != INF else 0) + 3
    checked = 0
    for play in plays:
        c = R.source.cost(play)
        c2 = R.target_cost(R.extend(play))
        why = None
        if c < b and c2 != f(c):
            why = f"target cost {c2} differs from f({c}) = {f(c)}"
        elif c >= b and not c2 >= f(b):
            why = f"target cost {c2} is below f(b) = {f(b)}"
        elif c2 >= f(b) and not c >= b:
            why = f"target cost {c2} reaches f(b) = {f(b)} but source cost {c} is below b"
        else:
            for bp in range(0, T + 1):
                if bp >= b and b != INF:
                    break
                fb = f(bp)
                if c2 < fb and not c < bp:
                    why = f"target cost {c2} < f({bp}) but source cost {c} >= {bp}"
                elif c2 == fb and c != bp:
                    why = f"target cost {c2} = f({bp}) but source cost {c} != {bp}"
                elif c2 > fb and not c > bp:
                    why = f"target cost {c2} > f({bp}) but source cost {c} <= {bp}"
                if why:
                    break
        if why:
            return VerificationReport(False, checked, play, why, c, c2)
        checked += 1
    return VerificationReport(True, checked)
