import copy
import random

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from rankgames.arena import Arena
from rankgames.checking import verify_claim
from rankgames.generators import random_ranked, random_rr_requesting
from rankgames.memory import TRIVIAL
from rankgames.oracle import counter_skeleton, sample_up_plays
from rankgames.qualitative import Buchi
from rankgames.ranked import VertexRankedGame
from rankgames.reduction import (Cap, Identity, TableTail,
                                 compose_bound, compose_reductions, correction_check,
                                 identity_reduction, lift_strategy, push_strategy,
                                 rank_transform_reduction, verify_reduction_on_plays)
from rankgames.reqres import build_rr_reduction, solve_rr
from rankgames.values import INF


class Const:
    def __init__(self, c):
        self.c = c

    def __call__(self, x):
        return INF if x == INF else self.c


def test_correction_check_examples():
    for b in range(0, 12):
        assert correction_check(Cap(b), b)
    assert correction_check(Identity(), INF)
    assert not correction_check(Const(4), 2)
    assert correction_check(Const(4), 0)
    assert not correction_check(TableTail([0, 2, 1]), 3)
    assert correction_check(TableTail([0, 2, 5], slope=0), 2)


def test_compose_bound_examples():
    assert compose_bound(Cap(5), 5, 7) == 5
    assert compose_bound(Cap(5), 5, 5) == 5
    assert compose_bound(Cap(5), 5, 3) == 3
    assert compose_bound(Identity(), INF, 4) == 4
    assert compose_bound(TableTail([3, 4, 6]), 2, 1) == 0


def small_game(seed=0):
    return random_ranked(random.Random(seed), 4, "buchi", "sup", max_rank=4)


def test_trivial_second_step_keeps_witness():
    g = small_game()
    R1 = rank_transform_reduction(g, counter_skeleton(4, 2), Cap(3), 3)
    R = compose_reductions(R1, identity_reduction(R1.target))
    assert R.b == R1.b
    for play in sample_up_plays(g.arena, 30, seed=1):
        assert R.target_cost(R.extend(play)) == R1.target_cost(R1.extend(play))


def rand_corr(rng, b, top=6):
    T = b if b != INF else top
    table, x = [], rng.randint(0, 2)
    for _ in range(T + 1):
        table.append(x)
        x += rng.randint(1, 3)
    return TableTail(table, rng.choice([0, 1]) if b != INF else 1)


@given(st.integers(0, 10 ** 6))
def test_composition_associative(seed):
    rng = random.Random(seed)
    g = random_ranked(rng, rng.randint(1, 4), "buchi", rng.choice(["sup", "lim"]), max_rank=4)
    bs = [rng.choice([0, 1, 2, 3, 5, INF]) for _ in range(3)]
    fs = [rand_corr(rng, b) for b in bs]
    R1 = rank_transform_reduction(g, TRIVIAL, fs[0], bs[0])
    R2 = rank_transform_reduction(R1.target, counter_skeleton(R1.target.arena.n, 2), fs[1], bs[1])
    R12 = compose_reductions(R1, R2)
    left = compose_reductions(R12, rank_transform_reduction(R12.target, TRIVIAL, fs[2], bs[2]))
    R3 = rank_transform_reduction(R2.target, TRIVIAL, fs[2], bs[2])
    right = compose_reductions(R1, compose_reductions(R2, R3))
    assert left.b == right.b
    assert all(left.f(x) == right.f(x) for x in list(range(12)) + [INF])
    plays = sample_up_plays(g.arena, 10, seed=seed % 1000)
    assert verify_reduction_on_plays(left, plays) and verify_reduction_on_plays(right, plays)


def test_identity_reduction_passes():
    g = small_game(3)
    R = identity_reduction(g)
    rep = verify_reduction_on_plays(R, sample_up_plays(g.arena, 50, seed=0))
    assert rep.ok and rep.checked == 50


def test_corrupted_rank_function_is_caught():
    rng = random.Random(7)
    for _ in range(50):
        g = random_rr_requesting(rng, 3, 1, 2)
        R = build_rr_reduction(g)
        bad = copy.copy(R)
        bad.pair_rank = lambda pair, R=R: R.pair_rank(pair) + 1
        rep = verify_reduction_on_plays(bad, sample_up_plays(g.arena, 50, seed=1))
        if not rep.ok:
            assert rep.counterexample is not None and rep.reason
            return
    raise AssertionError("mutation never detected")


@given(st.integers(0, 10 ** 6))
def test_downward_closure(seed):
    rng = random.Random(seed)
    g = random_rr_requesting(rng, rng.randint(2, 4), 1, rng.randint(1, 2))
    R = build_rr_reduction(g)
    plays = sample_up_plays(g.arena, 20, seed=seed % 997)
    assert verify_reduction_on_plays(R, plays)
    for b in range(0, min(R.b, 6)):
        lower = copy.copy(R)
        lower.b = b
        assert verify_reduction_on_plays(lower, plays)


def test_lift_and_push_strategies():
    rng = random.Random(11)
    checked = 0
    for _ in range(40):
        g = random_rr_requesting(rng, rng.randint(2, 4), 1, 2)
        sol = solve_rr(g)
        if sol.value == INF:
            continue
        R, s = sol.witness, sol.strategy
        assert s.memory.size == R.memory.size * sol.target_strategy.memory.size
        assert verify_claim(g, s, sol.value)
        if sol.value > 0:
            assert not verify_claim(g, s, sol.value - 1)
        assert verify_claim(R.target, push_strategy(R, s), sol.value)
        checked += 1
    assert checked >= 10


def test_lift_with_trivial_memory_is_same_strategy():
    a = Arena([0, 1, 0], [[1, 2], [0, 2], [2, 0]])
    g = VertexRankedGame(a, Buchi(np.ones(3, bool)), [1, 2, 0])
    R = identity_reduction(g)
    from rankgames.strategies import positional, simulate
    s = positional(R.target.arena, 0, [2, 0, 2])
    lifted = lift_strategy(R, s)
    tau = positional(a, 1, [0, 0, 0])
    assert simulate(a, lifted, tau) == simulate(R.target.arena, s, tau).map(
        lambda p: int(R.product.vertex[p]))
