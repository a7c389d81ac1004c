import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankgames.arena import Arena, attractor
from rankgames.generators import random_fault_arena
from rankgames.oracle import sample_up_plays
from rankgames.resilience import (FaultArena, build_resilience_game, compute_val,
                                  resilience_ranks, solve_resilient, survives_faults, val_oracle)
from rankgames.values import INF


def test_fault_sources_must_belong_to_player_0():
    a = Arena([0, 1], [[1], [0]])
    with pytest.raises(ValueError):
        FaultArena(a, [(1, 0)], [True, True])
    with pytest.raises(IndexError):
        FaultArena(a, [(0, 5)], [True, True])


def test_no_faults_gives_zero_or_infinity():
    rng = random.Random(1)
    for _ in range(30):
        fa = random_fault_arena(rng, rng.randint(1, 6), max_faults=0)
        W1 = attractor(fa.arena, 1, ~fa.safe).attr
        val = compute_val(fa)
        assert (val[W1] == 0).all() and (val[~W1] == INF).all()


def test_single_fault_example():
    # 0 (Player 0) is safe and can stay at 0, a fault edge leads to the unsafe 1
    a = Arena([0, 1], [[0], [1]])
    fa = FaultArena(a, [(0, 1)], [True, False])
    assert compute_val(fa).tolist() == [1, 0]
    assert val_oracle(fa, 0) == 1 and val_oracle(fa, 1) == 0
    # a second layer: 2 can only be pushed to 0
    b = Arena([0, 1, 0], [[0], [1], [2]])
    fb = FaultArena(b, [(0, 1), (2, 0)], [True, False, True])
    assert compute_val(fb).tolist() == [1, 0, 2]
    assert val_oracle(fb).tolist() == [1, 0, 2]


def test_val_oracle_without_faults():
    a = Arena([0, 0], [[0, 1], [1]])
    fa = FaultArena(a, [], [True, True])
    assert val_oracle(fa, 0) == INF


@given(st.integers(0, 10 ** 6))
def test_compute_val_matches_oracle(seed):
    rng = random.Random(seed)
    fa = random_fault_arena(rng, rng.randint(1, 6), max_faults=rng.randint(0, 3))
    assert (compute_val(fa) == val_oracle(fa)).all()


def test_ranks():
    a = Arena([0] * 5, [[0]] * 5)
    fa = FaultArena(a, [], [True] * 5)
    assert resilience_ranks(fa).tolist() == [0] * 5
    val = np.array([0, 1, 3, INF, 2])
    rk = resilience_ranks(fa, val)
    assert rk.tolist() == [5, 4, 2, 0, 3]
    finite = [v for v in range(5) if val[v] != INF]
    for u in finite:
        for v in finite:
            if val[u] < val[v]:
                assert rk[u] > rk[v]


def test_solve_examples():
    a = Arena([1, 0], [[1], [1]])
    lost = FaultArena(a, [], [True, False])
    assert solve_resilient(lost).value == "none"
    b = Arena([0, 1], [[0, 1], [1]])
    safe = FaultArena(b, [], [True, True])
    r = solve_resilient(safe)
    assert r.value == "unbounded" and r.tolerated() == INF


def test_five_vertex_instance():
    # 0 -> 1 -> 2 loop, each Player-0 step may be knocked one vertex toward 4 (unsafe)
    a = Arena([0, 0, 0, 0, 1], [[1], [2], [0], [3], [4]])
    fa = FaultArena(a, [(0, 3), (3, 4), (1, 3), (2, 3)], [True, True, True, True, False])
    r = solve_resilient(fa)
    assert compute_val(fa).tolist() == [2, 2, 2, 1, 0]
    assert r.value == 2 and r.bound == 3
    assert survives_faults(fa, r.strategy, 1, 10)
    assert not survives_faults(fa, r.strategy, 2, 10)


@given(st.integers(0, 10 ** 6))
def test_strategy_survives_fewer_faults(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    fa = random_fault_arena(rng, n, max_faults=3, p_safe=0.85)
    r = solve_resilient(fa)
    if r.bound != INF:
        assert survives_faults(fa, r.strategy, n - r.bound - 1, 2 * n)
        if r.value != "unbounded":
            # the value is tight for the returned strategy
            assert not survives_faults(fa, r.strategy, n - r.bound, 4 * n * n)


@given(st.integers(0, 10 ** 6))
def test_eventual_resilience_at_least_as_good(seed):
    rng = random.Random(seed)
    fa = random_fault_arena(rng, rng.randint(1, 5), max_faults=3, p_safe=0.85)
    sup, lim = solve_resilient(fa), solve_resilient(fa, "lim")
    assert lim.bound <= sup.bound
    assert (lim.bound == INF) == (sup.bound == INF)


@given(st.integers(0, 10 ** 6))
def test_rank_val_duality(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    fa = random_fault_arena(rng, n, max_faults=2)
    g = build_resilience_game(fa)
    val = compute_val(fa)
    for play in sample_up_plays(fa.arena, 10, seed=seed % 991):
        for b in range(n):
            ok = all(val[v] >= n - b or val[v] == INF for v in play.vertices())
            assert (g.cost(play) <= b) == ok
