import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankgames.arena import Arena
from rankgames.generators import random_ranked
from rankgames.oracle import (TooLarge, check_determinacy, oracle_value_finite_memory,
                              oracle_value_positional, sample_up_plays, strategy_pairs)
from rankgames.qualitative import SafetyAvoid
from rankgames.ranked import VertexRankedGame, optimize_bound
from rankgames.values import INF


def test_self_loop():
    g = VertexRankedGame(Arena([0], [[0]]), SafetyAvoid([False]), [3])
    res = oracle_value_positional(g.arena, g.cost)
    assert res.upper[0] == 3 and res.lower[0] == 3 and res.coincide()


def test_initial_vertex_avoided():
    g = VertexRankedGame(Arena([0, 1], [[1], [0]]), SafetyAvoid([True, False]), [0, 0])
    assert oracle_value_positional(g.arena, g.cost).upper[0] == INF


def test_two_vertices_match_solver():
    # Player 0 at 0 chooses between the cheap vertex 1 and the dear vertex 0
    g = VertexRankedGame(Arena([0, 0], [[0, 1], [1]]), SafetyAvoid([False, False]), [2, 1])
    assert oracle_value_positional(g.arena, g.cost).upper[0] == optimize_bound(g) == 2
    h = g.with_mode("lim")
    assert oracle_value_positional(h.arena, h.cost).upper[0] == optimize_bound(h) == 1


def test_guard():
    a = Arena([0] * 4, [[0, 1, 2, 3]] * 4)
    assert strategy_pairs(a, [0]) == 4 ** 4
    with pytest.raises(TooLarge):
        oracle_value_positional(a, lambda p: 0, limit=100)


@given(st.integers(0, 10 ** 6))
def test_minmax_at_least_maxmin(seed):
    rng = random.Random(seed)
    g = random_ranked(rng, rng.randint(1, 4), rng.choice(["buchi", "cobuchi", "safety"]),
                      rng.choice(["sup", "lim"]))
    res = oracle_value_positional(g.arena, g.cost)
    v = g.arena.initial
    assert res.upper[v] >= res.lower[v]
    # memory can only help the player using it
    fm = oracle_value_finite_memory(g.arena, g.cost, 2)
    assert fm.lower[v] <= fm.upper[v]
    assert fm.upper[v] <= res.upper[v]
    assert fm.lower[v] >= res.lower[v]


def test_sample_plays():
    a = Arena([0, 1, 0], [[1, 2], [0, 2], [0]])
    p1 = sample_up_plays(a, 25, seed=4)
    assert p1 == sample_up_plays(a, 25, seed=4)
    assert len(p1) == 25
    assert all(p.is_valid(a) and p.first == 0 for p in p1)
    assert sample_up_plays(a, 0) == []
    with pytest.raises(ValueError):
        sample_up_plays(a, -1)
    with pytest.raises(ValueError):
        sample_up_plays(a, 3, max_cycle=0)


@given(st.integers(0, 10 ** 6))
def test_determinacy(seed):
    rng = random.Random(seed)
    g = random_ranked(rng, rng.randint(1, 4), rng.choice(["buchi", "cobuchi", "safety"]),
                      rng.choice(["sup", "lim"]))
    for b in range(4):
        assert check_determinacy(g.arena, g.cost, b)


def test_determinacy_negative_control():
    # an evaluator that is not a function of the play breaks the check
    g = VertexRankedGame(Arena([0, 1], [[0, 1], [0, 1]]), SafetyAvoid([False, False]), [1, 2])
    calls = [0]

    def flaky(play):
        calls[0] += 1
        return calls[0] % 3

    res = oracle_value_positional(g.arena, g.cost)
    res.lower[0] = res.upper[0] - 1
    assert not check_determinacy(g.arena, g.cost, res.upper[0] - 1, oracle=res)
    assert not all(check_determinacy(g.arena, flaky, b) for b in range(3))
