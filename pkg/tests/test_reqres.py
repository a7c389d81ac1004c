import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankgames.arena import Arena
from rankgames.checking import worst_against_positional
from rankgames.generators import random_rr, random_rr_requesting
from rankgames.oracle import sample_up_plays
from rankgames.plays import UPPlay
from rankgames.qualitative import solve_request_response
from rankgames.reduction import verify_reduction_on_plays
from rankgames.reqres import (BOTTOM, RRCostGame, RRCostSpec, build_rr_reduction, cap_bound,
                              counter_memory, counter_rank, eval_cost_reqres, memory_bound,
                              solve_rr)
from rankgames.values import INF


def mask(n, *vs):
    m = np.zeros(n, dtype=bool)
    m[list(vs)] = True
    return m


def test_cost_examples():
    n = 3
    none = RRCostSpec([mask(n)], [mask(n, 0)])
    assert eval_cost_reqres(none, UPPlay((), (0, 1, 2))) == 0
    open_ = RRCostSpec([mask(n, 1)], [mask(n, 0)], [{(1, 2): 1, (2, 2): 1}])
    assert eval_cost_reqres(open_, UPPlay((0, 1), (2,))) == INF
    both = RRCostSpec([mask(n, 1)], [mask(n, 1)], [{(0, 1): 4, (1, 2): 4}])
    assert eval_cost_reqres(both, UPPlay((0, 1), (2,))) == 0
    tri = RRCostSpec([mask(n, 0)], [mask(n, 2)], [{(0, 1): 1, (1, 2): 1, (2, 0): 1}])
    assert eval_cost_reqres(tri, UPPlay((), (0, 1, 2))) == 2


def test_cost_uses_first_answer_across_periods():
    spec = RRCostSpec([mask(3, 2)], [mask(3, 1)], [{(2, 0): 3, (0, 1): 1, (1, 2): 5}])
    # request at 2 is answered at the next period's 1: cost 3 + 1
    assert eval_cost_reqres(spec, UPPlay((), (0, 1, 2))) == 4


def test_cap_bound_arithmetic():
    def spec(d, W):
        return RRCostSpec([mask(2)] * d, [mask(2)] * d, [{(0, 1): W}] * d)
    assert cap_bound(spec(1, 1), Arena([0, 0], [[1], [0]])) == 4
    assert cap_bound(spec(1, 0), Arena([0, 0], [[1], [0]])) == 0
    assert cap_bound(spec(2, 2), Arena([0, 0, 0], [[1], [2], [0]])) == 48


def test_counter_memory_steps():
    a = Arena([0, 0, 0], [[1], [2], [0]])
    spec = RRCostSpec([mask(3, 0)], [mask(3)], [{(0, 1): 2, (1, 2): 3, (2, 0): 0}])
    M = counter_memory(a, spec, 10)
    m = M.start(0)
    assert M.label(m) == (0, (0,), 0, 0)
    m = M.update(m, 1)
    assert M.label(m)[1] == (2,)
    m = M.update(m, 2)
    assert M.label(m)[1] == (5,)
    M4 = counter_memory(a, spec, 4)
    m = M4.update(M4.update(M4.start(0), 1), 2)
    assert M4.label(m) == (2, (BOTTOM,), 1, 0) and counter_rank(M4.label(m), 4) == 5
    assert counter_rank(M4.label(M4.update(m, 0)), 4) == 5


def test_zero_costs_give_rank_zero():
    rng = random.Random(2)
    for _ in range(20):
        g = random_rr(rng, 4, 2, 0)
        R = build_rr_reduction(g)
        T = R.target
        P = R.product
        for p, (_, m) in enumerate(P.pairs):
            if not R.memory.label(m)[2]:
                assert T.ranks[p] == 0


def test_solve_examples():
    # Player 1 keeps the request at 0 open by looping at 1
    a = Arena([0, 1], [[1], [1, 0]])
    g = RRCostGame(a, RRCostSpec([mask(2, 0)], [mask(2, 0)], [{(0, 1): 1}]))
    assert solve_rr(g).value == 0
    g2 = RRCostGame(a, RRCostSpec([mask(2, 0)], [mask(2)], [{}]))
    assert solve_rr(g2).value == INF
    zero = RRCostGame(a, RRCostSpec([mask(2, 1)], [mask(2, 0, 1)], [{(0, 1): 0}]))
    assert solve_rr(zero).value == 0
    b = Arena([0, 0, 0], [[1, 2], [0], [0]])
    g3 = RRCostGame(b, RRCostSpec([mask(3, 0)], [mask(3, 1, 2)],
                                  [{(0, 1): 5, (0, 2): 2, (1, 0): 0, (2, 0): 0}]))
    sol = solve_rr(g3)
    assert sol.value == 2 and sol.wins
    assert solve_rr(g3, bound=1).wins is False and solve_rr(g3, bound=2).wins


@given(st.integers(0, 10 ** 6))
def test_value_properties(seed):
    rng = random.Random(seed)
    g = random_rr_requesting(rng, rng.randint(2, 4), rng.randint(1, 2), rng.randint(1, 2))
    sol = solve_rr(g)
    qual = solve_request_response(g.arena, g.spec.condition()).w0[g.arena.initial]
    assert (sol.value != INF) == qual
    if sol.value != INF:
        assert sol.value <= cap_bound(g.spec, g.arena)
        assert worst_against_positional(g, sol.strategy) <= sol.value
    assert sol.witness.memory.size <= memory_bound(g)


@given(st.integers(0, 10 ** 6))
def test_reduction_contract(seed):
    rng = random.Random(seed)
    g = random_rr(rng, rng.randint(1, 6), rng.randint(0, 2), rng.randint(0, 2))
    R = build_rr_reduction(g)
    assert verify_reduction_on_plays(R, sample_up_plays(g.arena, 50, seed=seed % 1009))


def test_strict_mode_misses_answer_cost():
    # with the reset applied verbatim no pair carries the answered cost
    a = Arena([0, 0], [[1], [0]])
    g = RRCostGame(a, RRCostSpec([mask(2, 0)], [mask(2, 1)], [{(0, 1): 2, (1, 0): 0}]))
    play = UPPlay((), (0, 1))
    assert verify_reduction_on_plays(build_rr_reduction(g), [play])
    assert not verify_reduction_on_plays(build_rr_reduction(g, strict=True), [play])


def test_pair_validation():
    with pytest.raises(ValueError):
        RRCostSpec([mask(2)], [])
    with pytest.raises(ValueError):
        RRCostSpec([mask(2)], [mask(2)], [{(0, 1): -1}])
