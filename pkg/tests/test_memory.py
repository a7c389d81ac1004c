import random

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from rankgames.arena import Arena
from rankgames.memory import (TRIVIAL, LazyMemory, TableMemory, extend_play, product_arena,
                              product_memory, run_update)
from rankgames.oracle import counter_skeleton, sample_up_plays
from rankgames.plays import UPPlay, inf_set

from conftest import arenas


def parity(n):
    return counter_skeleton(n, 2)


def test_run_update():
    M = TableMemory([[1, 1], [0, 0]], initial=0)
    assert run_update(M, [0]) == M.initial
    assert run_update(TRIVIAL, [0, 1, 0, 1]) == 0
    # two updates after the initial vertex bring the parity back to 0
    assert run_update(parity(2), [0, 1, 0]) == 0
    assert run_update(parity(2), [0, 1]) == 1


def test_product_sizes():
    a = Arena([0, 1, 0], [[1, 2], [0], [2]])
    P = product_arena(a, TRIVIAL)
    assert P.reachable_size == 3 and P.arena.successor_lists() == a.successor_lists()
    P2 = product_arena(a, parity(3))
    assert P2.full_size == 6
    assert P2.reachable_size <= 6


def test_self_loop_product_is_two_cycle():
    a = Arena([0], [[0]])
    P = product_arena(a, parity(1))
    assert P.reachable_size == 2
    assert P.arena.successor_lists() == [[1], [0]]


def test_product_memory_trivial_parts():
    a = Arena([0, 1], [[0, 1], [0]])
    M1 = parity(2)
    P1 = product_arena(a, M1)
    M = product_memory(M1, TRIVIAL, P1)
    assert M.size == 2
    seq = [0, 1, 0, 0, 1]
    assert M.label(run_update(M, seq))[0] == run_update(M1, seq)
    both = product_memory(TRIVIAL, TRIVIAL, product_arena(a, TRIVIAL))
    assert both.size == 1 and run_update(both, seq) == both.initial


def random_prefix(rng, a, length):
    seq = [a.initial]
    for _ in range(length - 1):
        seq.append(rng.choice(a.successor_lists()[seq[-1]]))
    return seq


@given(arenas(max_n=5), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_product_memory_composition_law(a, k1, k2, seed):
    rng = random.Random(seed)
    M1 = counter_skeleton(a.n, k1)
    P1 = product_arena(a, M1)
    # M2 reads product vertices and counts visits of even pair indices
    table = np.array([[(m + (p % 2 == 0)) % k2 for p in range(P1.reachable_size)] for m in range(k2)])
    M2 = TableMemory(table)
    M = product_memory(M1, M2, P1)
    for _ in range(40):
        seq = random_prefix(rng, a, rng.randint(1, 12))
        m1 = run_update(M1, seq)
        pairs = [P1.index[(v, run_update(M1, seq[:i + 1]))] for i, v in enumerate(seq)]
        assert M.label(run_update(M, seq)) == (m1, run_update(M2, pairs))


def test_extend_play_examples():
    p = UPPlay((0,), (1, 2))
    assert extend_play(TRIVIAL, p).map(lambda x: x[0]) == p
    ext = extend_play(parity(1), UPPlay((), (0,)))
    assert len(ext.cycle) == 2 and ext.prefix == ()


@given(arenas(max_n=5), st.integers(1, 3), st.integers(0, 1000))
def test_extend_play_projects_back(a, k, seed):
    M = counter_skeleton(a.n, k)
    for play in sample_up_plays(a, 5, seed=seed):
        ext = extend_play(M, play)
        assert ext.map(lambda x: x[0]) == play
        assert frozenset(v for v, _ in inf_set(ext)) == inf_set(play)
        seq = play.unroll(3)
        for i in range(len(seq)):
            assert ext.at(i) == (seq[i], run_update(M, seq[:i + 1]))


def test_lazy_memory_interns_labels():
    M = LazyMemory(lambda lab, v: min(lab + v, 3), initial_label=0)
    m = M.update(M.initial, 2)
    assert M.label(m) == 2 and M.update(m, 5) == M.state_of(3)
    assert M.size == 3
