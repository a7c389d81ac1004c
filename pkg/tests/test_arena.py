import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankgames.arena import (Arena, ArenaError, DeadEnd, InitialRemoved, attractor,
                             remove_region, restrict)
from rankgames.strategies import positional, simulate

from conftest import arenas, masks


def test_validation():
    with pytest.raises(ArenaError):
        Arena([], [])
    with pytest.raises(ArenaError, match="no successor"):
        Arena([0, 1], [[1], []])
    with pytest.raises(ArenaError, match="out of range"):
        Arena([0], [[3]])
    with pytest.raises(ArenaError, match="duplicate"):
        Arena([0, 0], [[1, 1], [0]])
    with pytest.raises(ArenaError, match="owners"):
        Arena([2], [[0]])
    with pytest.raises(ArenaError, match="initial"):
        Arena([0], [[0]], initial=4)


def test_queries():
    a = Arena([0, 1, 1], [[1, 2], [2], [0]])
    assert a.num_edges == 4
    assert a.successors(0).tolist() == [1, 2]
    assert a.has_edge(1, 2) and not a.has_edge(2, 1)
    assert list(a.edges()) == [(0, 1), (0, 2), (1, 2), (2, 0)]
    assert a.lowest_successor.tolist() == [1, 2, 0]
    assert a.with_initial(2).initial == 2


def test_attractor_saturates_and_empty():
    a = Arena([0, 1, 0], [[1], [2], [0, 2]])
    full = attractor(a, 0, np.ones(3, bool))
    assert full.attr.all() and (full.level == 0).all()
    empty = attractor(a, 1, [])
    assert not empty.attr.any() and (empty.strategy == -1).all()


def test_attractor_existential_and_universal_clauses():
    # v0 of Player 1 with the single successor v1
    a = Arena([1, 0], [[1], [1]])
    A = attractor(a, 1, [1])
    assert A.attr[0] and A.level[0] == 1 and A.strategy[0] == 1
    # v0 of Player 0 can escape to v2's self-loop
    b = Arena([0, 0, 0], [[1, 2], [1], [2]])
    assert not attractor(b, 1, [1]).attr[0]
    assert attractor(b, 0, [1]).strategy[0] == 1


def test_attractor_picks_lowest_successor():
    a = Arena([0, 0, 0, 0], [[3, 2, 1], [1], [2], [3]])
    A = attractor(a, 0, [1, 2, 3])
    assert A.strategy[0] == 1


@given(arenas(), st.data())
def test_attractor_properties(a, data):
    X = data.draw(masks(a.n))
    Y = X | data.draw(masks(a.n))
    for p in (0, 1):
        A = attractor(a, p, X)
        assert (A.attr >= X).all()
        assert (attractor(a, p, A.attr).attr == A.attr).all()
        assert (attractor(a, p, Y).attr >= A.attr).all()
        # every opponent behavior reaches X within n steps
        for v in np.flatnonzero(A.attr & ~X):
            assert A.strategy[v] == -1 or A.attr[A.strategy[v]]
            if a.owner[v] == p:
                assert A.level[A.strategy[v]] < A.level[v]
            else:
                assert all(A.attr[w] and A.level[w] < A.level[v] for w in a.successors(v))


@given(arenas(), st.data())
def test_attractor_strategy_forces_visit(a, data):
    X = data.draw(masks(a.n))
    A = attractor(a, 0, X)
    choice = np.where(A.strategy >= 0, A.strategy, a.lowest_successor)
    s0 = positional(a, 0, choice)
    for w in range(a.n):
        if not A.attr[w]:
            continue
        for tau_choice in ([int(s[0]) for s in a.successor_lists()], [int(s[-1]) for s in a.successor_lists()]):
            play = simulate(a, s0, positional(a, 1, tau_choice), start=w)
            seq = play.unroll(1)
            assert any(X[v] for v in seq[:a.n + 1])


def test_remove_region_examples():
    a = Arena([1, 1, 1], [[1], [2], [2]])
    assert remove_region(a, []).arena.n == 3
    with pytest.raises(InitialRemoved):
        remove_region(a, attractor(a, 1, [2]).attr)
    b = Arena([0, 1, 0], [[0, 1], [0, 2], [2]], initial=0)
    r = remove_region(b, [2])
    assert r.new_to_old.tolist() == [0, 1]
    assert r.arena.successor_lists() == [[0, 1], [0]]
    with pytest.raises(DeadEnd):
        restrict(Arena([0, 0], [[1], [1]]), [True, False])


@given(arenas(), st.data())
def test_removing_attractor_never_strands(a, data):
    X = data.draw(masks(a.n))
    for p in (0, 1):
        A = attractor(a, p, X).attr
        if A[a.initial]:
            continue
        r = remove_region(a, A)
        assert r.arena.n == a.n - A.sum()
        for v_new, v_old in enumerate(r.new_to_old):
            kept = [w for w in a.successors(v_old) if not A[w]]
            assert sorted(r.new_to_old[r.arena.successors(v_new)].tolist()) == sorted(kept)
