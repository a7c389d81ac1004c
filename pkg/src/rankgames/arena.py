"""Game arenas, vertex sets, attractors and region removal.

Vertices are dense integers ``0..n-1``.  Successor lists are stored in
compressed sparse row form (``ptr``/``succ``); vertex sets are boolean
numpy masks of length ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels


class ArenaError(ValueError):
    pass


class InitialRemoved(ArenaError):
    """The region to remove contains the initial vertex."""


class DeadEnd(ArenaError):
    """A kept vertex would be left without successors."""


class Arena:
    """Finite game graph with ownership partition and initial vertex.

    ``owner[v]`` is 0 or 1.  Successor order is kept as given; all
    tie-breaking in the solvers uses the lowest vertex index instead.
    """

    def __init__(self, owner, successors, initial=0):
        owner = np.asarray(owner, dtype=np.int8)
        n = len(owner)
        if len(successors) != n:
            raise ArenaError("owner and successor lists differ in length")
        deg = np.fromiter((len(s) for s in successors), dtype=np.int64, count=n)
        ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=ptr[1:])
        flat = [int(w) for s in successors for w in s]
        succ = np.array(flat, dtype=np.int64)
        self._setup(owner, ptr, succ, initial, check=True)

    @classmethod
    def from_csr(cls, owner, ptr, succ, initial=0, check=True) -> "Arena":
        a = cls.__new__(cls)
        a._setup(np.asarray(owner, dtype=np.int8), np.asarray(ptr, dtype=np.int64),
                 np.asarray(succ, dtype=np.int64), initial, check)
        return a

    def _setup(self, owner, ptr, succ, initial, check):
        n = len(owner)
        self.n = n
        self.owner = owner
        self.ptr = ptr
        self.succ = succ
        self.initial = int(initial)
        if check:
            self._validate()
        for arr in (self.owner, self.ptr, self.succ):
            arr.setflags(write=False)

    def _validate(self):
        n = self.n
        if n <= 0:
            raise ArenaError("an arena needs at least one vertex")
        if not np.isin(self.owner, (0, 1)).all():
            raise ArenaError("owners must be 0 or 1")
        if len(self.ptr) != n + 1 or self.ptr[0] != 0 or self.ptr[-1] != len(self.succ):
            raise ArenaError("malformed successor offsets")
        deg = np.diff(self.ptr)
        if (deg <= 0).any():
            v = int(np.flatnonzero(deg <= 0)[0])
            raise ArenaError(f"vertex {v} has no successor")
        if len(self.succ) and (self.succ.min() < 0 or self.succ.max() >= n):
            raise ArenaError("successor index out of range")
        if not 0 <= self.initial < n:
            raise ArenaError("initial vertex out of range")
        keys = np.repeat(np.arange(n, dtype=np.int64), deg) * n + self.succ
        if len(np.unique(keys)) != len(keys):
            raise ArenaError("duplicate successor")

    # basic queries
    @property
    def num_edges(self) -> int:
        return len(self.succ)

    def successors(self, v) -> np.ndarray:
        return self.succ[self.ptr[v]:self.ptr[v + 1]]

    def successor_lists(self) -> list:
        return [self.successors(v).tolist() for v in range(self.n)]

    def has_edge(self, u, v) -> bool:
        return bool((self.successors(u) == v).any())

    def edges(self):
        for u in range(self.n):
            for v in self.successors(u):
                yield u, int(v)

    def vertices_of(self, player) -> np.ndarray:
        return self.owner == player

    def with_initial(self, v) -> "Arena":
        return Arena.from_csr(self.owner, self.ptr, self.succ, v, check=False)

    @cached_property
    def _pred(self):
        deg = np.diff(self.ptr)
        src = np.repeat(np.arange(self.n, dtype=np.int64), deg)
        order = np.argsort(self.succ, kind="stable")
        pred = src[order]
        pptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.succ, minlength=self.n), out=pptr[1:])
        return pptr, pred

    @cached_property
    def lowest_successor(self) -> np.ndarray:
        return np.minimum.reduceat(self.succ, self.ptr[:-1])

    @cached_property
    def everything(self) -> np.ndarray:
        m = np.ones(self.n, dtype=bool)
        m.setflags(write=False)
        return m

    def __repr__(self):
        return f"Arena(n={self.n}, edges={self.num_edges}, initial={self.initial})"


def as_mask(n, X) -> np.ndarray:
    """Boolean mask of length n from a mask (array or sequence of bools), indices or None."""
    if X is None:
        return np.zeros(n, dtype=bool)
    if not isinstance(X, np.ndarray) and not hasattr(X, "__len__"):
        X = list(X)
    if not isinstance(X, np.ndarray) and len(X) and all(isinstance(x, (bool, np.bool_)) for x in X):
        X = np.array(X, dtype=bool)
    if isinstance(X, np.ndarray) and X.dtype == bool:
        if X.shape != (n,):
            raise IndexError("vertex mask has the wrong length")
        return X
    idx = np.fromiter((int(x) for x in X), dtype=np.int64)
    if len(idx) and (idx.min() < 0 or idx.max() >= n):
        raise IndexError("vertex index out of range")
    m = np.zeros(n, dtype=bool)
    m[idx] = True
    return m


def members(mask) -> list:
    return np.flatnonzero(mask).tolist()


@dataclass
class Attractor:
    attr: np.ndarray      # bool mask
    strategy: np.ndarray  # successor per vertex, -1 where undefined
    level: np.ndarray     # entry level, -1 outside attr

    def __contains__(self, v):
        return bool(self.attr[v])


def attractor(arena: Arena, player: int, X, alive=None) -> Attractor:
    """Player ``player``'s attractor to X, optionally inside a subgame.

    ``alive`` restricts the computation to the subgame induced by the
    given vertices; it must not contain dead ends.
    """
    n = arena.n
    target = as_mask(n, X)
    alive = arena.everything if alive is None else as_mask(n, alive)
    pptr, pred = arena._pred
    inattr = np.empty(n, dtype=bool)
    level = np.empty(n, dtype=np.int64)
    strat = np.empty(n, dtype=np.int64)
    count = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    _kernels.attractor_kernel(arena.ptr, arena.succ, pptr, pred, arena.owner,
                              int(player), target, alive,
                              inattr, level, strat, count, queue)
    return Attractor(inattr, strat, level)


def lowest_successor_in(arena: Arena, player: int, region, out=None) -> np.ndarray:
    """Lowest successor inside ``region`` for each ``player`` vertex of it."""
    if out is None:
        out = np.full(arena.n, -1, dtype=np.int64)
    _kernels.lowest_successor_in(arena.ptr, arena.succ, arena.owner, int(player),
                                 region, out)
    return out


@dataclass
class RemovalResult:
    arena: Arena
    kept: np.ndarray
    old_to_new: np.ndarray  # -1 for removed vertices
    new_to_old: np.ndarray


def restrict(arena: Arena, keep, initial=None) -> RemovalResult:
    """Subgame induced by ``keep``; raises DeadEnd if a kept vertex is stranded."""
    keep = as_mask(arena.n, keep)
    new_to_old = np.flatnonzero(keep)
    old_to_new = np.full(arena.n, -1, dtype=np.int64)
    old_to_new[new_to_old] = np.arange(len(new_to_old))
    if initial is None:
        initial = arena.initial
    if not keep[initial]:
        raise InitialRemoved(f"initial vertex {initial} is removed")
    deg = np.diff(arena.ptr)
    src = np.repeat(np.arange(arena.n, dtype=np.int64), deg)
    ok = keep[src] & keep[arena.succ]
    new_deg = np.bincount(src[ok], minlength=arena.n)[new_to_old]
    if (new_deg == 0).any():
        v = int(new_to_old[np.flatnonzero(new_deg == 0)[0]])
        raise DeadEnd(f"vertex {v} loses all successors")
    ptr = np.zeros(len(new_to_old) + 1, dtype=np.int64)
    np.cumsum(new_deg, out=ptr[1:])
    sub = Arena.from_csr(arena.owner[new_to_old], ptr, old_to_new[arena.succ[ok]],
                         old_to_new[initial], check=False)
    return RemovalResult(sub, keep, old_to_new, new_to_old)


def remove_region(arena: Arena, A) -> RemovalResult:
    """Remove an attractor-closed region A, keeping the rest of the arena."""
    A = as_mask(arena.n, A)
    if A[arena.initial]:
        raise InitialRemoved(f"initial vertex {arena.initial} lies in the removed region")
    return restrict(arena, ~A)
