"""Compiled inner loops for attractor-style fixpoints.

All work arrays are allocated by the caller so the auxiliary space stays
linear in the number of vertices.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def attractor_kernel(ptr, succ, pptr, pred, owner, player, target, alive,
                     inattr, level, strat, count, queue):
    n = owner.shape[0]
    tail = 0
    for v in range(n):
        inattr[v] = False
        level[v] = -1
        strat[v] = -1
        count[v] = 0
        if alive[v] and target[v]:
            inattr[v] = True
            level[v] = 0
            queue[tail] = v
            tail += 1
    # remaining out-degree (inside the live subgame) of opponent vertices
    for v in range(n):
        if alive[v] and not inattr[v] and owner[v] != player:
            c = 0
            for k in range(ptr[v], ptr[v + 1]):
                if alive[succ[k]]:
                    c += 1
            count[v] = c
    head = 0
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(pptr[u], pptr[u + 1]):
            w = pred[k]
            if inattr[w] or not alive[w]:
                continue
            if owner[w] == player:
                inattr[w] = True
            else:
                count[w] -= 1
                if count[w] > 0:
                    continue
                inattr[w] = True
            level[w] = level[u] + 1
            queue[tail] = w
            tail += 1
    # deterministic strategy: lowest-index successor one level down
    for v in range(n):
        if inattr[v] and level[v] > 0 and owner[v] == player:
            best = -1
            want = level[v] - 1
            for k in range(ptr[v], ptr[v + 1]):
                s = succ[k]
                if alive[s] and inattr[s] and level[s] == want:
                    if best < 0 or s < best:
                        best = s
            strat[v] = best
    return tail


@njit(cache=True)
def lowest_successor_in(ptr, succ, owner, player, region, out):
    """For owned vertices of the region, the lowest successor inside it."""
    n = owner.shape[0]
    for v in range(n):
        if region[v] and owner[v] == player:
            best = -1
            for k in range(ptr[v], ptr[v + 1]):
                s = succ[k]
                if region[s] and (best < 0 or s < best):
                    best = s
            out[v] = best


def warm_up():
    """Trigger compilation on a tiny input."""
    ptr = np.array([0, 1], dtype=np.int64)
    succ = np.array([0], dtype=np.int64)
    owner = np.zeros(1, dtype=np.int8)
    mask = np.ones(1, dtype=np.bool_)
    work = [np.empty(1, dtype=np.int64) for _ in range(4)]
    attractor_kernel(ptr, succ, ptr, succ, owner, 0, mask, mask,
                     np.empty(1, dtype=np.bool_), *work)
    lowest_successor_in(ptr, succ, owner, 0, mask, work[0])
