"""Random small instances for experiments and tests.

Every generator takes a ``random.Random`` so runs are reproducible.
"""
from __future__ import annotations

import numpy as np

from .arena import Arena
from .muller import MullerGame, MullerSpec
from .qualitative import Buchi, CoBuchi, SafetyAvoid
from .ranked import VertexRankedGame
from .reqres import RRCostGame, RRCostSpec
from .resilience import FaultArena


def random_arena(rng, n, max_out=3, initial=0) -> Arena:
    owner = [rng.randint(0, 1) for _ in range(n)]
    succ = [sorted(rng.sample(range(n), rng.randint(1, min(n, max_out)))) for _ in range(n)]
    return Arena(owner, succ, initial)


def random_mask(rng, n, p):
    return np.array([rng.random() < p for _ in range(n)], dtype=bool)


def random_rr(rng, n, d, W, p=0.3) -> RRCostGame:
    """Requests and responses placed independently, edge costs uniform in 0..W."""
    a = random_arena(rng, n)
    Q = [random_mask(rng, n, p) for _ in range(d)]
    P = [random_mask(rng, n, p) for _ in range(d)]
    costs = [{(u, v): rng.randint(0, W) for u, v in a.edges()} for _ in range(d)]
    return RRCostGame(a, RRCostSpec(Q, P, costs))


def random_rr_requesting(rng, n, d, W) -> RRCostGame:
    """The initial vertex requests and some vertex responds, mostly positive costs.

    Gives a good spread of finite and infinite values on tiny arenas.
    """
    if n < 2:
        raise ValueError("needs at least two vertices")
    a = random_arena(rng, n)
    Q, P = [], []
    for _ in range(d):
        kinds = [rng.choice("qq..p") for _ in range(n)]
        kinds[0] = "q"
        if "p" not in kinds:
            kinds[rng.randrange(1, n)] = "p"
        Q.append(np.array([k == "q" for k in kinds]))
        P.append(np.array([k == "p" for k in kinds]))
    costs = [{(u, v): (rng.randint(1, W) if rng.random() < 0.8 else 0) for u, v in a.edges()}
             for _ in range(d)]
    return RRCostGame(a, RRCostSpec(Q, P, costs))


def random_muller(rng, n, max_sets=4) -> MullerGame:
    a = random_arena(rng, n)
    fam = set()
    for _ in range(rng.randint(0, max_sets)):
        F = frozenset(v for v in range(n) if rng.random() < 0.5)
        if F:
            fam.add(F)
    return MullerGame(a, MullerSpec(sorted(sorted(F) for F in fam), n))


def random_ranked(rng, n, condition="buchi", mode="sup", max_rank=3, p=0.4) -> VertexRankedGame:
    a = random_arena(rng, n)
    mask = random_mask(rng, n, p)
    cond = {"buchi": Buchi, "cobuchi": CoBuchi, "safety": SafetyAvoid}[condition](mask)
    ranks = [rng.randint(0, max_rank) for _ in range(n)]
    return VertexRankedGame(a, cond, ranks, mode)


def random_fault_arena(rng, n, max_faults=2, p_safe=0.8) -> FaultArena:
    a = random_arena(rng, n)
    faults = [(u, rng.randrange(n)) for u in range(n) if a.owner[u] == 0
              for _ in range(rng.randint(0, max_faults))]
    return FaultArena(a, faults, random_mask(rng, n, p_safe))


def large_ranked_safety(n, out_degree, max_rank=20, seed=0, p_avoid=0.01) -> VertexRankedGame:
    """Big sup-safety instance built directly in CSR form."""
    gen = np.random.default_rng(seed)
    owner = gen.integers(0, 2, n).astype(np.int8)
    ptr = np.arange(0, n * out_degree + 1, out_degree, dtype=np.int64)
    # a circulant graph with distinct random steps, relabelled by a random
    # permutation: successors are distinct and look unstructured
    steps = np.sort(gen.choice(np.arange(1, n), size=out_degree, replace=False))
    perm = gen.permutation(n)
    pos = np.empty(n, dtype=np.int64)
    pos[perm] = np.arange(n)
    succ = perm[(pos[:, None] + steps[None, :]) % n].reshape(-1).astype(np.int64)
    a = Arena.from_csr(owner, ptr, succ, 0, check=False)
    avoid = gen.random(n) < p_avoid
    ranks = gen.integers(0, max_rank + 1, n)
    return VertexRankedGame(a, SafetyAvoid(avoid), ranks, "sup")


def random_ladder_fault_arena(rng, n, p_fault=0.8) -> FaultArena:
    """Only the last vertex is unsafe; faults push one or two rungs toward it.

    Produces many finite resilience values, unlike ``random_fault_arena``.
    """
    a = random_arena(rng, n)
    safe = np.ones(n, dtype=bool)
    safe[n - 1] = False
    faults = [(u, min(n - 1, u + rng.randint(1, 2))) for u in range(n - 1)
              if a.owner[u] == 0 and rng.random() < p_fault]
    return FaultArena(a, faults, safe)
