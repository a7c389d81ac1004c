"""Vertex-ranked games, quantitative reductions and their applications."""
from .arena import Arena, attractor, remove_region, restrict
from .memory import LazyMemory, ProductArena, TableMemory, product_arena, product_memory
from .muller import MullerGame, MullerSpec, solve_muller
from .plays import UPPlay
from .qualitative import Buchi, CoBuchi, RequestResponse, SafetyAvoid, solve_qualitative
from .ranked import (VertexRankedGame, optimize_bound, solve_bound, solve_lim_cobuchi_route,
                     solve_lim_prefix_independent, solve_sup_bound, vertex_values)
from .reduction import ReductionWitness, compose_reductions, verify_reduction_on_plays
from .reqres import RRCostGame, RRCostSpec, solve_rr
from .resilience import FaultArena, compute_val, solve_resilient
from .strategies import FiniteStateStrategy, PositionalStrategy, simulate
from .values import INF

__all__ = [
    "Arena", "attractor", "remove_region", "restrict",
    "LazyMemory", "ProductArena", "TableMemory", "product_arena", "product_memory",
    "MullerGame", "MullerSpec", "solve_muller", "UPPlay",
    "Buchi", "CoBuchi", "RequestResponse", "SafetyAvoid", "solve_qualitative",
    "VertexRankedGame", "optimize_bound", "solve_bound", "solve_lim_cobuchi_route",
    "solve_lim_prefix_independent", "solve_sup_bound", "vertex_values",
    "ReductionWitness", "compose_reductions", "verify_reduction_on_plays",
    "RRCostGame", "RRCostSpec", "solve_rr", "FaultArena", "compute_val", "solve_resilient",
    "FiniteStateStrategy", "PositionalStrategy", "simulate", "INF",
]
