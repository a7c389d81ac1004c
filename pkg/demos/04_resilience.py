"""
Resilience against faults
=========================

Faults may override Player 0's moves.  val(v) counts the faults the
environment needs to win from v; turning it into ranks gives a safety
game whose optimal bound is the resilience.
"""
from rankgames import Arena, FaultArena, compute_val, solve_resilient
from rankgames.resilience import survives_faults

# a loop 0 -> 1 -> 2 -> 0; each Player-0 step can be knocked to 3,
# and from 3 another fault reaches the unsafe vertex 4
arena = Arena([0, 0, 0, 0, 1], [[1], [2], [0], [3], [4]])
faults = [(0, 3), (1, 3), (2, 3), (3, 4)]
fa = FaultArena(arena, faults, safe=[True, True, True, True, False])

print("val:", compute_val(fa).tolist())
for mode in ("sup", "lim"):
    r = solve_resilient(fa, mode)
    print(f"{mode}: resilience {r.value}, bound {r.bound}, tolerates {r.tolerated()} faults")

r = solve_resilient(fa)
for k in range(3):
    print(f"  survives every schedule with {k} faults:", survives_faults(fa, r.strategy, k, 20))
