"""
Request-response games with costs
=================================

Each request has to be answered; edge costs accumulate while it is open.
The game reduces to a vertex-ranked sup game over counter memory.
"""
from rankgames import Arena, RRCostGame, RRCostSpec, simulate, solve_rr
from rankgames.checking import worst_against_positional

# 0 requests; Player 0 answers either via the short, costly edge to 1 or
# via 2, where Player 1 stalls on a cheap self-loop before answering at 3.
arena = Arena(owner=[0, 0, 1, 0], successors=[[1, 2], [0], [2, 3], [0]], initial=0)
costs = {(0, 1): 3, (0, 2): 1, (2, 2): 1, (2, 3): 1, (1, 0): 0, (3, 0): 0}
spec = RRCostSpec(requests=[[True, False, False, False]],
                  responses=[[False, True, False, True]], costs=[costs])
game = RRCostGame(arena, spec)

sol = solve_rr(game)
print("optimal cost:", sol.value)
print("cap used by the reduction:", sol.witness.cap)
print("bounds tried by the search:", sol.tried)
print("reduced game size:", sol.witness.target.arena.n, "vertices")

# the lifted strategy, against every positional opponent
print("worst cost against positional opponents:", worst_against_positional(game, sol.strategy))

from rankgames import PositionalStrategy
stall_once = PositionalStrategy(1, [0, 0, 3, 0])
play = simulate(arena, sol.strategy, stall_once)
print("play:", play, "cost", game.cost(play))
