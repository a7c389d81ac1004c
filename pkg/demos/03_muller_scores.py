"""
Quantitative Muller games
=========================

The cost measures how often a losing set has been fully traversed.
A winning Player 0 never needs to allow more than two traversals.
"""
from rankgames import Arena, MullerGame, MullerSpec, solve_muller
from rankgames.muller import score_of_prefix

arena = Arena([1, 0, 1, 1], [[1, 3], [0, 3], [0, 1, 3], [0, 2, 3]])
family = [[0, 1], [1, 2, 3], [1, 3]]   # sets that are bad for Player 0
game = MullerGame(arena, MullerSpec(family, arena.n))

sol = solve_muller(game)
print("value:", sol.value, " qualitative winner: Player", sol.qualitative_winner)
print("reduction threshold:", sol.witness.b)

for prefix in ([0, 1, 0, 1], [0, 1, 0, 1, 0], [0, 3, 3, 0, 1, 3]):
    print(" score of", prefix, "=", score_of_prefix(game.spec, prefix))
