"""
Vertex-ranked games
===================

A cost is the largest rank seen along a play (sup) or the largest rank
seen infinitely often (lim), as long as the qualitative condition holds.
"""
from rankgames import Arena, Buchi, VertexRankedGame, optimize_bound, solve_bound, vertex_values

# From 0 Player 0 either enters the circle through 1 and 2, or passes the
# expensive vertex 3 once and settles on the cheap target 4.  Player 1
# may loop at 1 for ever and never reach the target 2, so only the second
# route wins: it costs 5 under sup, but only 1 under lim.
arena = Arena(owner=[0, 1, 0, 0, 0], successors=[[1, 3], [1, 2], [1], [4], [4]], initial=0)
target = [False, False, True, False, True]
ranks = [0, 1, 2, 5, 1]

sup = VertexRankedGame(arena, Buchi(target), ranks, "sup")
lim = sup.with_mode("lim")

print("optimal sup cost:", optimize_bound(sup))
print("optimal lim cost:", optimize_bound(lim))

# winning regions for each bound
for b in sup.distinct_ranks():
    r = solve_bound(sup, b)
    print(f"  b={b}: Player 0 wins from {r.w0.nonzero()[0].tolist()}")

values, _ = vertex_values(lim)
print("lim value per start vertex:", [int(x) if x != float("inf") else "inf" for x in values])
