"""
Modularity and disconnected communities
=======================================

Ten vertices: two light triangles joined through vertex 4, which is tied by
heavy edges to the clique {0, 8, 9}. If Louvain moves 4 over to the clique,
the community {1, 2, 3, 5, 6, 7} keeps its label but falls into two pieces.
"""
# %%
import numpy as np

from splitlouvain import (
    Graph,
    community_sizes,
    delta_modularity,
    disconnected_communities,
    disconnected_fraction,
    modularity,
    vertex_weights,
)

light = [(1, 2), (2, 3), (1, 3), (5, 6), (6, 7), (5, 7), (3, 4), (4, 5)]
heavy = [(4, 0), (4, 8), (4, 9), (0, 8), (8, 9), (0, 9)]
u, v = zip(*(light + heavy))
g = Graph.from_edges(u, v, [1.0] * 8 + [5.0] * 6, num_vertices=10)

# %%
# Before the move, vertex 4 sits with the triangles.
before = np.array([0, 1, 1, 1, 1, 1, 1, 1, 0, 0])
print("Q before:", round(modularity(g, before), 4))

# %%
# The gain for moving 4 into community 0 comes from neighbor sums alone.
k = vertex_weights(g)
sigma = np.bincount(before, weights=k)
dq = delta_modularity(15.0, 2.0, k[4], sigma[0], sigma[1], g.m)
after = before.copy()
after[4] = 0
print("predicted gain:", round(dq, 4))
print("actual gain:   ", round(modularity(g, after) - modularity(g, before), 4))

# %%
# The move is good for Q but leaves community 1 disconnected.
flags = disconnected_communities(g, after)
print("sizes:", community_sizes(g, after))
print("disconnected:", np.flatnonzero(flags), "fraction:", disconnected_fraction(flags, 2))
