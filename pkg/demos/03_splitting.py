"""
Splitting disconnected communities
==================================

Three ways to break a community into its connected pieces: minimum-label
propagation (LP), the same with vertex pruning (LPP), and a BFS that claims
each community with a compare-and-swap. They agree on the partition.
"""
# %%
import numpy as np

from splitlouvain import (
    canonicalize_partition,
    disconnected_communities,
    split_disconnected_bfs,
    split_disconnected_lp,
)
from splitlouvain.generators import road_grid

g = road_grid(200, 200, keep=0.7, seed=1)
labels = np.random.default_rng(0).integers(0, 500, g.num_vertices)
print(g)
print("disconnected before:", int(disconnected_communities(g, labels).sum()), "of 500")

# %%
lp, sweeps = split_disconnected_lp(g, labels, workers=2, return_iterations=True)
lpp, sweeps_p = split_disconnected_lp(g, labels, pruning=True, workers=2, return_iterations=True)
bfs = split_disconnected_bfs(g, labels, workers=2)
print("LP sweeps:", sweeps, " LPP sweeps:", sweeps_p)

# %%
# LP labels each piece by its smallest vertex; BFS uses whichever vertex
# started the search, so compare canonical forms.
forms = [canonicalize_partition(x) for x in (lp, lpp, bfs)]
print("all equal:", all(np.array_equal(forms[0], f) for f in forms[1:]))
out = forms[0]
print("communities after:", np.unique(out).size)
print("disconnected after:", int(disconnected_communities(g, out).sum()))
