"""
Building and loading graphs
===========================

Graphs are stored in CSR form. Every undirected edge appears as two arcs,
self-loops appear once, so ``total_weight`` is twice the edge weight.
"""
# %%
# Build a graph from an edge list. Reverse arcs are added for you.
import tempfile
from pathlib import Path

import numpy as np

from splitlouvain import Graph, load_graph, vertex_weights, write_edgelist

g = Graph.from_edges([0, 1, 2, 3, 4, 5, 2], [1, 2, 0, 4, 5, 3, 3])
print(g)
print("offsets:", g.offsets)
print("targets:", g.targets)
print("degree of 2:", g.degree(2))
print("weighted degrees:", vertex_weights(g))
print("2m =", g.total_weight)

# %%
# A self-loop is stored once and counts once toward 2m.
loop = Graph.from_edges([0, 0], [0, 1], [3.0, 1.0])
print(loop.neighbors(0), loop.total_weight)

# %%
# Round-trip through a text edge list and a MatrixMarket file.
tmp = Path(tempfile.mkdtemp())
write_edgelist(g, tmp / "bridged.el")
again = load_graph(tmp / "bridged.el", fmt="edgelist", weighted=True)
print("edge list round trip:", again.same_as(g))

(tmp / "bridged.mtx").write_text(
    "%%MatrixMarket matrix coordinate pattern symmetric\n"
    "6 6 7\n1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n3 4\n"
)
print("mtx round trip:", load_graph(tmp / "bridged.mtx").same_as(g))
print("same arcs:", np.array_equal(again.targets, g.targets))
