"""Seeded synthetic graphs for tests, demos and benchmarks (numpy only)."""

from __future__ import annotations

import numpy as np

from .graph import Graph


def simple_graph(u, v, num_vertices: int, weights=None) -> Graph:
    """Undirected graph from endpoint arrays, dropping self-loops and repeated pairs."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    keep = u != v
    lo = np.minimum(u, v)[keep]
    hi = np.maximum(u, v)[keep]
    key, idx = np.unique(lo * num_vertices + hi, return_index=True)
    w = None if weights is None else np.asarray(weights, dtype=np.float64)[keep][idx]
    return Graph.from_edges(key // num_vertices, key % num_vertices, w, num_vertices=num_vertices)


def planted_partition(num_vertices: int, num_blocks: int, deg_in: float, deg_out: float,
                      seed: int = 0) -> tuple[Graph, np.ndarray]:
    """Equal-size blocks; each vertex draws about ``deg_in`` partners in its block and ``deg_out`` outside.

    Returns the graph and the planted block of every vertex.
    """
    rng = np.random.default_rng(seed)
    n = num_vertices
    block = np.arange(n, dtype=np.int64) * num_blocks // n
    starts = np.searchsorted(block, np.arange(num_blocks))
    sizes = np.bincount(block, minlength=num_blocks)
    m_in = int(round(n * deg_in / 2))
    m_out = int(round(n * deg_out / 2))
    a = rng.integers(0, n, m_in)
    b = starts[block[a]] + (rng.random(m_in) * sizes[block[a]]).astype(np.int64)
    c = rng.integers(0, n, m_out)
    d = rng.integers(0, n, m_out)
    g = simple_graph(np.concatenate([a, c]), np.concatenate([b, d]), n)
    return g, block


def erdos_renyi(num_vertices: int, avg_degree: float, seed: int = 0) -> Graph:
    rng = np.random.default_rng(seed)
    m = int(round(num_vertices * avg_degree / 2))
    return simple_graph(rng.integers(0, num_vertices, m), rng.integers(0, num_vertices, m), num_vertices)


def road_grid(rows: int, cols: int, keep: float = 0.85, seed: int = 0) -> Graph:
    """Square lattice with a random fraction of its edges removed; low degree like road maps."""
    rng = np.random.default_rng(seed)
    ids = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    u = np.concatenate([ids[:, :-1].ravel(), ids[:-1, :].ravel()])
    v = np.concatenate([ids[:, 1:].ravel(), ids[1:, :].ravel()])
    mask = rng.random(u.size) < keep
    return simple_graph(u[mask], v[mask], rows * cols)


def ring_of_cliques(num_cliques: int, clique_size: int) -> Graph:
    """Cliques joined in a ring by single edges."""
    us, vs = [], []
    for q in range(num_cliques):
        base = q * clique_size
        iu, ju = np.triu_indices(clique_size, 1)
        us.append(base + iu)
        vs.append(base + ju)
        us.append(np.array([base + clique_size - 1]))
        vs.append(np.array([((q + 1) % num_cliques) * clique_size]))
    n = num_cliques * clique_size
    return simple_graph(np.concatenate(us), np.concatenate(vs), n)


def random_weighted(num_vertices: int, p: float, seed: int = 0, max_weight: float = 4.0,
                    self_loops: bool = False) -> Graph:
    """Dense-ish random graph with weights drawn from ``(0, max_weight]``."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(num_vertices, 0 if self_loops else 1)
    mask = rng.random(iu.size) < p
    w = max_weight - rng.random(int(mask.sum())) * max_weight  # in (0, max_weight]
    if not mask.any():
        return Graph.from_edges([], [], [], num_vertices=num_vertices)
    return Graph.from_edges(iu[mask], ju[mask], w, num_vertices=num_vertices)
