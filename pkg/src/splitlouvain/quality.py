"""Modularity, delta-modularity and disconnected-community detection."""

from __future__ import annotations

import os

import numpy as np
from numba import njit

from ._atomics import atomic_add, atomic_cas
from ._parallel import run_workers
from .graph import Graph, vertex_weights

#: community ids handed to one worker at a time by ``disconnected_communities``
CHUNK_SIZE = 1024


class MembershipError(ValueError):
    """Raised for a membership vector that does not fit its graph."""


def check_membership(labels, num_vertices: int) -> np.ndarray:
    """Return ``labels`` as int64, raising if length or range is wrong."""
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    if labels.ndim != 1 or labels.shape[0] != num_vertices:
        raise MembershipError(
            f"membership has {labels.shape[0] if labels.ndim == 1 else labels.shape} "
            f"entries, graph has {num_vertices} vertices"
        )
    if num_vertices and (labels.min() < 0 or labels.max() >= num_vertices):
        raise MembershipError(f"community label out of range [0, {num_vertices})")
    return labels


def read_membership(path: str | os.PathLike, num_vertices: int | None = None) -> np.ndarray:
    """One integer label per line; line index is the vertex id."""
    try:
        labels = np.loadtxt(path, dtype=np.int64, ndmin=1)
    except ValueError as exc:
        raise MembershipError(f"{path}: {exc}") from None
    if num_vertices is not None:
        labels = check_membership(labels, num_vertices)
    return labels


def write_membership(path: str | os.PathLike, labels) -> None:
    labels = np.asarray(labels, dtype=np.int64)
    with open(path, "w") as fh:
        fh.write("\n".join(map(str, labels.tolist())))
        fh.write("\n")


# --------------------------------------------------------------------------
# modularity


@njit(cache=True, nogil=True)
def delta_modularity(k_to_c, k_to_d, k_i, sigma_c, sigma_d, m):
    """Change in modularity from moving vertex ``i`` out of ``d`` into ``c``.

    ``sigma_d`` still includes ``k_i``; ``sigma_c`` does not.  The edge weights
    towards each community exclude self-loops of ``i``.
    """
    return (k_to_c - k_to_d) / m - k_i / (2.0 * m * m) * (k_i + sigma_c - sigma_d)


@njit(cache=True, nogil=True)
def _internal_weight_kernel(t, nw, offsets, targets, weights, labels, partial):
    n = offsets.shape[0] - 1
    lo = n * t // nw
    hi = n * (t + 1) // nw
    s = 0.0
    for i in range(lo, hi):
        c = labels[i]
        for k in range(offsets[i], offsets[i + 1]):
            if labels[targets[k]] == c:
                s += weights[k]
    partial[t] = s


def modularity(g: Graph, labels, workers: int = 1) -> float:
    """Modularity of ``labels`` on ``g``.

    Computed as ``sum_c sigma_c / 2m - (Sigma_c / 2m)^2``, where ``sigma_c`` sums
    stored arcs inside ``c`` (each internal edge twice, self-loops once) and
    ``Sigma_c`` sums weighted degrees of the members.

    Raises
    ------
    ValueError
        If the graph carries no edge weight.
    """
    labels = check_membership(labels, g.num_vertices)
    two_m = g.total_weight
    if two_m <= 0:
        raise ValueError("modularity is undefined on a graph with zero total edge weight")
    partial = np.zeros(workers, np.float64)
    run_workers(_internal_weight_kernel, workers, g.offsets, g.targets, g.weights, labels, partial)
    internal = float(np.sum(partial))
    sigma = np.bincount(labels, weights=vertex_weights(g))
    return internal / two_m - float(np.sum((sigma / two_m) ** 2))


# --------------------------------------------------------------------------
# community sizes and disconnected detection


@njit(cache=True, nogil=True)
def _sizes_kernel(t, nw, labels, sizes):
    n = labels.shape[0]
    for i in range(n * t // nw, n * (t + 1) // nw):
        atomic_add(sizes, labels[i], 1)


def community_sizes(g: Graph, labels, workers: int = 1) -> np.ndarray:
    """Member count per community label (length = largest label + 1)."""
    labels = check_membership(labels, g.num_vertices)
    sizes = np.zeros(int(labels.max()) + 1, np.int64)
    run_workers(_sizes_kernel, workers, labels, sizes)
    return sizes


@njit(cache=True, nogil=True)
def _disconnected_kernel(t, nw, offsets, targets, labels, sizes, vis, flags, chunk):
    n = offsets.shape[0] - 1
    queue = np.empty(n, np.int64)
    for i in range(n):
        c = labels[i]
        if sizes[c] == 0 or (c // chunk) % nw != t:
            continue
        # BFS within community c, counting reached vertices
        reached = 0
        head = 0
        tail = 0
        if atomic_cas(vis, i, 0, 1) == 0:
            queue[tail] = i
            tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            reached += 1
            for k in range(offsets[u], offsets[u + 1]):
                v = targets[k]
                if labels[v] == c and vis[v] == 0 and atomic_cas(vis, v, 0, 1) == 0:
                    queue[tail] = v
                    tail += 1
        if reached < sizes[c]:
            flags[c] = True
        sizes[c] = 0


def disconnected_communities(g: Graph, labels, workers: int = 1, chunk: int = CHUNK_SIZE) -> np.ndarray:
    """Flag every community whose induced subgraph is not connected.

    Community ``c`` is handled by worker ``(c // chunk) % workers``; that worker
    runs one BFS from the first member it meets and compares the reached count
    with the community size.

    Returns
    -------
    ndarray of bool
        Indexed by community label (length = largest label + 1).
    """
    labels = check_membership(labels, g.num_vertices)
    sizes = community_sizes(g, labels, workers)
    flags = np.zeros(sizes.shape[0], np.bool_)
    vis = np.zeros(g.num_vertices, np.uint8)
    run_workers(_disconnected_kernel, workers, g.offsets, g.targets, labels, sizes, vis, flags, chunk)
    return flags


def disconnected_fraction(flags, num_communities: int) -> float:
    """Fraction of the ``num_communities`` non-empty communities that are flagged."""
    if num_communities <= 0:
        raise ValueError("num_communities must be positive")
    return int(np.count_nonzero(flags)) / num_communities


def count_communities(labels) -> int:
    return int(np.unique(np.asarray(labels)).size)
