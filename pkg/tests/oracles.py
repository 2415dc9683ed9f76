"""Slow, obviously-correct reference computations used only by the tests.

Nothing here calls into the package's kernels; graphs are read back as plain
Python edge dictionaries.
"""

from __future__ import annotations

from collections import defaultdict, deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


def adjacency_dict(g) -> dict[int, dict[int, float]]:
    adj: dict[int, dict[int, float]] = {i: {} for i in range(g.num_vertices)}
    offsets, targets, weights = g.offsets.tolist(), g.targets.tolist(), g.weights.tolist()
    for i in range(g.num_vertices):
        for k in range(offsets[i], offsets[i + 1]):
            adj[i][targets[k]] = adj[i].get(targets[k], 0.0) + weights[k]
    return adj


def degree_oracle(g) -> list[float]:
    out = [0.0] * g.num_vertices
    src, dst, w = g.arcs()
    for a, x in zip(src.tolist(), w.tolist()):
        out[a] += x
    return out


def modularity_pairwise(g, labels) -> float:
    """Left-hand form: (1/2m) sum over ordered pairs [A_ij - K_i K_j / 2m] delta(C_i, C_j).

    Self-loops appear once in A_ii, matching the stored-arc convention.
    """
    n = g.num_vertices
    a = np.zeros((n, n))
    src, dst, w = g.arcs()
    for s, d, x in zip(src.tolist(), dst.tolist(), w.tolist()):
        a[s, d] += x
    k = a.sum(axis=1)
    two_m = a.sum()
    q = 0.0
    labels = list(labels)
    for i in range(n):
        for j in range(n):
            if labels[i] == labels[j]:
                q += a[i, j] - k[i] * k[j] / two_m
    return q / two_m


def same_partition(a, b) -> bool:
    """Pairwise same-community relation equality, via a bijection check."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    fwd, rev = {}, {}
    for x, y in zip(a, b):
        if fwd.setdefault(x, y) != y or rev.setdefault(y, x) != x:
            return False
    return True


def community_components_bfs(g, labels) -> list[int]:
    """Per-community connected components by plain BFS; each labeled by its minimum vertex."""
    adj = adjacency_dict(g)
    labels = list(labels)
    out = [-1] * g.num_vertices
    for s in range(g.num_vertices):
        if out[s] != -1:
            continue
        out[s] = s
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if out[v] == -1 and labels[v] == labels[s]:
                    out[v] = s
                    q.append(v)
    return out


def community_components_scipy(g, labels) -> np.ndarray:
    """Component id per vertex of the graph restricted to intra-community arcs."""
    labels = np.asarray(labels)
    src, dst, _ = g.arcs()
    keep = labels[src] == labels[dst]
    n = g.num_vertices
    mat = csr_matrix((np.ones(int(keep.sum())), (src[keep], dst[keep])), shape=(n, n))
    _, comp = connected_components(mat, directed=False)
    return comp


def disconnected_oracle(g, labels) -> set[int]:
    """Labels of communities spanning more than one component."""
    comp = community_components_scipy(g, labels)
    seen: dict[int, set[int]] = defaultdict(set)
    for c, k in zip(np.asarray(labels).tolist(), comp.tolist()):
        seen[c].add(k)
    return {c for c, ks in seen.items() if len(ks) > 1}


def greedy_local_moving(g, tolerance: float, max_iterations: int = 20):
    """Sequential local moving from singletons with vertex pruning.

    Same visiting order and tie rule as the parallel code at one worker:
    ascending vertex id, candidate communities in first-seen order over the
    sorted adjacency, strictly larger gain wins.
    """
    adj = adjacency_dict(g)
    n = g.num_vertices
    k = degree_oracle(g)
    m = sum(k) / 2
    comm = list(range(n))
    tot = list(k)
    processed = [False] * n
    iterations = 0
    for _ in range(max_iterations):
        iterations += 1
        gain = 0.0
        for i in range(n):
            if processed[i]:
                continue
            processed[i] = True
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                if j != i:
                    links[comm[j]] = links.get(comm[j], 0.0) + w
            d = comm[i]
            best_c, best = d, 0.0
            for c, w in links.items():
                if c == d:
                    continue
                e = (w - links.get(d, 0.0)) / m - k[i] / (2 * m * m) * (k[i] + tot[c] - tot[d])
                if e > best:
                    best_c, best = c, e
            if best_c == d:
                continue
            tot[d] -= k[i]
            tot[best_c] += k[i]
            comm[i] = best_c
            gain += best
            for j in adj[i]:
                processed[j] = False
        if gain <= tolerance:
            break
    return comm, iterations


def regroup_arcs(g, labels) -> dict[tuple[int, int], float]:
    """Super-graph arc weights by summing every arc into its (community, community) cell."""
    out: dict[tuple[int, int], float] = defaultdict(float)
    labels = np.asarray(labels).tolist()
    src, dst, w = g.arcs()
    for s, d, x in zip(src.tolist(), dst.tolist(), w.tolist()):
        out[(labels[s], labels[d])] += x
    return dict(out)


def set_partitions(n: int):
    """All partitions of range(n) as restricted-growth label lists."""
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield list(labels)
            return
        for c in range(top + 2):
            labels[i] = c
            yield from rec(i + 1, max(top, c))

    if n == 0:
        yield []
        return
    yield from rec(1, 0)


def best_modularity_exhaustive(g) -> tuple[float, list[int]]:
    best, arg = -1.0, None
    for p in set_partitions(g.num_vertices):
        q = modularity_pairwise(g, p)
        if q > best + 1e-12:
            best, arg = q, p
    return best, arg
