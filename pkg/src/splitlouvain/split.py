"""Splitting internally-disconnected communities into connected pieces.

Three techniques produce the same partition (per-community connected
components) with different labels:

* ``LP``  - minimum-label propagation restricted to each community,
* ``LPP`` - the same with processed-vertex pruning,
* ``BFS`` - one breadth-first search per component, communities claimed by
  compare-and-swap on a busy flag.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numba import njit

from ._atomics import atomic_add, atomic_cas, atomic_xchg
from ._parallel import run_workers
from .graph import Graph
from .quality import check_membership

_VERTEX_CHUNK = 2048


class SplitTechnique(enum.Enum):
    LP = "lp"
    LPP = "lpp"
    BFS = "bfs"


class SplitMode(enum.Enum):
    NONE = "none"
    LAST = "last"
    PASS = "pass"


@dataclass(frozen=True)
class SplitConfig:
    """When to split (never, once at the end, after every local-moving phase) and how."""

    mode: SplitMode = SplitMode.PASS
    technique: SplitTechnique = SplitTechnique.BFS

    @classmethod
    def parse(cls, text: str) -> SplitConfig:
        """Parse ``none`` or ``<last|pass>-<lp|lpp|bfs>``."""
        text = text.strip().lower()
        if text == "none":
            return cls(SplitMode.NONE, SplitTechnique.BFS)
        mode, _, tech = text.partition("-")
        try:
            return cls(SplitMode(mode), SplitTechnique(tech))
        except ValueError:
            raise ValueError(f"unknown split configuration {text!r}") from None

    def __str__(self) -> str:
        if self.mode is SplitMode.NONE:
            return "none"
        return f"{self.mode.value}-{self.technique.value}"

    def apply(self, g: Graph, labels, workers: int = 1) -> np.ndarray:
        return split_disconnected(g, labels, self.technique, workers)


def split_disconnected(g: Graph, labels, technique: SplitTechnique = SplitTechnique.BFS,
                       workers: int = 1) -> np.ndarray:
    if technique is SplitTechnique.BFS:
        return split_disconnected_bfs(g, labels, workers)
    return split_disconnected_lp(g, labels, pruning=technique is SplitTechnique.LPP, workers=workers)


# --------------------------------------------------------------------------
# label propagation


@njit(cache=True, nogil=True)
def _lp_sweep_kernel(t, nw, offsets, targets, comm, lab, processed, pruning, cursor, changes):
    n = offsets.shape[0] - 1
    changed = 0
    while True:
        start = atomic_add(cursor, 0, _VERTEX_CHUNK)
        if start >= n:
            break
        for i in range(start, min(start + _VERTEX_CHUNK, n)):
            if processed[i]:
                continue
            if pruning:
                atomic_xchg(processed, i, 1)
            c = comm[i]
            cmin = lab[i]
            for k in range(offsets[i], offsets[i + 1]):
                j = targets[k]
                if comm[j] == c and lab[j] < cmin:
                    cmin = lab[j]
            if cmin == lab[i]:
                continue
            lab[i] = cmin
            changed += 1
            if pruning:
                for k in range(offsets[i], offsets[i + 1]):
                    j = targets[k]
                    if comm[j] == c:
                        processed[j] = 0
    changes[t] = changed


def split_disconnected_lp(g: Graph, labels, pruning: bool = False, workers: int = 1,
                          return_iterations: bool = False):
    """Label every vertex with the smallest vertex id reachable inside its community.

    Parameters
    ----------
    pruning : bool
        Only revisit vertices whose same-community neighbor changed label.
    return_iterations : bool
        Also return the number of sweeps performed (the last one changes nothing).
    """
    comm = check_membership(labels, g.num_vertices)
    n = g.num_vertices
    lab = np.arange(n, dtype=np.int64)
    processed = np.zeros(n, np.uint8)
    changes = np.zeros(workers, np.int64)
    iterations = 0
    while True:
        iterations += 1
        cursor = np.zeros(1, np.int64)
        run_workers(_lp_sweep_kernel, workers, g.offsets, g.targets, comm, lab, processed,
                    pruning, cursor, changes)
        if changes.sum() == 0:
            break
    return (lab, iterations) if return_iterations else lab


# --------------------------------------------------------------------------
# breadth-first search


@njit(cache=True, nogil=True)
def _bfs_split_kernel(t, nw, offsets, targets, comm, lab, vis, busy):
    n = offsets.shape[0] - 1
    queue = np.empty(n, np.int64)
    first = n * t // nw
    for s in range(n):
        i = first + s
        if i >= n:
            i -= n
        c = comm[i]
        if vis[i] or busy[c]:
            continue
        if atomic_cas(busy, c, 0, 1) != 0:
            continue
        # another worker may have swept i's component before we won the claim
        if atomic_cas(vis, i, 0, 1) != 0:
            atomic_xchg(busy, c, 0)
            continue
        label = lab[i]
        queue[0] = i
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            lab[u] = label
            for k in range(offsets[u], offsets[u + 1]):
                v = targets[k]
                if comm[v] == c and vis[v] == 0 and atomic_cas(vis, v, 0, 1) == 0:
                    queue[tail] = v
                    tail += 1
        atomic_xchg(busy, c, 0)


def split_disconnected_bfs(g: Graph, labels, workers: int = 1) -> np.ndarray:
    """Give each connected piece of each community the id of the vertex its BFS started from.

    Workers sweep all vertices (each from a different starting offset) and
    claim a community before searching it.  Sweeps repeat until every vertex
    is visited, since a vertex skipped while its community was busy elsewhere
    may not be reached by that other search.
    """
    comm = check_membership(labels, g.num_vertices)
    n = g.num_vertices
    lab = np.arange(n, dtype=np.int64)
    vis = np.zeros(n, np.uint8)
    busy = np.zeros(n, np.uint8)
    while True:
        run_workers(_bfs_split_kernel, workers, g.offsets, g.targets, comm, lab, vis, busy)
        if vis.all():
            return lab


# --------------------------------------------------------------------------


def canonicalize_partition(labels) -> np.ndarray:
    """Relabel each community with the smallest vertex id it contains."""
    labels = np.asarray(labels, dtype=np.int64)
    uniq, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    return first.astype(np.int64)[inverse.ravel()]
