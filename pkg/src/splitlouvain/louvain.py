"""Parallel Louvain with optional per-pass splitting of disconnected communities.

Each pass runs a local-moving phase (greedy vertex moves with vertex
pruning), optionally splits internally-disconnected communities, then
collapses every community into a super-vertex.  Passes stop when local moving
converges in one iteration, when the community count shrinks too little, or
after ``max_passes``.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from numba import njit

from ._atomics import atomic_add
from ._parallel import default_workers, run_workers
from .graph import Graph, vertex_weights
from .quality import (
    check_membership,
    delta_modularity,
    disconnected_communities,
    disconnected_fraction,
    modularity,
)
from .report import DetectionReport, PassRecord
from .split import SplitConfig, SplitMode

_VERTEX_CHUNK = 2048
_COMMUNITY_CHUNK = 256


@dataclass(frozen=True)
class LouvainParams:
    tolerance: float = 1e-2
    tolerance_drop: float = 10.0
    aggregation_tolerance: float = 0.8
    max_passes: int = 10
    max_iterations: int = 20
    split: SplitConfig = field(default_factory=SplitConfig)
    workers: int = field(default_factory=default_workers)

    def __post_init__(self):
        if self.tolerance < 0:
            raise ValueError("tolerance must be >= 0")
        if self.tolerance_drop <= 1:
            raise ValueError("tolerance_drop must be > 1")
        if not 0 < self.aggregation_tolerance <= 1:
            raise ValueError("aggregation_tolerance must be in (0, 1]")
        if self.max_passes < 1 or self.max_iterations < 1:
            raise ValueError("max_passes and max_iterations must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["split"] = str(self.split)
        return d


# --------------------------------------------------------------------------
# community scan


@njit(cache=True, nogil=True)
def _scan(keys, vals, count, offsets, targets, weights, comm, i, self_loops):
    for k in range(offsets[i], offsets[i + 1]):
        j = targets[k]
        if not self_loops and j == i:
            continue
        c = comm[j]
        if vals[c] == 0.0:
            keys[count] = c
            count += 1
        vals[c] += weights[k]
    return count


@njit(cache=True, nogil=True)
def _clear(keys, vals, count):
    for q in range(count):
        vals[keys[q]] = 0.0


class ScanAccumulator:
    """Community id -> accumulated edge weight, for one worker.

    Dense value array indexed by community id plus a list of touched keys, so
    lookups never collide and clearing costs only the touched entries.
    """

    def __init__(self, capacity: int):
        self.keys = np.zeros(capacity, np.int64)
        self.values = np.zeros(capacity, np.float64)
        self.count = 0

    def clear(self) -> None:
        _clear(self.keys, self.values, self.count)
        self.count = 0

    def __len__(self) -> int:
        return self.count

    def __getitem__(self, c: int) -> float:
        return float(self.values[c])

    def items(self) -> list[tuple[int, float]]:
        """(community, weight) pairs in first-touched order."""
        ks = self.keys[: self.count].tolist()
        return [(k, float(self.values[k])) for k in ks]

    def as_dict(self) -> dict[int, float]:
        return dict(self.items())


def scan_communities(acc: ScanAccumulator, g: Graph, labels, i: int, self_loops: bool = False) -> ScanAccumulator:
    """Add the weight of every arc leaving ``i`` to the slot of the target's community."""
    labels = np.asarray(labels, dtype=np.int64)
    acc.count = int(_scan(acc.keys, acc.values, acc.count, g.offsets, g.targets, g.weights,
                          labels, i, self_loops))
    return acc


# --------------------------------------------------------------------------
# local moving


@njit(cache=True, nogil=True)
def _move_kernel(t, nw, offsets, targets, weights, comm, kw, sigma, processed, m,
                 keys2d, vals2d, cursor, gain):
    n = offsets.shape[0] - 1
    keys = keys2d[t]
    vals = vals2d[t]
    dq = 0.0
    while True:
        start = atomic_add(cursor, 0, _VERTEX_CHUNK)
        if start >= n:
            break
        for i in range(start, min(start + _VERTEX_CHUNK, n)):
            if processed[i]:
                continue
            processed[i] = 1
            count = _scan(keys, vals, 0, offsets, targets, weights, comm, i, False)
            d = comm[i]
            ki = kw[i]
            k_to_d = vals[d]
            sigma_d = sigma[d]
            best_c = d
            best = 0.0
            for q in range(count):
                c = keys[q]
                if c == d:
                    continue
                e = delta_modularity(vals[c], k_to_d, ki, sigma[c], sigma_d, m)
                if e > best:
                    best = e
                    best_c = c
            _clear(keys, vals, count)
            if best_c == d:
                continue
            atomic_add(sigma, d, -ki)
            atomic_add(sigma, best_c, ki)
            comm[i] = best_c
            dq += best
            for k in range(offsets[i], offsets[i + 1]):
                processed[targets[k]] = 0
    gain[t] = dq


def louvain_move(g: Graph, labels: np.ndarray, kw: np.ndarray, sigma: np.ndarray,
                 tolerance: float, max_iterations: int = 20, workers: int = 1) -> int:
    """Greedy local moving; mutates ``labels`` and ``sigma`` in place.

    Each iteration visits the vertices not yet marked processed, moves each to
    the neighboring community with the largest positive modularity gain, and
    re-marks the neighbors of movers.  Stops once an iteration's total gain is
    at most ``tolerance``.

    Returns
    -------
    int
        Iterations performed.
    """
    n = g.num_vertices
    if labels.dtype != np.int64 or sigma.dtype != np.float64:
        raise TypeError("labels must be int64 and sigma float64 (mutated in place)")
    m = g.total_weight / 2.0
    if m <= 0:
        return 1
    processed = np.zeros(n, np.uint8)
    keys = np.zeros((workers, n), np.int64)
    vals = np.zeros((workers, n), np.float64)
    gain = np.zeros(workers, np.float64)
    for it in range(max_iterations):
        cursor = np.zeros(1, np.int64)
        run_workers(_move_kernel, workers, g.offsets, g.targets, g.weights, labels, kw, sigma,
                    processed, m, keys, vals, cursor, gain)
        if gain.sum() <= tolerance:
            break
    return it + 1


# --------------------------------------------------------------------------
# aggregation


@njit(cache=True, nogil=True)
def _count_kernel(t, nw, offsets, comm, counts, degrees):
    n = comm.shape[0]
    for i in range(n * t // nw, n * (t + 1) // nw):
        c = comm[i]
        atomic_add(counts, c, 1)
        atomic_add(degrees, c, offsets[i + 1] - offsets[i])


@njit(cache=True, nogil=True)
def _place_kernel(t, nw, comm, coff, fill, members):
    n = comm.shape[0]
    for i in range(n * t // nw, n * (t + 1) // nw):
        c = comm[i]
        members[coff[c] + atomic_add(fill, c, 1)] = i


@njit(cache=True, nogil=True)
def _super_kernel(t, nw, offsets, targets, weights, comm, coff, members, yoff,
                  ytargets, yweights, ydeg, keys2d, vals2d, cursor):
    nc = coff.shape[0] - 1
    keys = keys2d[t]
    vals = vals2d[t]
    while True:
        start = atomic_add(cursor, 0, _COMMUNITY_CHUNK)
        if start >= nc:
            break
        for c in range(start, min(start + _COMMUNITY_CHUNK, nc)):
            count = 0
            for p in range(coff[c], coff[c + 1]):
                count = _scan(keys, vals, count, offsets, targets, weights, comm, members[p], True)
            ks = np.sort(keys[:count])
            base = yoff[c]
            for q in range(count):
                d = ks[q]
                ytargets[base + q] = d
                yweights[base + q] = vals[d]
            ydeg[c] = count
            _clear(keys, vals, count)


@njit(cache=True, nogil=True)
def _compact_kernel(t, nw, yoff, ytargets, yweights, offsets, targets, weights):
    nc = offsets.shape[0] - 1
    for c in range(nc * t // nw, nc * (t + 1) // nw):
        src = yoff[c]
        for k in range(offsets[c], offsets[c + 1]):
            targets[k] = ytargets[src]
            weights[k] = yweights[src]
            src += 1


def louvain_aggregate(g: Graph, labels, workers: int = 1) -> Graph:
    """Collapse each community of ``labels`` (contiguous ids) into one super-vertex.

    Arcs between communities ``c`` and ``d`` merge into one arc of summed
    weight; weight inside ``c`` (internal arcs and self-loops) becomes the
    self-loop of super-vertex ``c``.
    """
    comm = check_membership(labels, g.num_vertices)
    nc = int(comm.max()) + 1
    counts = np.zeros(nc, np.int64)
    degrees = np.zeros(nc, np.int64)
    run_workers(_count_kernel, workers, g.offsets, comm, counts, degrees)
    if np.any(counts == 0):
        raise ValueError("community labels must be contiguous; renumber first")

    coff = np.zeros(nc + 1, np.int64)
    np.cumsum(counts, out=coff[1:])
    members = np.empty(g.num_vertices, np.int64)
    run_workers(_place_kernel, workers, comm, coff, np.zeros(nc, np.int64), members)

    # capacity per super-vertex is bounded by the summed degree of its members
    yoff = np.zeros(nc + 1, np.int64)
    np.cumsum(degrees, out=yoff[1:])
    ytargets = np.empty(g.num_arcs, np.int64)
    yweights = np.empty(g.num_arcs, np.float64)
    ydeg = np.zeros(nc, np.int64)
    keys = np.zeros((workers, nc), np.int64)
    vals = np.zeros((workers, nc), np.float64)
    run_workers(_super_kernel, workers, g.offsets, g.targets, g.weights, comm, coff, members,
                yoff, ytargets, yweights, ydeg, keys, vals, np.zeros(1, np.int64))

    offsets = np.zeros(nc + 1, np.int64)
    np.cumsum(ydeg, out=offsets[1:])
    targets = np.empty(offsets[-1], np.int64)
    weights = np.empty(offsets[-1], np.float64)
    run_workers(_compact_kernel, workers, yoff, ytargets, yweights, offsets, targets, weights)
    return Graph.from_csr(offsets, targets, weights, validate=False)


# --------------------------------------------------------------------------
# membership bookkeeping


def renumber_communities(labels) -> tuple[np.ndarray, int]:
    """Map labels to ``0..k-1`` in order of first appearance by vertex id."""
    labels = np.asarray(labels, dtype=np.int64)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(first.size, np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(first.size)
    return rank[inverse.ravel()], int(first.size)


def lookup_dendrogram(top, sub) -> np.ndarray:
    """Compose memberships: vertex ``i`` goes to ``sub[top[i]]``."""
    top = np.asarray(top, dtype=np.int64)
    sub = np.asarray(sub, dtype=np.int64)
    if top.size and (top.min() < 0 or top.max() >= sub.size):
        raise IndexError("top-level label out of range of the super-vertex membership")
    return sub[top]


# --------------------------------------------------------------------------
# driver


@dataclass
class PassSnapshot:
    """State handed to an observer after each pass.

    ``labels`` is the membership of ``graph`` after local moving (and the
    split, when splitting every pass); ``membership`` is the same partition
    expressed on the original graph.  ``aggregate`` is the super-vertex graph
    built from ``labels`` or None when the pass ended the run.
    """

    index: int
    graph: Graph
    labels: np.ndarray
    membership: np.ndarray
    aggregate: Graph | None = None


def louvain(g: Graph, params: LouvainParams | None = None,
            observer: Callable[[PassSnapshot], None] | None = None) -> tuple[np.ndarray, DetectionReport]:
    """Detect communities; returns contiguous labels and a run report."""
    params = params or LouvainParams()
    workers = params.workers
    split = params.split
    n = g.num_vertices
    clock = time.perf_counter
    t_start = clock()

    if g.total_weight <= 0:
        labels = np.arange(n, dtype=np.int64)
        report = DetectionReport(
            modularity=None, num_communities=n, disconnected_fraction=0.0, passes=0,
            total_runtime_s=clock() - t_start, workers=workers, params=params.as_dict(),
        )
        report.other_s = report.total_runtime_s
        return labels, report

    top = np.arange(n, dtype=np.int64)
    sub: np.ndarray | None = None
    gp = g
    tau = params.tolerance
    records: list[PassRecord] = []

    for lp in range(params.max_passes):
        t_pass = clock()
        nv = gp.num_vertices
        kw = vertex_weights(gp)
        sigma = kw.copy()
        sub = np.arange(nv, dtype=np.int64)

        t0 = clock()
        li = louvain_move(gp, sub, kw, sigma, tau, params.max_iterations, workers)
        t_move = clock() - t0

        t_split = 0.0
        if split.mode is SplitMode.PASS:
            t0 = clock()
            sub = split.apply(gp, sub, workers)
            t_split = clock() - t0

        ncomm = int(np.count_nonzero(np.bincount(sub, minlength=nv)))
        rec = PassRecord(lp, li, nv, ncomm, local_moving_s=t_move, splitting_s=t_split)
        records.append(rec)

        stop = li <= 1 or ncomm / nv > params.aggregation_tolerance
        aggregate = None
        t_agg = 0.0
        if not stop:
            sub, _ = renumber_communities(sub)
            top = lookup_dendrogram(top, sub)
            t0 = clock()
            aggregate = louvain_aggregate(gp, sub, workers)
            t_agg = clock() - t0

        if observer is not None:
            t0 = clock()
            membership = top if aggregate is not None else lookup_dendrogram(top, sub)
            observer(PassSnapshot(lp, gp, sub.copy(), membership.copy(), aggregate))
            t_pass += clock() - t0  # observer time is not charged to the run
            t_start += clock() - t0

        rec.aggregation_s = t_agg
        rec.other_s = max(0.0, clock() - t_pass - t_move - t_split - t_agg)
        if stop:
            break
        gp = aggregate
        sub = None  # the next pass starts from singletons of the new graph
        tau /= params.tolerance_drop

    if sub is not None:
        top = lookup_dendrogram(top, sub)

    t_final_split = 0.0
    if split.mode is SplitMode.LAST:
        t0 = clock()
        top = split.apply(g, top, workers)
        t_final_split = clock() - t0
    labels, ncomm = renumber_communities(top)
    total = clock() - t_start

    q = modularity(g, labels, workers)
    flags = disconnected_communities(g, labels, workers)
    report = DetectionReport(
        modularity=q,
        num_communities=ncomm,
        disconnected_fraction=disconnected_fraction(flags, ncomm),
        passes=len(records),
        total_runtime_s=total,
        workers=workers,
        local_moving_s=sum(r.local_moving_s for r in records),
        splitting_s=sum(r.splitting_s for r in records) + t_final_split,
        aggregation_s=sum(r.aggregation_s for r in records),
        pass_records=records,
        params=params.as_dict(),
    )
    report.other_s = max(0.0, total - report.local_moving_s - report.splitting_s - report.aggregation_s)
    return labels, report
