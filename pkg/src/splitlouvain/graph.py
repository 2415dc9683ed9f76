"""Immutable weighted undirected graphs in CSR form, plus file loaders."""

from __future__ import annotations

import io
import os
import warnings
from dataclasses import dataclass

import numpy as np
from numba import njit


class GraphFormatError(ValueError):
    """Raised when an input file or edge array cannot form a valid graph."""


@njit(cache=True, nogil=True)
def _row_sums(offsets, weights):
    n = offsets.shape[0] - 1
    out = np.zeros(n, np.float64)
    for i in range(n):
        s = 0.0
        for k in range(offsets[i], offsets[i + 1]):
            s += weights[k]
        out[i] = s
    return out


@njit(cache=True, nogil=True)
def _ascending_sum(values):
    s = 0.0
    for k in range(values.shape[0]):
        s += values[k]
    return s


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Weighted undirected graph stored as a symmetric CSR adjacency.

    Every undirected edge ``{i, j}`` with ``i != j`` is stored as the two arcs
    ``(i, j, w)`` and ``(j, i, w)``; a self-loop ``(i, i, w)`` is stored once.
    Neighbor lists are sorted by target id.

    Attributes
    ----------
    offsets : ndarray of int64, shape (N + 1,)
    targets : ndarray of int64, shape (2M,)
    weights : ndarray of float64, shape (2M,)
    total_weight : float
        Sum of all arc weights (``2m``), accumulated vertex by vertex in
        ascending order so that it matches ``vertex_weights(g).sum()`` done
        the same way.
    """

    offsets: np.ndarray
    targets: np.ndarray
    weights: np.ndarray
    total_weight: float

    @classmethod
    def from_csr(cls, offsets, targets, weights, *, validate: bool = True) -> Graph:
        offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        targets = np.ascontiguousarray(targets, dtype=np.int64)
        weights = np.ascontiguousarray(weights, dtype=np.float64)
        if validate:
            _validate_csr(offsets, targets, weights)
        total = _ascending_sum(_row_sums(offsets, weights))
        return cls(_freeze(offsets), _freeze(targets), _freeze(weights), float(total))

    @classmethod
    def from_edges(cls, src, dst, weights=None, num_vertices: int | None = None) -> Graph:
        """Build a graph from (possibly one-directional) edge arrays.

        Entries repeated in the same orientation are summed.  An edge given in
        both orientations is one undirected edge; its two weights must agree.
        Missing reverse arcs are added.
        """
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise GraphFormatError("source and target arrays differ in length")
        if weights is None:
            w = np.ones(src.shape[0], np.float64)
        else:
            w = np.asarray(weights, dtype=np.float64).ravel()
            if w.shape != src.shape:
                raise GraphFormatError("weight array length does not match edges")
        if num_vertices is None:
            num_vertices = int(max(src.max(initial=-1), dst.max(initial=-1))) + 1
        n = int(num_vertices)
        if n <= 0:
            raise GraphFormatError("graph has zero vertices")
        if src.size and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise GraphFormatError(f"vertex id out of range [0, {n})")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise GraphFormatError("edge weights must be finite and strictly positive")

        # merge parallel entries of the same orientation
        key, inv = np.unique(src * n + dst, return_inverse=True)
        wsum = np.bincount(inv.ravel(), weights=w, minlength=key.size)
        u, v = key // n, key % n

        loop = u == v
        lo = np.minimum(u, v)[~loop]
        hi = np.maximum(u, v)[~loop]
        wl = wsum[~loop]
        ukey, uinv, ucount = np.unique(lo * n + hi, return_inverse=True, return_counts=True)
        uinv = uinv.ravel()
        first = np.full(ukey.size, np.nan)
        last = np.full(ukey.size, np.nan)
        first[uinv[::-1]] = wl[::-1]
        last[uinv] = wl
        both = ucount == 2
        if not np.allclose(first[both], last[both], rtol=1e-12, atol=0.0):
            raise GraphFormatError("reciprocal arcs carry different weights")
        elo, ehi = ukey // n, ukey % n

        a_src = np.concatenate([elo, ehi, u[loop]])
        a_dst = np.concatenate([ehi, elo, v[loop]])
        a_w = np.concatenate([first, first, wsum[loop]])
        order = np.lexsort((a_dst, a_src))
        a_src, a_dst, a_w = a_src[order], a_dst[order], a_w[order]
        offsets = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(a_src, minlength=n), out=offsets[1:])
        return cls.from_csr(offsets, a_dst, a_w, validate=False)

    @property
    def num_vertices(self) -> int:
        return self.offsets.shape[0] - 1

    @property
    def num_arcs(self) -> int:
        return self.targets.shape[0]

    @property
    def m(self) -> float:
        """Total undirected edge weight (half of ``total_weight``)."""
        return self.total_weight / 2.0

    def degree(self, i: int) -> int:
        return int(self.offsets[i + 1] - self.offsets[i])

    def neighbors(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.offsets[i], self.offsets[i + 1]
        return self.targets[lo:hi], self.weights[lo:hi]

    def arcs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return ``(src, dst, w)`` for every stored arc."""
        src = np.repeat(np.arange(self.num_vertices, dtype=np.int64), np.diff(self.offsets))
        return src, self.targets, self.weights

    def same_as(self, other: Graph) -> bool:
        return (
            np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.targets, other.targets)
            and np.array_equal(self.weights, other.weights)
        )

    def __repr__(self) -> str:
        return f"Graph(N={self.num_vertices}, arcs={self.num_arcs}, total_weight={self.total_weight})"


def _validate_csr(offsets, targets, weights) -> None:
    if offsets.ndim != 1 or offsets.size < 2:
        raise GraphFormatError("graph has zero vertices")
    if offsets[0] != 0 or offsets[-1] != targets.size or np.any(np.diff(offsets) < 0):
        raise GraphFormatError("offsets must be non-decreasing from 0 to the arc count")
    if targets.size != weights.size:
        raise GraphFormatError("targets and weights differ in length")
    n = offsets.size - 1
    if targets.size and (targets.min() < 0 or targets.max() >= n):
        raise GraphFormatError("arc target out of range")
    if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
        raise GraphFormatError("edge weights must be finite and strictly positive")


def vertex_weights(g: Graph) -> np.ndarray:
    """Weighted degree ``K_i`` of every vertex (self-loops counted once)."""
    return _row_sums(g.offsets, g.weights)


def is_symmetric(g: Graph) -> bool:
    """True if every arc ``(i, j, w)`` has a matching ``(j, i, w)``."""
    src, dst, w = g.arcs()
    fwd = np.lexsort((dst, src))
    rev = np.lexsort((src, dst))
    return bool(
        np.array_equal(src[fwd], dst[rev])
        and np.array_equal(dst[fwd], src[rev])
        and np.array_equal(w[fwd], w[rev])
    )


# --------------------------------------------------------------------------
# file formats


def load_matrix_market(path: str | os.PathLike) -> Graph:
    """Read a MatrixMarket ``coordinate`` file as an undirected graph.

    Supports ``pattern``/``integer``/``real`` fields and ``general``/``symmetric``
    symmetry.  Indices are 1-based in the file.  Vertices declared in the size
    line but absent from the entries are kept as isolated vertices.
    """
    with open(path) as fh:
        header = fh.readline()
        parts = header.strip().split()
        if len(parts) != 5 or parts[0] != "%%MatrixMarket" or parts[1].lower() != "matrix" \
                or parts[2].lower() != "coordinate":
            raise GraphFormatError(f"{path}: not a MatrixMarket coordinate header: {header.strip()!r}")
        field, symmetry = parts[3].lower(), parts[4].lower()
        if field not in ("pattern", "integer", "real"):
            raise GraphFormatError(f"{path}: unsupported field {field!r}")
        if symmetry not in ("general", "symmetric"):
            raise GraphFormatError(f"{path}: unsupported symmetry {symmetry!r}")
        line = fh.readline()
        while line and (line.startswith("%") or not line.strip()):
            line = fh.readline()
        try:
            rows, cols, nnz = (int(x) for x in line.split())
        except ValueError:
            raise GraphFormatError(f"{path}: malformed size line {line.strip()!r}") from None
        n = max(rows, cols)
        if n <= 0:
            raise GraphFormatError(f"{path}: graph has zero vertices")
        ncols = 2 if field == "pattern" else 3
        body = fh.read()
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)  # empty body
            data = np.loadtxt(io.StringIO(body), comments="%", ndmin=2, dtype=np.float64)
    except ValueError as exc:
        raise GraphFormatError(f"{path}: malformed entry: {exc}") from None
    if data.shape[0] != nnz:
        raise GraphFormatError(f"{path}: expected {nnz} entries, found {data.shape[0]}")
    if nnz and data.shape[1] < ncols:
        raise GraphFormatError(f"{path}: entries need {ncols} columns")
    if nnz == 0:
        data = np.zeros((0, ncols))
    idx = data[:, :2]
    if np.any(idx != np.floor(idx)):
        raise GraphFormatError(f"{path}: non-integer vertex index")
    if idx.size and (idx.min() < 1 or idx.max() > n):
        raise GraphFormatError(f"{path}: vertex index out of declared range [1, {n}]")
    w = None if field == "pattern" else data[:, 2]
    if w is not None and np.any(w <= 0):
        raise GraphFormatError(f"{path}: non-positive edge weight")
    ids = idx.astype(np.int64) - 1
    return Graph.from_edges(ids[:, 0], ids[:, 1], w, num_vertices=n)


def load_edgelist(path: str | os.PathLike, weighted: bool = False) -> Graph:
    """Read whitespace separated ``u v [w]`` lines with 0-based ids."""
    cols = (0, 1, 2) if weighted else (0, 1)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            data = np.loadtxt(path, comments="#", usecols=cols, ndmin=2, dtype=np.float64)
    except ValueError as exc:
        raise GraphFormatError(f"{path}: cannot parse edge list: {exc}") from None
    if data.shape[0] == 0:
        raise GraphFormatError(f"{path}: graph has zero vertices")
    idx = data[:, :2]
    if np.any(idx != np.floor(idx)):
        raise GraphFormatError(f"{path}: non-integer vertex id")
    if idx.min() < 0:
        raise GraphFormatError(f"{path}: negative vertex id")
    ids = idx.astype(np.int64)
    return Graph.from_edges(ids[:, 0], ids[:, 1], data[:, 2] if weighted else None)


def load_graph(path: str | os.PathLike, fmt: str | None = None, weighted: bool = False) -> Graph:
    """Dispatch on ``fmt`` (``"mtx"`` or ``"edgelist"``); guessed from the suffix if None."""
    if fmt is None:
        fmt = "mtx" if str(path).endswith(".mtx") else "edgelist"
    if fmt == "mtx":
        return load_matrix_market(path)
    if fmt == "edgelist":
        return load_edgelist(path, weighted=weighted)
    raise ValueError(f"unknown graph format {fmt!r}")


def write_edgelist(g: Graph, path: str | os.PathLike) -> None:
    """Write one ``u v w`` line per undirected edge (``u <= v``)."""
    src, dst, w = g.arcs()
    keep = src <= dst
    with open(path, "w") as fh:
        for u, v, x in zip(src[keep].tolist(), dst[keep].tolist(), w[keep].tolist()):
            fh.write(f"{u} {v} {x!r}\n")
