import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitlouvain import (
    Graph,
    GraphFormatError,
    is_symmetric,
    load_edgelist,
    load_graph,
    load_matrix_market,
    vertex_weights,
    write_edgelist,
)
from splitlouvain.generators import random_weighted

from oracles import degree_oracle


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestMatrixMarket:
    def test_pattern_path_is_symmetrized(self, tmp_path):
        p = write(tmp_path, "path.mtx",
                  "%%MatrixMarket matrix coordinate pattern general\n% comment\n4 4 3\n1 2\n2 3\n3 4\n")
        g = load_matrix_market(p)
        assert g.num_vertices == 4
        assert g.num_arcs == 6
        assert np.all(g.weights == 1.0)
        assert g.total_weight == 6.0
        assert is_symmetric(g)

    def test_reciprocal_pair_not_doubled(self, tmp_path):
        p = write(tmp_path, "r.mtx",
                  "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 5.0\n2 1 5.0\n")
        g = load_matrix_market(p)
        assert g.num_arcs == 2
        assert g.weights.tolist() == [5.0, 5.0]

    def test_reciprocal_pair_with_different_weights_rejected(self, tmp_path):
        p = write(tmp_path, "r.mtx",
                  "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 5.0\n2 1 4.0\n")
        with pytest.raises(GraphFormatError):
            load_matrix_market(p)

    def test_parallel_entries_summed(self, tmp_path):
        p = write(tmp_path, "d.mtx",
                  "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1.5\n1 2 2.0\n")
        g = load_matrix_market(p)
        assert g.weights.tolist() == [3.5, 3.5]

    def test_triangle_total_weight(self, tmp_path):
        p = write(tmp_path, "t.mtx",
                  "%%MatrixMarket matrix coordinate integer symmetric\n3 3 3\n2 1 1\n3 1 1\n3 2 1\n")
        g = load_matrix_market(p)
        assert g.total_weight == 6.0
        assert g.m == 3.0

    def test_isolated_vertices_and_self_loops_kept(self, tmp_path):
        p = write(tmp_path, "i.mtx",
                  "%%MatrixMarket matrix coordinate real symmetric\n5 5 2\n2 1 1.0\n3 3 2.5\n")
        g = load_matrix_market(p)
        assert g.num_vertices == 5
        assert g.degree(3) == 0 and g.degree(4) == 0
        assert g.neighbors(2)[0].tolist() == [2]
        assert vertex_weights(g)[2] == 2.5

    @pytest.mark.parametrize("text", [
        "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n",
        "not a header\n2 2 1\n1 2\n",
        "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 3\n",
        "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 -1.0\n",
        "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 0\n",
        "%%MatrixMarket matrix coordinate pattern general\n0 0 0\n",
        "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n",
    ])
    def test_errors(self, tmp_path, text):
        p = write(tmp_path, "bad.mtx", text)
        with pytest.raises(GraphFormatError):
            load_matrix_market(p)


class TestEdgeList:
    def test_path(self, tmp_path):
        g = load_edgelist(write(tmp_path, "p.el", "# a path\n0 1\n1 2\n"))
        assert g.num_vertices == 3
        assert g.num_arcs == 4

    def test_self_loop_counted_once(self, tmp_path):
        g = load_edgelist(write(tmp_path, "s.el", "0 0 2.0\n"), weighted=True)
        assert g.num_vertices == 1
        assert vertex_weights(g).tolist() == [2.0]
        assert g.total_weight == 2.0

    def test_empty_file_is_error(self, tmp_path):
        with pytest.raises(GraphFormatError):
            load_edgelist(write(tmp_path, "e.el", ""))

    def test_negative_id(self, tmp_path):
        with pytest.raises(GraphFormatError):
            load_edgelist(write(tmp_path, "n.el", "0 -1\n"))

    def test_bad_weight(self, tmp_path):
        with pytest.raises(GraphFormatError):
            load_edgelist(write(tmp_path, "w.el", "0 1 heavy\n"), weighted=True)

    def test_format_dispatch(self, tmp_path):
        p = write(tmp_path, "g.txt", "0 1\n")
        assert load_graph(p).num_arcs == 2
        with pytest.raises(ValueError):
            load_graph(p, "csv")


def test_round_trip_through_edgelist(tmp_path):
    g = random_weighted(40, 0.2, seed=3, self_loops=True)
    p = tmp_path / "rt.el"
    write_edgelist(g, p)
    h = load_edgelist(p, weighted=True)
    assert g.same_as(h)
    assert h.total_weight == g.total_weight


def test_neighbor_lists_sorted():
    g = Graph.from_edges([5, 3, 1, 0], [0, 0, 0, 2])
    assert g.neighbors(0)[0].tolist() == [1, 2, 3, 5]


def test_graph_is_immutable(triangle):
    with pytest.raises(ValueError):
        triangle.weights[0] = 3.0
    with pytest.raises(AttributeError):
        triangle.total_weight = 1.0


class TestVertexWeights:
    def test_triangle(self, triangle):
        assert vertex_weights(triangle).tolist() == [2.0, 2.0, 2.0]

    def test_star(self):
        g = Graph.from_edges([0, 0, 0], [1, 2, 3])
        assert vertex_weights(g).tolist() == [3.0, 1.0, 1.0, 1.0]

    def test_random_against_naive_accumulation(self):
        g = random_weighted(50, 0.15, seed=42)
        assert vertex_weights(g).tolist() == degree_oracle(g)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 40), p=st.floats(0.0, 0.6), seed=st.integers(0, 2**31), loops=st.booleans())
def test_graph_invariants(n, p, seed, loops):
    g = random_weighted(n, p, seed=seed, self_loops=loops)
    assert g.offsets[0] == 0 and g.offsets[-1] == g.num_arcs
    assert np.all(np.diff(g.offsets) >= 0)
    assert is_symmetric(g)
    assert np.all(g.weights > 0)
    k = vertex_weights(g)
    s = 0.0
    for x in k.tolist():
        s += x
    assert s == g.total_weight
