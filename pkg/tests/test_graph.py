import io

import numpy as np
import pytest

from infinitewalk.graph import (
    Bipartite,
    Disconnected,
    EdgeListError,
    GraphError,
    IsolatedNode,
    build_graph,
    largest_connected_component,
    load_edge_list,
    load_labels,
    validate_walkable,
)
from infinitewalk.synthetic import complete_graph, cycle_graph

from conftest import random_walkable_suite


def parse(text):
    return load_edge_list(io.StringIO(text))


class TestLoadEdgeList:
    def test_triangle(self):
        g = parse("0 1\n1 2\n2 0")
        assert g.n == 3
        assert np.array_equal(g.degree, [2, 2, 2])
        assert g.volume == 6

    def test_duplicate_edges_merge_weights(self):
        g = parse("a b 2.0\nb a 1.0")
        assert g.n == 2
        assert g.num_edges == 1
        assert g.edge_w[0] == 3.0
        assert np.array_equal(g.degree, [3, 3])
        assert g.volume == 6

    def test_self_loop_rejected_with_line_number(self):
        with pytest.raises(EdgeListError, match="line 2"):
            parse("0 1\n0 0")

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(EdgeListError):
            parse("0 1 -2")
        with pytest.raises(EdgeListError):
            parse("0 1 0")

    def test_malformed_tokens_rejected(self):
        with pytest.raises(EdgeListError):
            parse("0 1 2 3")
        with pytest.raises(EdgeListError):
            parse("0 1 abc")
        with pytest.raises(EdgeListError):
            parse("lonely")

    def test_comments_and_blank_lines_ignored(self):
        g = parse("# header\n\n0 1\n  \n# trailer\n1 2\n2 0\n")
        assert g.n == 3

    def test_string_ids_remapped_densely(self):
        g = parse("apple banana\nbanana cherry")
        assert g.node_names == ("apple", "banana", "cherry")

    def test_volume_is_twice_total_edge_weight(self):
        for g in random_walkable_suite(6):
            assert g.volume == pytest.approx(2 * g.edge_w.sum(), abs=0)


class TestLargestConnectedComponent:
    def test_connected_graph_unchanged(self, k3):
        out = largest_connected_component(k3)
        assert out.n == 3
        assert out.volume == 6

    def test_smaller_component_dropped(self):
        g = parse("0 1\n1 2\n2 0\n3 4")
        out = largest_connected_component(g)
        assert out.n == 3
        assert set(out.node_names) == {"0", "1", "2"}

    def test_tie_breaks_to_component_with_smallest_id(self):
        g = build_graph(
            6,
            [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)],
            node_names=tuple("012345"),
        )
        out = largest_connected_component(g)
        assert set(out.node_names) == {"0", "1", "2"}

    def test_idempotent(self):
        g = parse("0 1\n1 2\n2 0\n3 4")
        once = largest_connected_component(g)
        twice = largest_connected_component(once)
        assert once.n == twice.n
        assert np.array_equal(once.degree, twice.degree)
        assert once.node_names == twice.node_names

    def test_empty_graph_rejected(self):
        with pytest.raises(GraphError):
            largest_connected_component(build_graph(0, []))


class TestValidateWalkable:
    def test_k3_ok(self, k3):
        validate_walkable(k3)

    @pytest.mark.parametrize("n", [3, 4, 5, 8])
    def test_complete_graphs_ok(self, n):
        validate_walkable(complete_graph(n))

    def test_single_edge_bipartite(self):
        with pytest.raises(Bipartite):
            validate_walkable(parse("0 1"))

    @pytest.mark.parametrize("n", [4, 6, 10])
    def test_even_cycles_bipartite(self, n):
        with pytest.raises(Bipartite):
            validate_walkable(cycle_graph(n))

    @pytest.mark.parametrize("n", [3, 5, 9])
    def test_odd_cycles_ok(self, n):
        validate_walkable(cycle_graph(n))

    def test_disconnected_reports_component_sizes(self):
        g = parse("0 1\n1 2\n2 0\n3 4")
        with pytest.raises(Disconnected) as exc:
            validate_walkable(g)
        assert exc.value.component_sizes == [3, 2]

    def test_isolated_node_detected(self):
        g = build_graph(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
        with pytest.raises(IsolatedNode) as exc:
            validate_walkable(g)
        assert exc.value.node == 3


class TestLabels:
    def test_load_against_graph_names(self, k3):
        g = parse("a b\nb c\nc a")
        data = load_labels(io.StringIO("a red blue\nc red"), g)
        assert data.num_labels == 2
        assert data.labels[0] == {0, 1}
        assert data.labels[1] == frozenset()
        assert data.labels[2] == {0}

    def test_unknown_nodes_skipped(self):
        g = parse("a b\nb c\nc a")
        data = load_labels(io.StringIO("zzz red\na red"), g)
        assert data.labels[0] == {0}
        assert data.num_labels == 1

    def test_label_counts(self):
        g = parse("a b\nb c\nc a")
        data = load_labels(io.StringIO("a x y\nb x"), g)
        assert data.label_counts().tolist() == [2, 1, 0]
