import io

import pytest

from graphsize.graph import (EdgeListParseError, Graph, GraphError,
                             exact_stats, largest_connected_component,
                             load_edge_list, size_identity, write_edge_list)

from conftest import graph_from_text


def test_load_two_edge_path():
    g = graph_from_text("1 2\n2 3\n")
    assert g.node_count == 3
    assert g.edge_count == 2
    degs = {g.ext_id(v): g.degree(v) for v in g}
    assert degs == {1: 1, 2: 2, 3: 1}


def test_load_drops_self_loop():
    g = graph_from_text("1 1\n1 2\n")
    assert g.node_count == 2
    assert g.edge_count == 1
    assert g.load_report.self_loops_dropped == 1


def test_load_collapses_duplicates_and_skips_comments():
    g = graph_from_text("1 2\n2 1\n# c\n")
    assert g.node_count == 2
    assert g.edge_count == 1
    assert g.load_report.duplicates_collapsed == 1
    assert g.load_report.comments_skipped == 1


def test_load_malformed_line_reports_line_number():
    with pytest.raises(EdgeListParseError) as exc:
        graph_from_text("1 2\n1 2 3\n")
    assert exc.value.line_number == 2


def test_load_non_integer_id_rejected():
    with pytest.raises(EdgeListParseError):
        graph_from_text("a b\n")


def test_load_empty_input_rejected():
    with pytest.raises(GraphError):
        graph_from_text("")


def test_degree_sum_is_twice_edge_count():
    g = graph_from_text("1 2\n2 3\n3 4\n4 1\n1 3\n")
    assert sum(g.degrees) == 2 * g.edge_count


def test_adjacency_is_symmetric_and_sorted():
    g = graph_from_text("5 1\n5 9\n1 9\n9 2\n")
    for v in g:
        nbrs = g.neighbors(v)
        assert list(nbrs) == sorted(nbrs)
        for u in nbrs:
            assert v in g.neighbors(u)
            assert g.has_edge(v, u) and g.has_edge(u, v)


def test_has_edge_negative_case():
    g = graph_from_text("0 1\n1 2\n")
    a, c = g.dense_index(0), g.dense_index(2)
    assert not g.has_edge(a, c)


def test_roundtrip_serialization_is_stable():
    g = graph_from_text("1 2\n2 3\n3 1\n4 5\n")
    buf = io.StringIO()
    write_edge_list(g, buf)
    g2 = load_edge_list(io.StringIO(buf.getvalue()))
    assert g2.node_count == g.node_count
    assert g2.edge_count == g.edge_count
    assert g2.digest == g.digest


def test_lcc_picks_largest_component():
    g = graph_from_text("1 2\n2 3\n3 1\n8 9\n")
    lcc = largest_connected_component(g)
    assert sorted(lcc.ext_ids) == [1, 2, 3]
    assert lcc.edge_count == 3


def test_lcc_identity_on_connected_graph():
    g = graph_from_text("1 2\n2 3\n")
    lcc = largest_connected_component(g)
    assert lcc.digest == g.digest


def test_lcc_tie_break_smallest_external_id():
    g = graph_from_text("5 6\n1 2\n")
    lcc = largest_connected_component(g)
    assert sorted(lcc.ext_ids) == [1, 2]


def test_exact_stats_k5(k5):
    stats = exact_stats(k5)
    assert stats.mean_degree == pytest.approx(4.0)
    assert stats.density == pytest.approx(1.0)


def test_exact_stats_star(star4):
    stats = exact_stats(star4)
    assert stats.mean_degree == pytest.approx(1.6)
    assert stats.density == pytest.approx(0.4)


def test_exact_stats_path(path3):
    stats = exact_stats(path3)
    assert stats.mean_degree == pytest.approx(4.0 / 3.0)
    assert stats.density == pytest.approx(2.0 / 3.0)
    assert stats.mean_square_degree >= stats.mean_degree ** 2


def test_exact_stats_requires_two_nodes():
    g = Graph([()], [0])
    with pytest.raises(GraphError):
        exact_stats(g)


def test_size_identity_examples(k5, star4, path3):
    assert size_identity(k5) == pytest.approx(5.0, abs=1e-12)
    assert size_identity(star4) == pytest.approx(5.0, abs=1e-12)
    assert size_identity(path3) == pytest.approx(3.0, abs=1e-12)


def test_size_identity_requires_an_edge():
    g = Graph([(), ()], [0, 1])
    with pytest.raises(GraphError):
        size_identity(g)


def test_components_and_connectivity():
    g = graph_from_text("1 2\n3 4\n")
    assert not g.is_connected
    assert len(g.components) == 2
    assert graph_from_text("1 2\n2 3\n").is_connected
