"""
Tests for weighted graphs, the Markov operator, spectra and union bounds
"""

import numpy as np
import pytest

from src.graph_core.families import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    random_weighted_graph,
    star_graph,
)
from src.graph_core.graph_io import load_graph, parse_graph, save_graph
from src.graph_core.spectral import generalized_spectrum_check, spectral_report
from src.graph_core.union_bounds import perturbation_bound_check, union, union_gap_bound
from src.graph_core.weighted_graph import WeightedGraph, build_graph, markov_apply, measures
from src.utils.errors import (
    BadParameter,
    EmptyGraph,
    IndexOutOfRange,
    IsolatedVertex,
    NegativeWeight,
    ParseError,
    SizeMismatch,
)
from src.utils.seeding import make_rng


def test_build_graph_single_edge():
    g = build_graph(2, [(0, 1, 1)])
    assert np.allclose(g.degrees(), [1, 1])


def test_build_graph_triangle_degrees():
    g = build_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert np.allclose(g.degrees(), [2, 2, 2])


def test_build_graph_sums_both_orientations():
    g = build_graph(2, [(0, 1, 1), (1, 0, 2)])
    assert g.weight(0, 1) == 3.0
    assert g.weight(1, 0) == 3.0


def test_build_graph_rejects_bad_entries():
    with pytest.raises(NegativeWeight) as excinfo:
        build_graph(2, [(0, 1, -1)])
    assert excinfo.value.w == -1.0
    with pytest.raises(IndexOutOfRange):
        build_graph(2, [(0, 2, 1)])
    with pytest.raises(BadParameter):
        build_graph(0, [])


def test_measures_complete_and_star():
    triangle = measures(complete_graph(3))
    assert np.allclose(triangle.nu, [1 / 3] * 3)
    assert np.allclose(triangle.edge_prob.data, 1 / 6)
    assert triangle.edge_prob.nnz == 6

    star = measures(star_graph(3))
    assert np.allclose(star.nu, [1 / 2, 1 / 6, 1 / 6, 1 / 6])


def test_measures_reject_isolated_vertex():
    g = build_graph(3, [(0, 1, 1)])
    with pytest.raises(IsolatedVertex) as excinfo:
        measures(g)
    assert excinfo.value.vertex == 2


def test_markov_apply():
    assert np.allclose(markov_apply(complete_graph(3), [1, 1, 1]), [1, 1, 1])
    assert np.allclose(markov_apply(path_graph(2), [3.0, -2.0]), [-2.0, 3.0])
    assert np.allclose(markov_apply(complete_graph(3), [1, 0, 0]), [0, 0.5, 0.5])


def test_markov_apply_vector_valued():
    f = np.array([[1.0, 2.0], [0.0, 0.0], [0.0, 4.0]])
    assert np.allclose(markov_apply(complete_graph(3), f), [[0, 2], [0.5, 3], [0.5, 1]])


def test_spectrum_of_small_graphs():
    triangle = spectral_report(complete_graph(3))
    assert np.allclose(triangle.eigenvalues, [1, -0.5, -0.5])
    assert triangle.restricted_norm == pytest.approx(0.5)
    assert triangle.connected and not triangle.bipartite

    square = spectral_report(cycle_graph(4))
    assert np.allclose(square.eigenvalues, [1, 0, 0, -1], atol=1e-12)
    assert square.restricted_norm == pytest.approx(1.0)
    assert square.bipartite


@pytest.mark.parametrize("n", [2, 5, 16, 64])
def test_complete_bipartite_spectrum(n):
    report = spectral_report(complete_bipartite_graph(n))
    assert report.eigenvalues[0] == pytest.approx(1.0, abs=1e-10)
    assert report.eigenvalues[-1] == pytest.approx(-1.0, abs=1e-10)
    assert np.allclose(report.eigenvalues[1:-1], 0.0, atol=1e-10)


@pytest.mark.parametrize("m", [2, 3, 10, 64])
def test_complete_graph_gap(m):
    assert spectral_report(complete_graph(m)).restricted_norm == pytest.approx(1 / (m - 1), abs=1e-10)


def test_disconnected_graph_reports_gap_one():
    g = build_graph(4, [(0, 1, 1), (2, 3, 1)])
    report = spectral_report(g)
    assert not report.connected
    assert report.restricted_norm == 1.0


def test_isolated_vertices_are_dropped_and_counted():
    g = build_graph(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    report = spectral_report(g)
    assert report.isolated_removed == 1
    assert not report.connected


def test_empty_graph_has_no_spectrum():
    with pytest.raises(EmptyGraph):
        spectral_report(WeightedGraph.empty(3))


def test_generalized_problem_matches_symmetrized_matrix():
    g = random_weighted_graph(12, make_rng(3), density=0.6)
    assert generalized_spectrum_check(g) < 1e-10


def test_union_with_empty_and_itself():
    g = random_weighted_graph(7, make_rng(1))
    assert np.allclose(union(g, WeightedGraph.empty(7)).dense(), g.dense())

    doubled = union(g, g)
    assert np.allclose(doubled.dense(), 2 * g.dense())
    assert np.allclose(spectral_report(doubled).eigenvalues, spectral_report(g).eigenvalues)


def test_union_rejects_size_mismatch():
    with pytest.raises(SizeMismatch):
        union(complete_graph(3), complete_graph(4))


def test_perturbation_bound_trivial_cases():
    g = random_weighted_graph(8, make_rng(2))

    empty = perturbation_bound_check(g, WeightedGraph.empty(8))
    assert empty.delta_prime == 0.0
    assert empty.lhs == pytest.approx(0.0, abs=1e-12)
    assert empty.holds and empty.sharp_holds

    same = perturbation_bound_check(g, g)
    assert same.delta_prime == pytest.approx(1.0)
    assert same.norm_union == pytest.approx(same.norm_g1)
    assert same.holds


def test_perturbation_bound_on_random_pairs():
    rng = make_rng(11)
    for _ in range(50):
        g1 = random_weighted_graph(9, rng)
        g2 = random_weighted_graph(9, rng, density=0.5).scaled(0.05)
        check = perturbation_bound_check(g1, g2)
        assert check.holds
        assert check.sharp_holds


def test_union_gap_bound_for_regular_graphs():
    result = union_gap_bound(cycle_graph(5), complete_graph(5))
    assert result.delta == pytest.approx(0.0, abs=1e-12)
    c5 = spectral_report(cycle_graph(5)).restricted_norm
    assert result.bound == pytest.approx(max(c5, 0.25))
    assert result.holds and result.lower_holds


def test_union_gap_bound_with_itself_is_tight():
    g = complete_graph(6)
    result = union_gap_bound(g, g)
    assert result.bound == pytest.approx(0.2)
    assert result.norm_sum == pytest.approx(0.2)
    assert result.holds


def test_union_gap_bound_on_random_pairs():
    rng = make_rng(5)
    for _ in range(50):
        result = union_gap_bound(random_weighted_graph(8, rng), random_weighted_graph(8, rng))
        assert result.holds
        assert result.lower_holds


def test_graph_file_round_trip(tmp_path):
    g = build_graph(4, [(0, 1, 0.5), (1, 2, 2.0), (2, 3, 1.0), (3, 3, 0.25)])
    path = tmp_path / "g.txt"
    save_graph(g, path)
    assert np.allclose(load_graph(path).dense(), g.dense())


def test_graph_parse_errors_name_the_line():
    with pytest.raises(ParseError) as excinfo:
        parse_graph("n 3\n0 1 1\n0 x 1\n")
    assert excinfo.value.line_number == 3
    with pytest.raises(ParseError):
        parse_graph("# nothing here\n")


@pytest.mark.parametrize("c", [1e-3, 0.5, 7.0, 1e4])
def test_measures_and_spectrum_ignore_weight_scale(c):
    g = random_weighted_graph(8, make_rng(31))
    scaled = g.scaled(c)
    base_measures, scaled_measures = measures(g), measures(scaled)
    assert np.allclose(scaled_measures.nu, base_measures.nu, rtol=1e-12, atol=0.0)
    assert np.allclose(scaled_measures.edge_prob.toarray(), base_measures.edge_prob.toarray(), rtol=1e-12, atol=0.0)
    assert np.allclose(spectral_report(scaled).eigenvalues, spectral_report(g).eigenvalues, atol=1e-10)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_edge_measure_marginal_is_vertex_measure(seed):
    g = random_weighted_graph(9, make_rng(seed), density=0.7)
    if g.has_isolated():
        g = union(g, cycle_graph(9))
    m = measures(g)
    assert m.edge_prob.sum() == pytest.approx(1.0)
    assert np.allclose(np.asarray(m.edge_prob.sum(axis=1)).ravel(), m.nu, rtol=1e-12, atol=1e-15)
