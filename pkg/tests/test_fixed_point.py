"""
Tests for 2-complexes, group actions, the energy of equivariant maps and the midpoint iteration
"""

import numpy as np
import pytest

from src.fixed_point.action import generate_action, parse_action, parse_permutation, trivial_action
from src.fixed_point.complex import (
    SimplicialComplex2,
    link_is_connected,
    link_of,
    octahedron,
    parse_complex,
    single_triangle,
    triangulated_cycle_cone,
)
from src.fixed_point.energy import energy, local_links, map_distance
from src.fixed_point.iteration import iterate_fixed_point
from src.utils.errors import (
    BadParameter,
    Disconnected,
    DisconnectedLink,
    MaxIterExceeded,
    NotEquivariant,
    ParseError,
    ShapeMismatch,
    UnknownVertex,
)
from src.utils.seeding import make_rng

ANTIPODAL = [1, 0, 3, 2, 5, 4]


def test_downward_closure():
    tri = single_triangle()
    assert tri.edges.tolist() == [[0, 1], [0, 2], [1, 2]]
    assert tri.triangles.tolist() == [[0, 1, 2]]
    with pytest.raises(BadParameter):
        SimplicialComplex2.from_simplices(3, [(0, 1, 1)])


def test_complex_rejects_missing_faces():
    with pytest.raises(BadParameter):
        SimplicialComplex2(n=3, edges=np.array([[0, 1]]), triangles=np.array([[0, 1, 2]]))


def test_links():
    assert link_of(single_triangle(), 0).dense().tolist() == [[0.0, 1.0], [1.0, 0.0]]
    square = link_of(octahedron(), 0)
    assert np.allclose(square.degrees(), 2.0)
    assert link_is_connected(square)

    apex = link_of(triangulated_cycle_cone(5), 5)
    assert apex.n == 5 and link_is_connected(apex)
    with pytest.raises(UnknownVertex):
        single_triangle().neighbors(3)


def test_bowtie_link_is_disconnected():
    bowtie = SimplicialComplex2.from_simplices(5, [(0, 1, 2), (0, 3, 4)])
    assert bowtie.is_connected()
    assert not link_is_connected(link_of(bowtie, 0))


def test_parse_complex():
    parsed = parse_complex("# one triangle\nv 3\nt 0 1 2\n")
    assert parsed.triangles.tolist() == [[0, 1, 2]]
    with_edge = parse_complex("v 4\nt 0 1 2\ne 2 3\n")
    assert [2, 3] in with_edge.edges.tolist()

    with pytest.raises(ParseError) as excinfo:
        parse_complex("v 3\nq 1 2\n")
    assert excinfo.value.line_number == 2
    with pytest.raises(ParseError):
        parse_complex("t 0 1 2\n")
    with pytest.raises(ParseError):
        parse_complex("v 3\nt 0 1 5\n")


def test_parse_permutation():
    assert parse_permutation("(0 1 2)(3 4)", 5).tolist() == [1, 2, 0, 4, 3]
    assert parse_permutation("()", 3).tolist() == [0, 1, 2]
    with pytest.raises(ParseError):
        parse_permutation("(0 9)", 5)
    with pytest.raises(ParseError):
        parse_permutation("0 1", 5)


def test_antipodal_action_on_octahedron():
    action = generate_action(octahedron(), [ANTIPODAL])
    assert action.order == 2
    assert action.orbit_labels().tolist() == [0, 0, 2, 2, 4, 4]
    assert action.representatives().tolist() == [0, 2, 4]
    assert action.stabilizer_orders() == {0: 1, 2: 1, 4: 1}

    parsed = parse_action("# antipodes\n(0 1)(2 3)(4 5)\n", octahedron())
    assert np.array_equal(parsed.elements, action.elements)


def test_rotation_of_cone():
    action = generate_action(triangulated_cycle_cone(5), [[1, 2, 3, 4, 0, 5]])
    assert action.order == 5
    assert action.representatives().tolist() == [0, 5]
    assert action.stabilizer_order(5) == 5


def test_action_must_preserve_simplices():
    with pytest.raises(BadParameter):
        generate_action(triangulated_cycle_cone(4), [[4, 1, 2, 3, 0]])
    with pytest.raises(ParseError):
        parse_action("(0 4)\n", triangulated_cycle_cone(4))


def test_energy_on_single_triangle():
    action = trivial_action(single_triangle())
    value = energy(action, [0.0, 1.0, 0.0], p=2.0)
    assert value.power == pytest.approx(4.0)
    assert value.value == pytest.approx(2.0)
    assert value.weights == {0: 2.0, 1: 2.0, 2: 2.0}
    assert value.contributions == pytest.approx({0: 1.0, 1: 2.0, 2: 1.0})
    assert energy(action, np.ones((3, 2)), p=3.0).value == 0.0


def test_energy_between_two_maps():
    action = trivial_action(single_triangle())
    rng = make_rng(2)
    phi, psi = rng.normal(size=(3, 2)), rng.normal(size=(3, 2))
    # raises IdentityViolation if the two forms disagree
    assert energy(action, phi, psi, p=3.0).value > 0


def test_energy_halves_under_antipodal_quotient():
    oct_ = octahedron()
    phi = np.array([0.3, 0.3, -1.0, -1.0, 2.0, 2.0])
    full = energy(trivial_action(oct_), phi, p=3.0)
    quotient = energy(generate_action(oct_, [ANTIPODAL]), phi, p=3.0)
    assert full.power == pytest.approx(2 * quotient.power)


def test_energy_input_checks():
    action = generate_action(octahedron(), [ANTIPODAL])
    with pytest.raises(NotEquivariant):
        energy(action, [0.0, 1.0, 0.0, 0.0, 0.0, 0.0])
    with pytest.raises(ShapeMismatch):
        energy(trivial_action(single_triangle()), [0.0, 1.0])
    with pytest.raises(BadParameter):
        energy(trivial_action(single_triangle()), [0.0, 1.0, 0.0], p=0.5)


def test_map_distance():
    action = trivial_action(single_triangle())
    assert map_distance(action, np.zeros(3), np.ones(3), 2.0) == pytest.approx(np.sqrt(6.0))
    assert map_distance(action, np.zeros(3), np.ones(3), 3.0) == pytest.approx(6.0 ** (1 / 3))


def test_local_link_weights_count_triangles():
    links = local_links(trivial_action(octahedron()))
    assert [link.a_m for link in links] == [8.0] * 6
    assert all(link.connected for link in links)


@pytest.mark.parametrize("p,tol", [(2.0, 1e-9), (4.0, 1e-4)])
def test_iteration_on_triangle_contracts_by_a_quarter(p, tol):
    # two equally weighted points have their midpoint as p-mean for every p
    run = iterate_fixed_point(trivial_action(single_triangle()), [0.0, 1.0, 0.0], p, tol=tol)
    assert run.converged
    assert np.allclose(run.contraction_ratios, 0.25, rtol=1e-4)
    assert np.allclose(run.phi_final, 1 / 3, atol=10 * tol)
    assert all(d > 0 for d in run.distances)


def test_iteration_on_octahedron():
    action = generate_action(octahedron(), [ANTIPODAL])
    phi0 = make_rng(0).normal(size=(6, 2))[action.orbit_labels()]
    run = iterate_fixed_point(action, phi0, 2.0, k=2)
    assert run.converged
    assert np.allclose(run.contraction_ratios, 0.25)
    assert run.energy_trace[-1] < run.energy_trace[0]


def test_iteration_starting_at_a_fixed_point():
    run = iterate_fixed_point(trivial_action(single_triangle()), np.full(3, 2.0), 3.0)
    assert run.converged and run.iterations == 0


def test_iteration_errors():
    with pytest.raises(DisconnectedLink) as excinfo:
        iterate_fixed_point(trivial_action(SimplicialComplex2.from_simplices(5, [(0, 1, 2), (0, 3, 4)])),
                            np.arange(5.0), 2.0)
    assert excinfo.value.vertex == 0

    with pytest.raises(Disconnected):
        iterate_fixed_point(trivial_action(SimplicialComplex2.from_simplices(6, [(0, 1, 2), (3, 4, 5)])),
                            np.arange(6.0), 2.0)

    with pytest.raises(BadParameter):
        iterate_fixed_point(trivial_action(single_triangle()), [0.0, 1.0, 0.0], 1.0)

    with pytest.raises(ShapeMismatch):
        iterate_fixed_point(trivial_action(single_triangle()), np.zeros((3, 1)), 2.0, k=2)


def test_iteration_reports_partial_run():
    with pytest.raises(MaxIterExceeded) as excinfo:
        iterate_fixed_point(trivial_action(single_triangle()), [0.0, 1.0, 0.0], 2.0, tol=1e-30, max_iter=1)
    partial = excinfo.value.partial
    assert partial.iterations == 1
    assert not partial.converged
    assert partial.energy_trace == pytest.approx([2.0, 0.5])
