"""
Acceptance-scale checks: oracle agreement, the inequality suite and the Monte Carlo scaling runs.

Run with `pytest -m slow`.
"""

import numpy as np
import pytest

from src.fixed_point.action import trivial_action
from src.fixed_point.complex import link_of, octahedron, single_triangle
from src.fixed_point.energy import energy
from src.fixed_point.iteration import iterate_fixed_point
from src.graph_core.families import random_weighted_graph
from src.graph_core.spectral import spectral_report
from src.graph_core.union_bounds import perturbation_bound_check, union_gap_bound
from src.orchestrator.experiment_orchestrator import ExperimentDescriptor
from src.poincare.estimator import poincare2_closed_form, poincare_estimate
from src.poincare.operator_bounds import mean_zero_poincare_check
from src.random_graphs.erdos_renyi import degrees_in_band
from src.random_graphs.montecarlo import median_by, montecarlo
from src.random_groups.words import enumerate_relators
from src.utils.seeding import make_rng

pytestmark = pytest.mark.slow

SCALING_RATIO = 1.5
LINK_SLACK = 0.05


def within_ratio(a, b, ratio=SCALING_RATIO):
    return max(a, b) / min(a, b) <= ratio


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_relator_enumeration_size(m):
    assert len(enumerate_relators(m)) == (2 * m - 1) ** 3 + 1


def test_poincare_estimate_agrees_with_closed_form():
    rng = make_rng(2024)
    for index in range(50):
        g = random_weighted_graph(int(rng.integers(3, 9)), rng)
        closed = poincare2_closed_form(spectral_report(g))
        estimate = poincare_estimate(g, 2.0, restarts=4, seed=index)
        assert estimate.lower_estimate == pytest.approx(closed, abs=1e-6)


def test_perturbation_bound_suite():
    rng = make_rng(64)
    for _ in range(1000):
        n = int(rng.integers(3, 10))
        g1 = random_weighted_graph(n, rng)
        # weights in [0.1, 1) keep max d₂/d₁ under 10, so a 0.05 scale bounds δ′ by 0.5
        g2 = random_weighted_graph(n, rng, density=0.6).scaled(0.05)
        check = perturbation_bound_check(g1, g2)
        assert check.delta_prime <= 0.5
        assert check.holds


def test_union_gap_bound_suite():
    rng = make_rng(65)
    for _ in range(1000):
        n = int(rng.integers(3, 10))
        result = union_gap_bound(random_weighted_graph(n, rng), random_weighted_graph(n, rng))
        assert result.holds


@pytest.mark.parametrize("complex_factory", [single_triangle, octahedron])
def test_energy_identity_and_midpoint_suite(complex_factory):
    action = trivial_action(complex_factory())
    n = action.complex.n
    rng = make_rng(66)
    for _ in range(1000):
        k = int(rng.integers(1, 4))
        p = float(rng.uniform(1.0, 6.0))
        phi, psi = rng.normal(size=(n, k)), rng.normal(size=(n, k))
        # energy raises IdentityViolation when its two forms disagree
        pair = energy(action, phi, psi, p=p)
        midpoint = energy(action, (phi + psi) / 2.0, p=p)
        assert midpoint.power <= pair.power + 1e-9


@pytest.mark.parametrize("p", [2.0, 3.0, 4.0])
def test_mean_zero_poincare_bound_suite(p):
    rng = make_rng(int(10 * p))
    threshold = 2.0 / (p * 2.0 ** p)
    for _ in range(100):
        g = random_weighted_graph(80, rng, low=0.9, high=1.0)
        assert spectral_report(g).restricted_norm < threshold
        for _ in range(10):
            assert mean_zero_poincare_check(g, rng.normal(size=g.n), p).holds


def er_descriptor(kind, ms, trials, seed):
    return ExperimentDescriptor(kind=kind, grid={"m": ms, "rho": ["2*logm/m"]}, trials=trials, master_seed=seed)


def test_er_gap_scaling_is_stable():
    frame = montecarlo(er_descriptor("er_gap", [1000, 4000], 50, 1))
    medians = median_by(frame, "scaled_gap")
    assert within_ratio(medians[1000], medians[4000])
    assert frame["connected"].mean() >= 0.9


def test_degrees_concentrate():
    frame = montecarlo(er_descriptor("er_degree", [2000], 100, 2))
    in_band = [
        degrees_in_band(row, row.m, row.rho) for row in frame.itertuples(index=False)
    ]
    assert np.mean(in_band) >= 0.95


def test_degree_deviation_scaling_is_stable():
    frame = montecarlo(er_descriptor("er_degree", [1000, 4000], 50, 3))
    frame["scaled_dev"] = frame["l1_dev_expected"] * np.sqrt((frame["m"] - 1) * frame["rho"])
    medians = median_by(frame, "scaled_dev")
    assert within_ratio(medians[1000], medians[4000])


def test_random_group_link_pipeline():
    densities = [16, 32, 64]
    frame = montecarlo(ExperimentDescriptor(
        kind="certify",
        grid={"m": [300, 600], "model": ["binomial"], "param": [f"{c}*m^-2" for c in densities]},
        trials=50, master_seed=4,
    ))
    frame["density"] = (frame["param"] * frame["m"] ** 2).round().astype(int)
    frame["scaled"] = frame["gap"] * np.sqrt(frame["density"])

    for c in densities:
        medians = median_by(frame[frame["density"] == c], "scaled")
        assert within_ratio(medians[300], medians[600])

    rates = frame.groupby("density")["certified_p2"].mean().reindex(densities)
    assert rates.is_monotonic_increasing


def max_link_constant(action, p):
    reps = action.representatives()
    return max(poincare_estimate(link_of(action.complex, int(v)), p, restarts=8, seed=0).lower_estimate
               for v in reps)


@pytest.mark.parametrize("complex_factory", [single_triangle, octahedron])
@pytest.mark.parametrize("p", [2.0, 4.0])
def test_fixed_point_contraction(complex_factory, p):
    action = trivial_action(complex_factory())
    phi0 = make_rng(9).normal(size=action.complex.n)
    run = iterate_fixed_point(action, phi0, p, max_iter=200)

    assert run.converged
    assert run.energy_trace[-1] < 1e-8
    assert max(run.contraction_ratios) <= max_link_constant(action, p) + LINK_SLACK
    assert np.ptp(run.phi_final) <= 1e-7
