import math

import numpy as np
import pytest

from logsphere import (
    Configuration,
    OptimizeSettings,
    check_stationary,
    log_product,
    minimize,
    named,
    ortho_simplexes,
    regular_simplex,
    riesz_energy,
    rotation_distance,
    tangential_gradient,
    verify_conjecture,
    verify_monotonicity,
)
from logsphere.exceptions import AllSeedsFailed, CoincidentPoints
from logsphere.formulas import conjecture_product, simplex_product
from logsphere.geometry import log_energy
from logsphere.optimizer import basin_histogram, descend, random_start
import oracles


def test_settings_validation():
    with pytest.raises(ValueError):
        OptimizeSettings(max_iters=0)
    with pytest.raises(ValueError):
        OptimizeSettings(grad_tol=0)
    with pytest.raises(ValueError):
        OptimizeSettings(seeds=0)
    with pytest.raises(ValueError):
        OptimizeSettings(step_rule="newton")
    with pytest.raises(ValueError):
        OptimizeSettings(s_exponent=0.0)


@pytest.mark.parametrize("name", ["tetrahedron", "omega_3_3"])
def test_gradient_vanishes_on_stationary(name):
    assert np.abs(tangential_gradient(named(name))).max() < 1e-12


def test_gradient_coincident():
    with pytest.raises(CoincidentPoints):
        tangential_gradient(Configuration([[1.0, 0], [1.0, 0], [-1.0, 0]]))


@pytest.mark.parametrize("s", [None, 1.0, 2.0, -1.0, 0.5])
def test_gradient_matches_finite_differences(s, rng):
    x = Configuration(rng.standard_normal((6, 4)), renormalize=True)
    pl = x.points.tolist()
    if s is None:
        energy = oracles.brute_log_energy
    else:
        energy = lambda q: math.copysign(1.0, s) * oracles.brute_riesz(q, s)
    fd = np.array(oracles.project_tangent(pl, oracles.central_difference_gradient(energy, pl, 1e-6)))
    g = tangential_gradient(x, s=s)
    if s is not None and s < 0:
        g = -g
    assert np.abs(fd - g).max() < 1e-5


def test_gradient_is_tangent(rng):
    x = Configuration(rng.standard_normal((8, 5)), renormalize=True)
    g = tangential_gradient(x)
    assert np.abs(np.sum(g * x.points, axis=1)).max() < 1e-13


def test_descend_trace_nonincreasing(rng):
    x0 = random_start(7, 4, rng)
    r = descend(x0, OptimizeSettings())
    assert r.converged
    assert np.all(np.diff(r.trace) <= 0)
    assert r.trace[-1] == pytest.approx(r.energy, abs=1e-9)


def test_fixed_step_rule_runs(rng):
    r = descend(random_start(4, 3, rng), OptimizeSettings(step_rule="fixed", initial_step=0.05, max_iters=5000))
    assert r.converged
    assert r.log_product == pytest.approx(simplex_product(4), abs=1e-8)


def test_determinism():
    s = OptimizeSettings(seeds=4, rng_seed=7)
    a, b = minimize(6, 4, s), minimize(6, 4, s)
    assert [r.trace for r in a.per_seed] == [r.trace for r in b.per_seed]
    assert np.array_equal(a.best.points, b.best.points)


def test_seed_independent_of_count():
    a = minimize(5, 3, OptimizeSettings(seeds=3, rng_seed=2))
    b = minimize(5, 3, OptimizeSettings(seeds=6, rng_seed=2))
    first_a = {r.seed: r.trace for r in a.per_seed}
    first_b = {r.seed: r.trace for r in b.per_seed}
    assert all(first_a[k] == first_b[k] for k in range(3))


def test_result_invariants():
    res = minimize(6, 4, OptimizeSettings(seeds=8, rng_seed=1))
    assert res.best_log_product == log_product(res.best)
    conv = [r for r in res.per_seed if r.converged]
    assert res.best_log_product >= max(r.log_product for r in conv) - 1e-12
    assert [r.energy for r in res.per_seed] == sorted(r.energy for r in res.per_seed)
    for r in conv:
        assert check_stationary(Configuration(r.points, renormalize=True), 10 * res.settings.grad_tol).is_stationary
    assert sum(b["count"] for b in res.basin_histogram) == res.n_converged
    d = res.to_dict()
    assert d["n_converged"] == res.n_converged and "trace" not in d["per_seed"][0]


def test_all_seeds_failed():
    with pytest.raises(AllSeedsFailed):
        minimize(6, 4, OptimizeSettings(seeds=2, max_iters=1))


def test_basin_histogram_gap():
    b = basin_histogram([(0, 1.0), (1, 1.0 + 5e-7), (2, 2.0)])
    assert [x["count"] for x in b] == [2, 1]
    assert b[0]["seeds"] == [0, 1]


KNOWN = {(4, 2): math.log(256), (3, 2): math.log(27), (4, 3): simplex_product(4), (5, 3): math.log(6912),
         (6, 4): math.log(373248), (7, 5): math.log(2**30 / 27)}


@pytest.mark.parametrize("n, d", list(KNOWN))
def test_known_optima(n, d):
    res = minimize(n, d, OptimizeSettings(seeds=20, rng_seed=1))
    assert res.best_log_product == pytest.approx(KNOWN[(n, d)], abs=1e-7)


@pytest.mark.parametrize("n, d, sizes", [(6, 3, [2, 2, 2]), (8, 4, [2, 2, 2, 2])])
def test_cross_polytope_lower_bounds(n, d, sizes):
    res = minimize(n, d, OptimizeSettings(seeds=20, rng_seed=1))
    assert res.best_log_product >= log_product(ortho_simplexes(sizes, d)) - 1e-7


def test_riesz_minimization_tetrahedron():
    res = minimize(4, 3, OptimizeSettings(seeds=5, rng_seed=3, s_exponent=1.0))
    assert riesz_energy(res.best, 1.0) == pytest.approx(riesz_energy(named("tetrahedron"), 1.0), rel=1e-10)


def test_riesz_negative_s_maximizes_distance_sum():
    res = minimize(2, 3, OptimizeSettings(seeds=3, rng_seed=0, s_exponent=-1.0))
    assert riesz_energy(res.best, -1.0) == pytest.approx(4.0, rel=1e-10)


def test_verify_monotonicity_small():
    rep = verify_monotonicity(4, 5, OptimizeSettings(seeds=10, rng_seed=1), margin=1e-4)
    assert rep.strictly_increasing and rep.plateau_holds
    assert rep.plateau_value == pytest.approx(6 * math.log(8 / 3))
    assert rep.to_dict()["dims"] == [2, 3, 4, 5]


@pytest.mark.parametrize("d", [3, 4])
def test_verify_conjecture_supported(d):
    rep = verify_conjecture(d, OptimizeSettings(seeds=20, rng_seed=1))
    assert rep.verdict == "SUPPORTED"
    assert rep.conjectured_log_product == conjecture_product(d)
    assert rep.to_dict()["difference"] == pytest.approx(0, abs=1e-7)


def test_gradient_relative_accuracy_near_collision():
    # Close pairs make the gradient huge; agreement is then checked in relative terms.
    t = np.array([0.0, 0.003, 1.0, 2.5, 4.0])
    x = Configuration(np.c_[np.cos(t), np.sin(t)])
    pl = x.points.tolist()
    for s in (None, 1.0, 2.0):
        energy = oracles.brute_log_energy if s is None else (lambda q, s=s: oracles.brute_riesz(q, s))
        fd = np.array(oracles.project_tangent(pl, oracles.central_difference_gradient(energy, pl, 1e-8)))
        g = tangential_gradient(x, s=s)
        assert np.abs(fd - g).max() <= 1e-6 * np.abs(g).max()
