import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.optimize import bisect
from scipy.special import eval_jacobi

from cubkit import cubature
from cubkit.bases import basis_Q
from cubkit.cubature import (
    diagonal_zeros,
    minimal_rule,
    n_min,
    near_minimal_rule,
    reflected_rule,
    theta_grid,
    verify_rule,
)
from cubkit.errors import ConstructionError, InputError
from cubkit.jacobi import weight_moments
from cubkit.oracle import WeightSpec


def _same_set(P, Q, tol=1e-12):
    P = np.asarray(P)
    Q = np.asarray(Q)
    if P.shape != Q.shape:
        return False
    used = np.zeros(len(Q), dtype=bool)
    for p in P:
        d = np.max(np.abs(Q - p), axis=1)
        d[used] = np.inf
        i = int(np.argmin(d))
        if d[i] > tol:
            return False
        used[i] = True
    return True


# counting ----------------------------------------------------------------------

def test_n_min_values():
    assert n_min(1) == 1
    assert n_min(3) == 7
    for m in range(11):
        assert n_min(2 * m + 1) == 2 * (m + 1) ** 2 - 1
    with pytest.raises(InputError):
        n_min(0)


@pytest.mark.parametrize("m", range(0, 17))
def test_near_minimal_count(m):
    rule = near_minimal_rule(WeightSpec(0.5, -0.5), m)
    assert len(rule) == 2 * (m + 1) ** 2
    if m >= 1:
        assert len(rule) == n_min(2 * m + 1) + 1
    assert rule.degree == 4 * m + 1


# angles -------------------------------------------------------------------------

def test_theta_grid_trivial():
    assert_allclose(theta_grid(0, (0.3, 0.2)).thetas, [0.0])


def test_theta_grid_chebyshev():
    assert_allclose(theta_grid(1, (-0.5, -0.5)).thetas, [0, 2 * np.pi / 3], rtol=1e-14)
    for m in range(1, 12):
        th = theta_grid(m, (-0.5, -0.5)).thetas
        assert_allclose(th, 2 * np.arange(m + 1) * np.pi / (2 * m + 1), atol=1e-12)


def test_theta_grid_monotone():
    th = theta_grid(9, (1.5, 0.0)).thetas
    assert th[0] == 0.0 and np.all(np.diff(th) > 0) and th[-1] < np.pi


# near-minimal rule ----------------------------------------------------------------

def test_m0_rule():
    rule = near_minimal_rule(WeightSpec(0.7, 0.1), 0)
    assert _same_set(rule.points, [[1, 1], [-1, -1]])
    assert_allclose(rule.weights, [0.5, 0.5])
    report = verify_rule(rule, 1)
    assert report.max_residual() <= 1e-13
    assert report.max_exact_degree >= 1


def test_m1_chebyshev_nodes():
    rule = near_minimal_rule(WeightSpec(-0.5, -0.5), 1)
    ref = [[1, 1], [-1, -1], [0.5, 0.5], [-0.5, -0.5],
           [1, -0.5], [-0.5, 1], [-1, 0.5], [0.5, -1]]
    assert _same_set(rule.points, ref)


def test_chebyshev_rule_matches_classical_nodes():
    # classical degree-9 rule: (cos(i pi/5), cos(l pi/5)), 0 <= i, l <= 5, i - l even
    m = 2
    n = 2 * m + 1
    ref = [[np.cos(i * np.pi / n), np.cos(l * np.pi / n)]
           for i in range(n + 1) for l in range(n + 1) if (i - l) % 2 == 0]
    rule = near_minimal_rule(WeightSpec(-0.5, -0.5), m)
    assert _same_set(rule.points, ref)


@pytest.mark.parametrize("spec", [WeightSpec(0.5, 0.5), WeightSpec(0, 1.5), WeightSpec(-0.5, 0.5)], ids=str)
@pytest.mark.parametrize("m", [1, 2, 5])
def test_near_minimal_invariants(spec, m):
    rule = near_minimal_rule(spec, m)
    assert np.all(rule.weights > 0)
    assert abs(np.sum(rule.weights) - 1) <= 1e-12
    P = rule.points
    assert _same_set(P, -P)
    assert _same_set(P, P[:, ::-1])
    assert np.all(np.abs(P) <= 1)


def test_sharp_degree():
    report = verify_rule(near_minimal_rule(WeightSpec(0.5, 0.5), 3), 14)
    assert report.max_exact_degree == 13
    assert report.max_residual(13) <= 1e-10
    assert report.max_residual(14) > 1e-6


@pytest.mark.parametrize("m", [0, 2, 4])
def test_near_minimal_exact(m):
    for a, b in [(0.0, 0.0), (1.5, -0.5)]:
        report = verify_rule(near_minimal_rule(WeightSpec(a, b), m), 4 * m + 1)
        assert report.max_exact_degree == 4 * m + 1


def test_second_family_vanishes_on_nodes():
    spec = WeightSpec(0.5, 0.0)
    for m in range(5):
        rule = near_minimal_rule(spec, m)
        for k in range(m + 1):
            assert np.max(np.abs(basis_Q(spec, 2, k, 2 * m + 1, rule.x, rule.y))) <= 1e-10


def test_orbit_bookkeeping():
    rule = near_minimal_rule(WeightSpec(0.0, 0.5), 3)
    for node in rule.nodes:
        j, k, i = node.orbit
        assert 0 <= j <= k <= 3 and 1 <= i <= 4
    # j = 0 orbits collapse to images 1 and 3
    assert {n.orbit[2] for n in rule.nodes if n.orbit[0] == 0} == {1, 3}


# sigma = +1/2 ---------------------------------------------------------------------

@pytest.mark.parametrize("a,b", [(-0.5, -0.5), (0.5, 0.5), (0.0, 1.5), (1.5, 0.0)])
def test_plus_half_rule(a, b):
    for m in range(1, 6):
        rule = near_minimal_rule(WeightSpec(a, b, 0.5), m)
        assert len(rule) == 2 * m * m
        assert rule.degree == 4 * m - 3          # measured, pinned
        assert np.all(rule.weights > 0)
        # unnormalized weights carry total mass 2 Var(w*_{a,b})
        assert_allclose(rule.diagnostics["raw_weight_total"],
                        2 * weight_moments((a, b))[1], rtol=1e-12)


def test_plus_half_needs_m1():
    with pytest.raises(InputError):
        near_minimal_rule(WeightSpec(0, 0, 0.5), 0)


# diagonal zeros / minimal rule ------------------------------------------------------

def _q_diag_scipy(m, a, b, x):
    t = 2 * x * x - 1
    return 2 * x * (eval_jacobi(m, a, b + 1, 1.0) * eval_jacobi(m, a + 1, b, t)
                    + eval_jacobi(m, a + 1, b, 1.0) * eval_jacobi(m, a, b + 1, t))


@pytest.mark.parametrize("a,b,m", [(0.0, 0.0, 3), (0.5, -0.5, 5), (1.5, 0.5, 7)])
def test_diagonal_zeros_against_scan(a, b, m):
    z = diagonal_zeros(m, (a, b))
    assert len(z) == 2 * m + 1
    assert np.any(z == 0.0)
    assert_allclose(z, -z[::-1], atol=1e-15)
    grid = np.linspace(-1 + 1e-9, 1 - 1e-9, 20001)
    vals = _q_diag_scipy(m, a, b, grid)
    f = lambda x: _q_diag_scipy(m, a, b, x)  # noqa: E731
    ref = [bisect(f, lo, hi, xtol=1e-15) for lo, hi, vl, vh
           in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]) if vl * vh < 0]
    # the grid holds 0 exactly, so the scan never brackets that zero
    ref = np.sort(np.append(ref, 0.0))
    assert_allclose(z, ref, atol=1e-12)
    scale = np.max(np.abs(vals))
    assert np.max(np.abs(_q_diag_scipy(m, a, b, z))) <= 1e-12 * scale


def test_diagonal_zeros_m_validation():
    with pytest.raises(InputError):
        diagonal_zeros(0, (0, 0))


@pytest.mark.parametrize("m", range(1, 7))
def test_minimal_counts_and_weights(m):
    rule = minimal_rule(WeightSpec(-0.5, -0.5), m)
    assert len(rule) == n_min(2 * m + 1)
    assert rule.diagnostics["residual"] <= 1e-9
    # positivity is observed, not guaranteed in general
    assert np.all(rule.weights > 0)
    assert abs(np.sum(rule.weights) - 1) <= 1e-12
    diag = np.abs(rule.x - rule.y) <= 1e-15
    assert np.sum(diag) == 2 * m + 1


def test_minimal_exact_small():
    rule = minimal_rule(WeightSpec(0.5, 0.0), 2)
    report = verify_rule(rule, 10)
    assert report.max_exact_degree == 9


def test_minimal_rejects_plus_half():
    with pytest.raises(InputError):
        minimal_rule(WeightSpec(0, 0, 0.5), 2)
    with pytest.raises(InputError):
        minimal_rule(WeightSpec(0, 0), 0)


def test_minimal_refuses_uncertified(monkeypatch):
    monkeypatch.setattr(cubature, "SOLVE_TOL", -1.0)
    with pytest.raises(ConstructionError) as exc:
        minimal_rule(WeightSpec(0.5, 0.5), 2)
    assert "residual" in exc.value.diagnostics
    assert exc.value.diagnostics["unknowns"] == 6


# reflection ----------------------------------------------------------------------------

@pytest.mark.parametrize("make", [near_minimal_rule, minimal_rule])
def test_reflected_rule(make):
    spec = WeightSpec(1.5, -0.5)
    m = 2
    rule = make(spec, m)
    refl = reflected_rule(rule)
    assert refl.spec == spec.swapped()
    assert verify_rule(refl, 4 * m + 1).max_exact_degree >= 4 * m + 1
    assert _same_set(reflected_rule(refl).points, rule.points)
    assert _same_set(np.column_stack([refl.x, -refl.y]), rule.points)
    if make is minimal_rule:
        on_anti = np.abs(refl.x + refl.y) <= 1e-15
        assert np.sum(on_anti) == 2 * m + 1
        # rebuilding with swapped parameters gives a different (also valid) node set
        assert not _same_set(make(spec.swapped(), m).points, refl.points)
