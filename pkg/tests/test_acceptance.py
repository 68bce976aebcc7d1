"""Acceptance criteria, one test each.

Every test records its measured quantity with ``record_property``; the
terminal summary hook in ``conftest.py`` prints one PASS/FAIL line per
criterion.
"""

import itertools

import numpy as np
import pytest

from cubkit import jacobi
from cubkit.bases import basis_matrix, basis_Q, dim_poly
from cubkit.cubature import minimal_rule, n_min, near_minimal_rule, verify_rule
from cubkit.geometry import check_node_region, region_curves
from cubkit.interpolation import (
    fit_lebesgue,
    fundamental_matrix,
    hat_h,
    hat_h_radau_sum,
    interpolation_operator,
    kernel_K_star,
    lagrange_interpolate,
    lebesgue_constant,
    sample,
)
from cubkit.oracle import WeightSpec

from _oracles import jacobi_moment

pytestmark = pytest.mark.acceptance

GRID4 = list(itertools.product([-0.5, 0.0, 0.5, 1.5], repeat=2))


def test_criterion_01_near_minimal_exactness(record_property):
    worst, bad_count = 0.0, []
    for (a, b), m in itertools.product(GRID4, range(9)):
        rule = near_minimal_rule(WeightSpec(a, b), m)
        if len(rule) != 2 * (m + 1) ** 2:
            bad_count.append((a, b, m))
        report = verify_rule(rule, 4 * m + 1)
        worst = max(worst, report.max_residual(4 * m + 1))
    record_property("measure", f"max residual {worst:.2e} (tol 1e-10), bad counts {len(bad_count)}")
    assert not bad_count
    assert worst <= 1e-10


def test_criterion_02_minimal_rules(record_property):
    worst_res, short = 0.0, []
    for (a, b), m in itertools.product([(-0.5, -0.5), (0.5, 0.5), (0.5, -0.5)], range(1, 7)):
        rule = minimal_rule(WeightSpec(a, b), m)
        assert len(rule) == n_min(2 * m + 1) == 2 * (m + 1) ** 2 - 1
        worst_res = max(worst_res, rule.diagnostics["residual"])
        if verify_rule(rule, 4 * m + 1).max_exact_degree < 4 * m + 1:
            short.append((a, b, m))
    record_property("measure", f"max solve residual {worst_res:.2e} (tol 1e-9), degree shortfalls {len(short)}")
    assert worst_res <= 1e-9
    assert not short


def test_criterion_03_gauss_radau(record_property):
    rng = np.random.default_rng(2024)
    worst_mom, worst_mu = 0.0, 0.0
    for _ in range(40):
        a, b = rng.uniform(-0.95, 3.0, 2)
        n = int(rng.integers(0, 17))
        r = jacobi.gauss_radau_rule(n, (a, b))
        for d in range(2 * n + 1):
            ref = float(jacobi_moment(d, a, b))
            worst_mom = max(worst_mom, abs(np.dot(r.weights, r.nodes ** d) - ref))
        if abs(a + b + 1) > 1e-6:
            closed = jacobi.radau_endpoint_weight(n, (a, b))
            worst_mu = max(worst_mu, abs(r.weights[-1] - closed))
    record_property("measure", f"max moment error {worst_mom:.2e} (tol 1e-12), "
                               f"endpoint weight error {worst_mu:.2e} (tol 1e-10)")
    assert worst_mom <= 1e-12
    assert worst_mu <= 1e-10


def test_criterion_04_hat_h(record_property):
    vals = [-0.9, -0.5, 0.0, 1.5, 3.0]
    worst, spread = 0.0, 0.0
    for a, b in itertools.product(vals, repeat=2):
        for m in range(13):
            for l in range(m + 1):
                c = hat_h(l, m, (a, b))
                s = hat_h_radau_sum(l, m, (a, b))
                worst = max(worst, abs(c - s) / max(1.0, abs(s)))
            if m >= 2:
                low = [hat_h_radau_sum(l, m, (a, b)) for l in range(m)]
                spread = max(spread, np.ptp(low) / low[0])
    record_property("measure", f"max closed-vs-sum {worst:.2e} (tol 1e-12), "
                               f"relative spread for l<m {spread:.2e}")
    assert worst <= 1e-12
    assert spread <= 1e-12


def test_criterion_05_kernel_reciprocity(record_property):
    worst = 0.0
    for (a, b), m in itertools.product(GRID4, range(7)):
        op = interpolation_operator(WeightSpec(a, b), m)
        d = np.diag(kernel_K_star(op, op.nodes, op.nodes))
        worst = max(worst, np.max(np.abs(1 / d - op.weights)))
    record_property("measure", f"max |1/K*(node,node) - weight| {worst:.2e} (tol 1e-9)")
    assert worst <= 1e-9


def test_criterion_06_interpolation(record_property):
    g = np.linspace(-1, 1, 50)
    X, Y = np.meshgrid(g, g)
    worst_k, worst_r = 0.0, 0.0
    rng = np.random.default_rng(6)
    for (a, b), m in itertools.product([(-0.5, -0.5), (0.5, 0.5), (1.5, 0.0), (0.0, 1.5)], range(7)):
        spec = WeightSpec(a, b)
        op = interpolation_operator(spec, m)
        F = fundamental_matrix(op, op.rule.x, op.rule.y)
        worst_k = max(worst_k, np.max(np.abs(F - np.eye(len(op.rule)))))
        # random polynomial of degree 2m with unit coefficient vector in the orthonormal basis
        c = rng.standard_normal(dim_poly(2 * m))
        c /= np.linalg.norm(c)

        def p(x, y):
            return basis_matrix(spec, 2 * m, x, y) @ c

        got = lagrange_interpolate(op, sample(op, p), X, Y)
        worst_r = max(worst_r, np.max(np.abs(got.ravel() - p(X.ravel(), Y.ravel()))))
    record_property("measure", f"Kronecker {worst_k:.2e}, reproduction {worst_r:.2e} (tol 1e-9)")
    assert worst_k <= 1e-9
    assert worst_r <= 1e-9


def test_criterion_07_vanishing_ideal(record_property):
    worst = 0.0
    for (a, b), m in itertools.product(GRID4, range(9)):
        spec = WeightSpec(a, b)
        rule = near_minimal_rule(spec, m)
        for k in range(m + 1):
            worst = max(worst, np.max(np.abs(basis_Q(spec, 2, k, 2 * m + 1, rule.x, rule.y))))
    record_property("measure", f"max |2Q(node)| {worst:.2e} (tol 1e-10)")
    assert worst <= 1e-10


def test_criterion_08_lebesgue_growth(record_property):
    ms = [2, 4, 8, 16]
    lam_p = [lebesgue_constant(interpolation_operator(WeightSpec(0.5, 0.5), m), 256) for m in ms]
    lam_c = [lebesgue_constant(interpolation_operator(WeightSpec(-0.5, -0.5), m), 256) for m in ms]
    expo = fit_lebesgue(ms, lam_p)["power_exponent"]
    ratio = lam_c[-1] / lam_c[0]
    record_property("measure", f"(1/2,1/2) exponent {expo:.3f} in [1.6, 2.4]; "
                               f"(-1/2,-1/2) ratio {ratio:.3f} <= 4")
    assert 1.6 <= expo <= 2.4
    assert ratio <= 4


def test_criterion_09_jacobi_identities(record_property):
    P = jacobi.jacobi_eval
    rng = np.random.default_rng(9)
    worst, worst_abs, sep = 0.0, 0.0, np.inf
    for _ in range(100):
        t = rng.uniform(-1, 1)
        a, b = rng.uniform(-0.9, 3.0, 2)
        m = int(rng.integers(1, 21))
        g = a + b + 2
        raw = [
            (1 - t) * P(m, (a + 1, b), t) + (1 + t) * P(m, (a, b + 1), t) - 2 * P(m, (a, b), t),
            P(m, (a + 1, b), t) - P(m, (a, b + 1), t) - P(m - 1, (a + 1, b + 1), t),
            P(m, (a + 1, b + 1), t) + (m + a + 1) / (m + g) * P(m - 1, (a + 1, b + 1), t)
            - (2 * m + g) / (m + g) * P(m, (a + 1, b), t),
            P(m, (a + 1, b + 1), t) - (m + b + 1) / (m + g) * P(m - 1, (a + 1, b + 1), t)
            - (2 * m + g) / (m + g) * P(m, (a, b + 1), t),
            (1 + t) * P(m, (a, b + 1), t) - 2 * (m + 1) / (2 * m + g) * P(m + 1, (a, b), t)
            - 2 * (m + b + 1) / (2 * m + g) * P(m, (a, b), t),
            (1 - t) * P(m, (a + 1, b), t) + 2 * (m + 1) / (2 * m + g) * P(m + 1, (a, b), t)
            - 2 * (m + a + 1) / (2 * m + g) * P(m, (a, b), t),
        ]
        res = [abs(float(r)) for r in raw]
        worst_abs = max(worst_abs, max(res))
        # residual measured against the size of the terms: values reach 1e4 at m = 20,
        # where one ulp already exceeds 1e-12
        worst = max(worst, max(r / max(1.0, abs(P(m, (a + 1, b + 1), t)), abs(P(m, (a + 1, b), t)),
                                       abs(P(m + 1, (a, b), t)), abs(P(m, (a, b), t)))
                                for r in res))
        z1 = jacobi.gauss_rule(m, (a, b + 1)).nodes
        z2 = jacobi.gauss_rule(m, (a + 1, b)).nodes
        sep = min(sep, np.min(np.abs(z1[:, None] - z2[None, :])))
    record_property("measure", f"max scaled residual {worst:.2e} (tol 1e-12), absolute {worst_abs:.2e}, "
                               f"min zero separation {sep:.2e} (>= 1e-8)")
    assert worst <= 1e-12
    assert sep >= 1e-8


def test_criterion_10_region(record_property):
    fails = []
    for (a, b), m in itertools.product([(-0.5, -0.5), (-0.5, 0.5), (0.5, -0.5), (0.5, 0.5)],
                                       [1, 2, 4, 8, 16]):
        rep = check_node_region(near_minimal_rule(WeightSpec(a, b), m), region_curves(m, (a, b)))
        if not rep.inside:
            fails.append((a, b, m, rep.failures))
    record_property("measure", f"{len(fails)} of 20 configurations with nodes outside")
    assert not fails


# measured once, then pinned
PLUS_HALF_DEGREE = {m: 4 * m - 3 for m in range(1, 7)}


def test_criterion_11_plus_half_rule(record_property):
    seen = {}
    for (a, b), m in itertools.product(GRID4, range(1, 7)):
        rule = near_minimal_rule(WeightSpec(a, b, 0.5), m)
        seen.setdefault(m, set()).add(rule.degree)
    record_property("measure", "max_exact_degree by m: "
                    + ", ".join(f"{m}:{sorted(v)}" for m, v in sorted(seen.items())))
    assert {m: v for m, v in seen.items()} == {m: {d} for m, d in PLUS_HALF_DEGREE.items()}
