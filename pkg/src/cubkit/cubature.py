"""Near-minimal and minimal cubature rules of degree 4m+1 on the square.

Both families are built from the angles ``theta_0 = 0 < theta_1 < ... < theta_m``
where ``cos(theta_k)`` (k >= 1) are the zeros of ``P_m^{(a+1,b)}``, through

    s_{j,k} = cos((theta_j - theta_k) / 2),  t_{j,k} = cos((theta_j + theta_k) / 2)

and the four images ``(s,t), (t,s), (-s,-t), (-t,-s)`` (orbit index 1..4).
"""

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.optimize import brentq

from cubkit import jacobi
from cubkit.bases import basis_matrix, basis_labels
from cubkit.errors import ConstructionError, InputError, NumericalError
from cubkit.jacobi import JacobiParams, as_params
from cubkit.oracle import WeightSpec, moment_table

MERGE_TOL = 1e-12
SOLVE_TOL = 1e-9


def n_min(n):
    """Lower bound on the node count of a degree-n rule for a centrally symmetric weight."""
    if n < 1:
        raise InputError("n_min needs n >= 1")
    return n * (n + 1) // 2 + n // 2


@dataclass(frozen=True)
class ThetaGrid:
    m: int
    params: JacobiParams
    thetas: np.ndarray

    @property
    def nodes(self):
        return np.cos(self.thetas)


def theta_grid(m, p):
    """``theta_0 = 0`` and the arccos of the zeros of ``P_m^{(a+1,b)}``, ascending."""
    if m < 0:
        raise InputError("m must be non-negative")
    p = as_params(p)
    if m == 0:
        th = np.zeros(1)
    else:
        z = jacobi.gauss_rule(m, p.shift(1, 0)).nodes
        th = np.concatenate(([0.0], np.arccos(z[::-1])))
    th.setflags(write=False)
    return ThetaGrid(m, p, th)


@dataclass(frozen=True)
class CubatureNode:
    x: float
    y: float
    weight: float
    orbit: tuple


@dataclass(frozen=True)
class CubatureRule2D:
    """Nodes are stored column-wise; ``orbits[i] = (j, k, image)``.

    Diagonal nodes of the minimal rule carry ``j = -1`` and ``k`` equal to
    their index among the sorted diagonal zeros.
    """

    spec: WeightSpec
    m: int
    kind: Literal["near_minimal", "minimal", "near_minimal_reflected"]
    x: np.ndarray
    y: np.ndarray
    weights: np.ndarray
    orbits: np.ndarray
    degree: int
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.weights)

    @property
    def points(self):
        return np.column_stack([self.x, self.y])

    @property
    def nodes(self):
        return [CubatureNode(float(a), float(b), float(w), tuple(int(v) for v in o))
                for a, b, w, o in zip(self.x, self.y, self.weights, self.orbits)]

    def integrate(self, f):
        return float(np.sum(self.weights * np.asarray(f(self.x, self.y), dtype=float)))


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def _orbit_points(s, t):
    return ((s, t), (t, s), (-s, -t), (-t, -s))


def _assemble(pairs):
    """Merge coincident points; ``pairs`` yields ``(x, y, weight, (j, k, i))``."""
    xs, ys, ws, orbs = [], [], [], []
    index = {}
    for x, y, w, orb in pairs:
        key = (round(x / MERGE_TOL), round(y / MERGE_TOL))
        if key in index:
            ws[index[key]] += w
            continue
        index[key] = len(xs)
        xs.append(x)
        ys.append(y)
        ws.append(w)
        orbs.append(orb)
    x, y, w = np.array(xs), np.array(ys), np.array(ws)
    orbits = np.array(orbs, dtype=int).reshape(-1, 3)
    return x, y, w, orbits


def _near_minimal_pairs(grid, mu, sigma):
    th = grid.thetas
    xk = grid.nodes
    xk[0] = 1.0
    for k in range(grid.m + 1):
        for j in range(k + 1):
            w = 0.5 * mu[j] * mu[k]
            if j == k:
                w *= 0.5
            if sigma > 0:
                w *= (xk[j] - xk[k]) ** 2
                if j == k:
                    continue
            s = np.cos((th[j] - th[k]) / 2)
            t = np.cos((th[j] + th[k]) / 2)
            for i, (a, b) in enumerate(_orbit_points(s, t), start=1):
                yield a, b, w, (j, k, i)


def near_minimal_rule(spec, m):
    """Rule with ``2(m+1)^2`` nodes exact through degree ``4m+1`` (sigma = -1/2).

    For sigma = +1/2 the same nodes are reweighted by ``(x_j - x_k)^2``,
    renormalized to unit mass, and the ``j = k`` nodes drop out. Its declared
    degree is the one measured by :func:`verify_rule`.
    """
    if m < 0:
        raise InputError("m must be non-negative")
    if spec.sigma > 0 and m < 1:
        raise InputError("the sigma = +1/2 rule needs m >= 1")
    p = spec.jacobi
    grid = theta_grid(m, p)
    radau = jacobi.gauss_radau_rule(m, p)
    # radau nodes ascend with +1 last; theta order is the reverse
    mu = np.asarray(radau.weights)[::-1]
    x, y, w, orbits = _assemble(_near_minimal_pairs(grid, mu, spec.sigma))
    diagnostics = {}
    if spec.sigma > 0:
        total = float(np.sum(w))
        diagnostics["raw_weight_total"] = total
        w = w / total
    _freeze(x, y, w, orbits)
    degree = 4 * m + 1
    rule = CubatureRule2D(spec, m, "near_minimal", x, y, w, orbits, degree, diagnostics)
    if spec.sigma > 0:
        report = verify_rule(rule, 4 * m + 2)
        rule = CubatureRule2D(spec, m, "near_minimal", x, y, w, orbits,
                              report.max_exact_degree, diagnostics)
    return rule


# --------------------------------------------------------------------------
# minimal rule

def _diag_poly(m, p):
    p1 = p.shift(1, 0)
    p2 = p.shift(0, 1)
    c1 = float(jacobi.orthonormal_eval(m, p2, 1.0))
    c2 = float(jacobi.orthonormal_eval(m, p1, 1.0))

    def g(t):
        return c1 * jacobi.orthonormal_eval(m, p1, t) + c2 * jacobi.orthonormal_eval(m, p2, t)
    return g


def diagonal_zeros(m, p):
    """The ``2m+1`` zeros of ``q_m(x, x)`` in ``(-1, 1)``, sorted; 0 is one of them.

    ``q_m(x, x) / x`` is a degree-m polynomial ``g`` in ``t = 2x^2 - 1``; its
    zeros interlace with those of ``P_{m-1}^{(a+1,b+1)}``, which gives the
    brackets.
    """
    if m < 1:
        raise InputError("diagonal_zeros needs m >= 1")
    p = as_params(p)
    g = _diag_poly(m, p)
    if m > 1:
        inner = np.asarray(jacobi.gauss_rule(m - 1, p.shift(1, 1)).nodes)
    else:
        inner = np.array([])
    edges = np.concatenate(([-1.0], inner, [1.0]))
    roots = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        glo, ghi = float(g(lo)), float(g(hi))
        if not glo * ghi < 0:
            raise NumericalError(
                f"diagonal zero not bracketed on [{lo}, {hi}] for m={m}, {p}")
        roots.append(brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200))
    t = np.array(roots)
    xi = np.sqrt((t + 1) / 2)
    if np.any(xi <= 0) or np.any(xi >= 1):
        raise NumericalError("diagonal zero fell on the boundary")
    out = np.sort(np.concatenate((-xi, [0.0], xi)))
    if np.min(np.diff(out)) <= 1e-10:
        raise NumericalError("diagonal zeros are not distinct")
    return out


def _invariant_columns(spec, m, x, y):
    """Columns of the orthonormal ``1Q_{k,2n}``, ``2n <= 4m``, at the points."""
    labels = basis_labels(4 * m)
    keep = [i for i, (d, fam, _) in enumerate(labels) if d % 2 == 0 and fam == 1]
    B = basis_matrix(spec, 4 * m, x, y)
    return B[:, keep]


def minimal_rule(spec, m):
    """Rule with ``N_min(2m+1) = 2(m+1)^2 - 1`` nodes, exact through degree ``4m+1``.

    Nodes: the ``2m(m+1)`` orbit points with ``1 <= j <= k <= m`` and the
    ``2m+1`` diagonal points ``(xi, xi)``. Weights solve the moment equations
    for the invariant orthonormal polynomials by least squares, one unknown per
    symmetry orbit. A residual above ``SOLVE_TOL`` raises ConstructionError.
    """
    if spec.sigma > 0:
        raise InputError("minimal rules are built only for sigma = -1/2")
    if m < 1:
        raise InputError("minimal_rule needs m >= 1")
    p = spec.jacobi
    th = theta_grid(m, p).thetas
    xi = diagonal_zeros(m, p)

    orbit_pts = []   # (representative x, y, multiplicity)
    orbit_ids = []
    for k in range(1, m + 1):
        for j in range(1, k + 1):
            s = np.cos((th[j] - th[k]) / 2)
            t = np.cos((th[j] + th[k]) / 2)
            orbit_pts.append((s, t, 4.0))
            orbit_ids.append(("jk", j, k, s, t))
    half = xi[xi >= 0]
    for i, v in enumerate(half):
        orbit_pts.append((v, v, 1.0 if v == 0 else 2.0))
        orbit_ids.append(("diag", i, v))

    rx = np.array([o[0] for o in orbit_pts])
    ry = np.array([o[1] for o in orbit_pts])
    mult = np.array([o[2] for o in orbit_pts])
    A = (_invariant_columns(spec, m, rx, ry) * mult[:, None]).T
    rhs = np.zeros(A.shape[0])
    rhs[0] = 1.0

    scale = np.linalg.norm(A, axis=0)
    if np.any(scale == 0):
        raise ConstructionError("zero column in moment system", {"m": m})
    As = A / scale
    sol, _, rank, sv = np.linalg.lstsq(As, rhs, rcond=None)
    w_orbit = sol / scale
    residual = float(np.max(np.abs(A @ w_orbit - rhs)))
    diagnostics = {
        "residual": residual,
        "rank": int(rank),
        "unknowns": A.shape[1],
        "equations": A.shape[0],
        "singular_values": sv.tolist(),
        "min_weight": float(np.min(w_orbit)),
    }
    if rank < A.shape[1] or not residual <= SOLVE_TOL:
        raise ConstructionError(
            f"minimal rule moment solve failed for m={m}, {spec}: rank {rank}/{A.shape[1]}, "
            f"residual {residual:.3e}", diagnostics)

    pts = []
    n_diag = 0
    for w, ident in zip(w_orbit, orbit_ids):
        if ident[0] == "jk":
            _, j, k, s, t = ident
            for i, (a, b) in enumerate(_orbit_points(s, t), start=1):
                pts.append((a, b, w, (j, k, i)))
        else:
            v = ident[2]
            if v == 0:
                pts.append((0.0, 0.0, w, (-1, m, 1)))
            else:
                pts.append((v, v, w, (-1, m + 1 + n_diag, 1)))
                pts.append((-v, -v, w, (-1, m - 1 - n_diag, 3)))
                n_diag += 1
    x, y, w, orbits = _assemble(pts)
    _freeze(x, y, w, orbits)
    return CubatureRule2D(spec, m, "minimal", x, y, w, orbits, 4 * m + 1, diagnostics)


def reflected_rule(rule):
    """Image of a rule under ``(x, y) -> (x, -y)``: a rule for the weight with a, b swapped."""
    spec = rule.spec.swapped()
    y = -np.asarray(rule.y)
    x = np.array(rule.x)
    w = np.array(rule.weights)
    orbits = np.array(rule.orbits)
    _freeze(x, y, w, orbits)
    kind = rule.kind if rule.kind.endswith("reflected") else rule.kind + "_reflected"
    return CubatureRule2D(spec, rule.m, kind, x, y, w, orbits, rule.degree, dict(rule.diagnostics))


# --------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class VerificationReport:
    rule_id: str
    tested_degree: int
    residuals: dict
    moments: dict
    max_exact_degree: int
    oracle_order: int

    def max_residual(self, degree=None):
        d = self.tested_degree if degree is None else degree
        vals = [r for (a, b), r in self.residuals.items() if a + b <= d]
        return max(vals) if vals else 0.0


def rule_id(rule):
    s = rule.spec
    return f"{rule.kind}(a={s.alpha:g},b={s.beta:g},sigma={s.sigma:g},m={rule.m})"


def rule_moments(rule, degree):
    """``sum_i w_i x_i^a y_i^b`` for ``a + b <= degree``."""
    xp = np.vander(rule.x, degree + 1, increasing=True)
    yp = np.vander(rule.y, degree + 1, increasing=True)
    wx = xp * rule.weights[:, None]
    M = wx.T @ yp
    return {(a, b): float(M[a, b]) for a in range(degree + 1) for b in range(degree + 1 - a)}


def verify_rule(rule, degree, order=None):
    """Compare the rule against reference moments of every monomial up to ``degree``.

    A monomial passes when its residual is at most ``1e-10 (1 + |moment|)``.
    """
    if degree < 0:
        raise InputError("degree must be non-negative")
    from cubkit.oracle import default_order
    order = default_order() if order is None else int(order)
    table = moment_table(rule.spec, degree, order)
    got = rule_moments(rule, degree)
    residuals = {}
    ok_through = -1
    failed = False
    for d in range(degree + 1):
        for a in range(d + 1):
            key = (a, d - a)
            r = abs(got[key] - table[key])
            residuals[key] = r
            if r > 1e-10 * (1 + abs(table[key])):
                failed = True
        if not failed:
            ok_through = d
    return VerificationReport(rule_id(rule), degree, residuals, dict(table.values),
                              ok_through, order)
