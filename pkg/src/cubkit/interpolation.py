"""Lagrange interpolation on the near-minimal nodes (sigma = -1/2).

The interpolant lives in ``Pi_{2m} + span{1Q_{k,2m+1} : 0 <= k <= m}`` and is
built from the modified kernel

    K*(X, Y) = K_{2m}(X, Y) + sum_k c_k 1Q_{k,2m+1}(X) 1Q_{k,2m+1}(Y),
    c_k = 1 / ([a^{(0,1)}]^2 hh_k hh_m),

with ``hh_k`` the Radau sums of :func:`hat_h`. The fundamental polynomial of a
node is ``lambda_node * K*(., node)`` and ``lambda_node = 1 / K*(node, node)``
is its cubature weight.
"""

from dataclasses import dataclass

import numpy as np

from cubkit import jacobi
from cubkit.bases import a_constant, basis_labels, basis_matrix, jacobi_variables
from cubkit.cubature import near_minimal_rule
from cubkit.errors import InputError
from cubkit.jacobi import as_params
from cubkit.oracle import WeightSpec

CHUNK = 4096


def hat_h(l, m, p):
    """``hh_l = sum_k mu_k (1 + x_k) p_l^{(a,b+1)}(x_k)^2`` over the m-point Radau rule.

    ``2(b+1)/(a+b+2)`` for ``l < m`` and
    ``2(b+1)(a+b+2m+2) / ((a+b+2)(b+m+1))`` for ``l = m``.
    """
    if not 0 <= l <= m:
        raise InputError(f"need 0 <= l <= m; got l={l}, m={m}")
    p = as_params(p)
    a, b = p.alpha, p.beta
    if l < m:
        return 2 * (b + 1) / (a + b + 2)
    return 2 * (b + 1) * (a + b + 2 * m + 2) / ((a + b + 2) * (b + m + 1))


def hat_h_radau_sum(l, m, p):
    """The defining Radau sum of :func:`hat_h`, evaluated directly."""
    if not 0 <= l <= m:
        raise InputError(f"need 0 <= l <= m; got l={l}, m={m}")
    p = as_params(p)
    rule = jacobi.gauss_radau_rule(m, p)
    x = np.asarray(rule.nodes)
    pl = jacobi.orthonormal_eval(l, p.shift(0, 1), x)
    return float(np.sum(rule.weights * (1 + x) * pl * pl))


@dataclass(frozen=True)
class InterpolationOperator:
    spec: WeightSpec
    m: int
    rule: object
    hat_h: np.ndarray
    b: np.ndarray
    a01: float
    coef: np.ndarray       # diagonal weights of the basis in K*
    node_matrix: np.ndarray  # coef * basis(nodes)^T * lambda, shape (dim, N)

    @property
    def n(self):
        return 2 * self.m + 1

    @property
    def nodes(self):
        return self.rule.points

    @property
    def weights(self):
        return self.rule.weights

    def basis(self, x, y):
        return basis_matrix(self.spec, 2 * self.m + 1, x, y)


def _kernel_coefficients(spec, m, hh, a01):
    labels = basis_labels(2 * m + 1)
    coef = np.zeros(len(labels))
    for i, (d, fam, k) in enumerate(labels):
        if d <= 2 * m:
            coef[i] = 1.0
        elif fam == 1:
            coef[i] = 1.0 / (a01 ** 2 * hh[k] * hh[m])
    return coef


def interpolation_operator(spec, m):
    """Precompute constants and the node-side factor of the fundamental polynomials."""
    if spec.sigma > 0:
        raise InputError("interpolation is built only for sigma = -1/2")
    if m < 0:
        raise InputError("m must be non-negative")
    p = spec.jacobi
    rule = near_minimal_rule(spec, m)
    hh = np.array([hat_h(l, m, p) for l in range(m + 1)])
    a01 = a_constant(spec, 0, 1)
    b = 1.0 / (2 * a01 ** 2 * hh * hh[m])
    coef = _kernel_coefficients(spec, m, hh, a01)
    Bn = basis_matrix(spec, 2 * m + 1, rule.x, rule.y)
    node_matrix = coef[:, None] * Bn.T * rule.weights[None, :]
    for arr in (hh, b, coef, node_matrix):
        arr.setflags(write=False)
    return InterpolationOperator(spec, m, rule, hh, b, a01, coef, node_matrix)


def _as_points(X):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(1, 2)
    if X.ndim != 2 or X.shape[1] != 2:
        raise InputError("points must have shape (N, 2)")
    return X


def kernel_K_star(op, X, Y):
    """``K*(X_i, Y_j)`` by summation over the orthonormal basis; shape ``(N, M)``."""
    X, Y = _as_points(X), _as_points(Y)
    BX = op.basis(X[:, 0], X[:, 1])
    BY = op.basis(Y[:, 0], Y[:, 1])
    return (BX * op.coef[None, :]) @ BY.T


def _sym_kernel(nmax, p, X, Y):
    """Reproducing kernel of ``span{P_{k,n}^{a,b,-1/2} : n <= nmax}`` via 1-D kernels."""
    if nmax < 0:
        return np.zeros((X.shape[0], Y.shape[0]))
    sx, tx = jacobi_variables(X[:, 0], X[:, 1])
    sy, ty = jacobi_variables(Y[:, 0], Y[:, 1])
    Psx = jacobi.orthonormal_table(nmax, p, sx)
    Ptx = jacobi.orthonormal_table(nmax, p, tx)
    Psy = jacobi.orthonormal_table(nmax, p, sy)
    Pty = jacobi.orthonormal_table(nmax, p, ty)
    kss, ktt = Psx @ Psy.T, Ptx @ Pty.T
    kst, kts = Psx @ Pty.T, Ptx @ Psy.T
    return 0.5 * (kss * ktt + kst * kts)


def kernel_K_star_split(op, X, Y):
    """``K*`` through differences of the kernels of the ``P^{a,b+1}`` family.

    The degree-(2m+1) correction equals
    ``(x1+x2)(y1+y2) / (hh_0 hh_m) [K_m - K_{m-1} + (hh_0/hh_m - 1) P_{m,m} P_{m,m}]``.
    """
    X, Y = _as_points(X), _as_points(Y)
    m = op.m
    spec = op.spec
    BX = basis_matrix(spec, 2 * m, X[:, 0], X[:, 1])
    BY = basis_matrix(spec, 2 * m, Y[:, 0], Y[:, 1])
    K2m = BX @ BY.T
    p1 = spec.jacobi.shift(0, 1)
    hh0, hhm = op.hat_h[0], op.hat_h[m]
    diff = _sym_kernel(m, p1, X, Y) - _sym_kernel(m - 1, p1, X, Y)
    sx, tx = jacobi_variables(X[:, 0], X[:, 1])
    sy, ty = jacobi_variables(Y[:, 0], Y[:, 1])
    pmx = jacobi.orthonormal_eval(m, p1, sx) * jacobi.orthonormal_eval(m, p1, tx)
    pmy = jacobi.orthonormal_eval(m, p1, sy) * jacobi.orthonormal_eval(m, p1, ty)
    corr = diff + (hh0 / hhm - 1.0) * np.outer(pmx, pmy)
    ux = X[:, 0] + X[:, 1]
    uy = Y[:, 0] + Y[:, 1]
    return K2m + np.outer(ux, uy) / (hh0 * hhm) * corr


def fundamental_matrix(op, x, y):
    """``ell_node(x_i, y_i)`` for every node; shape ``(npoints, N)``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return op.basis(x.ravel(), y.ravel()) @ op.node_matrix


def _check_samples(op, samples):
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (len(op.rule),):
        raise InputError(f"expected {len(op.rule)} samples, got shape {samples.shape}")
    return samples


def lagrange_interpolate(op, samples, x, y):
    """Interpolant of the node values ``samples`` evaluated at ``(x, y)``."""
    samples = _check_samples(op, samples)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    xf, yf = x.ravel(), y.ravel()
    coeffs = op.node_matrix @ samples
    out = np.empty(xf.shape[0])
    for lo in range(0, xf.shape[0], CHUNK):
        hi = lo + CHUNK
        out[lo:hi] = op.basis(xf[lo:hi], yf[lo:hi]) @ coeffs
    return out.reshape(x.shape)


def sample(op, f):
    """Values of a vectorized ``f(x, y)`` at the operator's nodes."""
    return np.asarray(f(op.rule.x, op.rule.y), dtype=float)


def integrate_via_interpolation(op, samples):
    """Integral of the interpolant, which is the cubature sum ``sum lambda_i f_i``."""
    samples = _check_samples(op, samples)
    return float(np.sum(op.rule.weights * samples))


def lebesgue_grid(G):
    """Chebyshev-Lobatto tensor grid with ``G`` points per side."""
    t = np.cos(np.pi * np.arange(G) / (G - 1))
    t[0], t[-1] = 1.0, -1.0
    return np.meshgrid(t, t, indexing="ij")


def lebesgue_function(op, x, y):
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    xf, yf = x.ravel(), y.ravel()
    out = np.empty(xf.shape[0])
    for lo in range(0, xf.shape[0], CHUNK):
        hi = lo + CHUNK
        out[lo:hi] = np.sum(np.abs(fundamental_matrix(op, xf[lo:hi], yf[lo:hi])), axis=1)
    return out.reshape(x.shape)


def lebesgue_constant(op, G=256):
    """Max of the Lebesgue function on a G x G Chebyshev grid (a lower bound of the sup)."""
    if G < 64:
        raise InputError("grid resolution must be at least 64")
    X, Y = lebesgue_grid(G)
    return float(np.max(lebesgue_function(op, X, Y)))


def fit_lebesgue(ms, values):
    """Growth fits of ``Lambda`` against ``n = 2m+1``.

    Returns the least-squares slopes of ``log Lambda`` against ``log n``
    (power law) and against ``log log n`` (log-power law), and the end-to-end
    ratio.
    """
    ms = np.asarray(ms, dtype=float)
    lam = np.asarray(values, dtype=float)
    if ms.size < 2:
        raise InputError("need at least two values of m to fit")
    n = 2 * ms + 1
    power = float(np.polyfit(np.log(n), np.log(lam), 1)[0])
    logpow = float(np.polyfit(np.log(np.log(n)), np.log(lam), 1)[0])
    ratio = float(lam[-1] / lam[0])
    return {"power_exponent": power, "log_exponent": logpow, "ratio": ratio}
