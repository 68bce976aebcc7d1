"""Orthonormal polynomial bases for the weights ``W_{a,b,+-1/2}`` on the square.

A point ``(x, y) = (cos th, cos ph)`` of the square maps to the pair of
Jacobi variables ``s = cos(th - ph)``, ``t = cos(th + ph)``; then
``2xy = s + t`` and ``x^2 + y^2 - 1 = s t``. On the parabolic domain the
orthonormal polynomials of degree ``n`` are symmetric products of 1-D Jacobi
polynomials in ``(s, t)``:

* sigma = -1/2: ``(p_n(s) p_k(t) + p_k(s) p_n(t)) / sqrt(2)`` for ``k < n``
  and ``p_n(s) p_n(t)`` for ``k = n``;
* sigma = +1/2: ``g * (p_{n+1}(s) p_k(t) - p_k(s) p_{n+1}(t)) / (s - t)``
  with ``g^2`` the variance of ``w*_{a,b}``.

Without the ``1/sqrt(2)`` the sigma = -1/2 family would have norm ``sqrt(2)``;
the versions here have unit norm under the normalized weight.

Polynomials on the square come in two families per degree::

    deg 2n:   1Q_k = P^{a,b}_{k,n},                 k = 0..n
              2Q_k = c11 (x^2 - y^2) P^{a+1,b+1}_{k,n-1}, k = 0..n-1
    deg 2n+1: 1Q_k = c01 (x + y) P^{a,b+1}_{k,n},   k = 0..n
              2Q_k = c10 (x - y) P^{a+1,b}_{k,n},   k = 0..n
"""

from functools import lru_cache

import numpy as np

from cubkit import jacobi
from cubkit.errors import InputError
from cubkit.oracle import WeightSpec, default_order, integrate_cw

SQRT2 = np.sqrt(2.0)


def dim_poly(n):
    """Dimension of the bivariate polynomials of total degree <= n."""
    return (n + 1) * (n + 2) // 2 if n >= 0 else 0


def jacobi_variables(x, y):
    """``(s, t) = (cos(th-ph), cos(th+ph))`` without forming the angles."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sx = np.sqrt(np.clip((1 - x) * (1 + x), 0, None))
    sy = np.sqrt(np.clip((1 - y) * (1 + y), 0, None))
    xy = x * y
    prod = sx * sy
    return xy + prod, xy - prod


def family_sizes(d):
    n, odd = divmod(d, 2)
    return (n + 1, n + 1) if odd else (n + 1, n)


def basis_labels(nmax):
    """Labels ``(degree, family, k)`` in the column order of :func:`basis_matrix`."""
    labels = []
    for d in range(nmax + 1):
        n1, n2 = family_sizes(d)
        labels += [(d, 1, k) for k in range(n1)]
        labels += [(d, 2, k) for k in range(n2)]
    return labels


# --------------------------------------------------------------------------
# normalization constants a^{(i,j)}

@lru_cache(maxsize=256)
def _a_oracle(alpha, beta, sigma, i, j, order):
    spec = WeightSpec(alpha, beta, sigma)
    mass = integrate_cw(spec, lambda x, y: (x - y) ** (2 * i) * (x + y) ** (2 * j), order)
    return 1.0 / np.sqrt(mass)


def a_constant(spec, i, j, order=None):
    """``a^{(i,j)} = sqrt(b_{a+i,b+j} / b_{a,b})`` for the family prefactors.

    Closed forms for sigma = -1/2; for sigma = +1/2 the ratio of normalizing
    constants is measured with the reference integrator.
    """
    a, b = spec.alpha, spec.beta
    if (i, j) == (0, 0):
        return 1.0
    if spec.sigma < 0:
        if (i, j) == (0, 1):
            return (a + b + 2) / (2 * (b + 1))
        if (i, j) == (1, 0):
            return (a + b + 2) / (2 * (a + 1))
        if (i, j) == (1, 1):
            return (a + b + 2) * (a + b + 3) / (4 * (a + 1) * (b + 1))
        raise InputError(f"no constant a^({i},{j})")
    order = default_order() if order is None else int(order)
    return _a_oracle(a, b, spec.sigma, i, j, order)


# --------------------------------------------------------------------------
# building blocks

class _Tables:
    """Orthonormal Jacobi tables at ``s`` and ``t`` for one parameter pair."""

    def __init__(self, p, sigma, nmax, s, t):
        top = nmax + 1 if sigma > 0 else nmax
        self.sigma = sigma
        self.pt = jacobi.orthonormal_table(top, p, t)
        if sigma < 0:
            self.ps = jacobi.orthonormal_table(top, p, s)
        else:
            self.dd = jacobi.orthonormal_divdiff(top, p, s, t)
            self.gamma = np.sqrt(jacobi.weight_moments(p)[1])

    def block(self, n):
        """Columns ``P_{k,n}``, ``k = 0..n``, on the parabolic domain."""
        if self.sigma < 0:
            ps, pt = self.ps, self.pt
            blk = ps[:, n:n + 1] * pt[:, :n + 1] + ps[:, :n + 1] * pt[:, n:n + 1]
            blk[:, :n] /= SQRT2
            blk[:, n] /= 2.0
            return blk
        pt, dd = self.pt, self.dd
        return self.gamma * (dd[:, n + 1:n + 2] * pt[:, :n + 1] - pt[:, n + 1:n + 2] * dd[:, :n + 1])


def _flat_points(x, y):
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return x.shape, x.ravel(), y.ravel()


def basis_matrix(spec, nmax, x, y, order=None):
    """All orthonormal basis polynomials of degree <= nmax at the points.

    Returns an array of shape ``(npoints, dim_poly(nmax))`` whose columns
    follow :func:`basis_labels`.
    """
    shape, x, y = _flat_points(x, y)
    npts = x.shape[0]
    cols = np.empty((npts, dim_poly(nmax)))
    if nmax < 0:
        return cols
    s, t = jacobi_variables(x, y)
    p = spec.jacobi
    sig = spec.sigma
    n_even = nmax // 2
    n_odd = (nmax - 1) // 2
    f1e = _Tables(p, sig, n_even, s, t)
    f2e = _Tables(p.shift(1, 1), sig, max(n_even - 1, 0), s, t) if n_even >= 1 else None
    f1o = _Tables(p.shift(0, 1), sig, n_odd, s, t) if n_odd >= 0 else None
    f2o = _Tables(p.shift(1, 0), sig, n_odd, s, t) if n_odd >= 0 else None
    c01 = a_constant(spec, 0, 1, order) * (x + y)
    c10 = a_constant(spec, 1, 0, order) * (x - y)
    c11 = a_constant(spec, 1, 1, order) * (x - y) * (x + y)
    col = 0
    for d in range(nmax + 1):
        n, odd = divmod(d, 2)
        if odd:
            blocks = (c01[:, None] * f1o.block(n), c10[:, None] * f2o.block(n))
        elif n == 0:
            blocks = (f1e.block(0),)
        else:
            blocks = (f1e.block(n), c11[:, None] * f2e.block(n - 1))
        for blk in blocks:
            cols[:, col:col + blk.shape[1]] = blk
            col += blk.shape[1]
    return cols


# --------------------------------------------------------------------------
# single-function evaluators

def basis_P(spec, k, n, x, y):
    """``P_{k,n}^{a,b,sigma}(2xy, x^2+y^2-1)`` at points of the square."""
    if not 0 <= k <= n:
        raise InputError(f"need 0 <= k <= n; got k={k}, n={n}")
    shape, xf, yf = _flat_points(x, y)
    s, t = jacobi_variables(xf, yf)
    return _Tables(spec.jacobi, spec.sigma, n, s, t).block(n)[:, k].reshape(shape)


def basis_P_uv(spec, k, n, u, v):
    """``P_{k,n}^{a,b,sigma}(u, v)`` on the parabolic domain ``u^2 >= 4v``."""
    if not 0 <= k <= n:
        raise InputError(f"need 0 <= k <= n; got k={k}, n={n}")
    shape, uf, vf = _flat_points(u, v)
    disc = np.sqrt(np.clip(uf * uf - 4 * vf, 0, None))
    s, t = (uf + disc) / 2, (uf - disc) / 2
    return _Tables(spec.jacobi, spec.sigma, n, s, t).block(n)[:, k].reshape(shape)


def basis_Q(spec, family, k, d, x, y, order=None):
    """Orthonormal polynomial ``{family}Q_{k,d}`` on the square."""
    if family not in (1, 2):
        raise InputError("family must be 1 or 2")
    n1, n2 = family_sizes(d)
    if not 0 <= k < (n1 if family == 1 else n2):
        raise InputError(f"index k={k} out of range for {family}Q at degree {d}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n, odd = divmod(d, 2)
    sub = WeightSpec
    if odd:
        if family == 1:
            inner = sub(spec.alpha, spec.beta + 1, spec.sigma)
            return a_constant(spec, 0, 1, order) * (x + y) * basis_P(inner, k, n, x, y)
        inner = sub(spec.alpha + 1, spec.beta, spec.sigma)
        return a_constant(spec, 1, 0, order) * (x - y) * basis_P(inner, k, n, x, y)
    if family == 1:
        return basis_P(spec, k, n, x, y)
    inner = sub(spec.alpha + 1, spec.beta + 1, spec.sigma)
    return a_constant(spec, 1, 1, order) * (x * x - y * y) * basis_P(inner, k, n - 1, x, y)


def kernel_K(spec, n, X, Y, order=None):
    """Reproducing kernel of the polynomials of degree <= n, by direct summation.

    ``X`` and ``Y`` are sequences of points ``(x, y)`` (shape ``(N, 2)`` and
    ``(M, 2)``); the result has shape ``(N, M)``.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    BX = basis_matrix(spec, n, X[:, 0], X[:, 1], order)
    BY = basis_matrix(spec, n, Y[:, 0], Y[:, 1], order)
    return BX @ BY.T
