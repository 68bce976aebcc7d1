"""One-dimensional Jacobi polynomials and the quadrature rules built on them.

Conventions
-----------
* ``P_n^{(a,b)}`` is the classical Jacobi polynomial, ``P_n(1) = binom(n+a, n)``.
* The weight ``w_{a,b}(t) = (1-t)^a (1+t)^b`` is always used normalized to unit
  mass on ``[-1, 1]``; ``jacobi_norm_h`` returns ``int P_n^2 w*``.
* ``p_n = P_n / sqrt(h_n)`` is the orthonormal family.

All quadrature rules are stated against the normalized weight, so their
weights sum to one.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal
from scipy.special import binom, gammaln, poch

from cubkit import _backend
from cubkit.errors import InputError, NumericalError


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise InputError(
                f"Jacobi parameters must satisfy alpha, beta > -1; got ({self.alpha}, {self.beta})")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    def shift(self, da=0, db=0):
        return JacobiParams(self.alpha + da, self.beta + db)


def as_params(p):
    if isinstance(p, JacobiParams):
        return p
    alpha, beta = p
    return JacobiParams(alpha, beta)


@dataclass(frozen=True)
class QuadratureRule1D:
    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    kind: Literal["gauss", "gauss_radau_at_plus1"]

    def integrate(self, f):
        return float(np.sum(self.weights * f(self.nodes)))


# --------------------------------------------------------------------------
# evaluation

@lru_cache(maxsize=256)
def _recurrence(n, a, b):
    A = np.zeros(n)
    B = np.zeros(n)
    C = np.zeros(n)
    if n >= 1:
        A[0] = (a + b + 2.0) / 2.0
        B[0] = (a - b) / 2.0
    for k in range(1, n):
        N = k + 1
        s = 2 * N + a + b
        D = 2.0 * N * (N + a + b) * (s - 2.0)
        A[k] = (s - 1.0) * s * (s - 2.0) / D
        B[k] = (s - 1.0) * (a * a - b * b) / D
        C[k] = 2.0 * (N + a - 1.0) * (N + b - 1.0) * s / D
    for arr in (A, B, C):
        arr.setflags(write=False)
    return A, B, C


def recurrence_coefficients(n, p):
    """Coefficients with ``P_{k+1} = (A_k t + B_k) P_k - C_k P_{k-1}``, ``k < n``."""
    p = as_params(p)
    return _recurrence(int(n), p.alpha, p.beta)


def jacobi_table(nmax, p, t):
    """Classical ``P_0..P_nmax`` at ``t``; result has shape ``t.shape + (nmax+1,)``."""
    t = np.asarray(t, dtype=float)
    A, B, C = recurrence_coefficients(nmax, p)
    out = _backend.three_term_table(A, B, C, t.ravel())
    return out.reshape(t.shape + (nmax + 1,))


def jacobi_eval(n, p, t):
    """Classical Jacobi polynomial ``P_n^{(alpha,beta)}(t)``."""
    if n < 0:
        raise InputError("degree must be non-negative")
    vals = jacobi_table(n, p, t)[..., n]
    return float(vals) if np.ndim(vals) == 0 else vals


def jacobi_derivative(n, p, t):
    """``d/dt P_n^{(a,b)}(t) = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}(t)``."""
    p = as_params(p)
    if n == 0:
        return np.zeros_like(np.asarray(t, dtype=float))
    return 0.5 * (n + p.alpha + p.beta + 1.0) * jacobi_eval(n - 1, p.shift(1, 1), t)


@lru_cache(maxsize=4096)
def _norm_h(n, a, b):
    if n == 0:
        return 1.0
    lg = (gammaln(n + a + 1) + gammaln(n + b + 1) + gammaln(a + b + 2)
          - gammaln(n + a + b + 1) - gammaln(n + 1) - gammaln(a + 1) - gammaln(b + 1))
    return float(np.exp(lg) / (2 * n + a + b + 1))


def jacobi_norm_h(n, p):
    """``h_n = int |P_n(t)|^2 w*_{a,b}(t) dt`` under the unit-mass weight."""
    p = as_params(p)
    return _norm_h(int(n), p.alpha, p.beta)


def norms(nmax, p):
    p = as_params(p)
    return np.array([_norm_h(k, p.alpha, p.beta) for k in range(nmax + 1)])


def orthonormal_table(nmax, p, t):
    """Orthonormal ``p_0..p_nmax`` at ``t`` (shape ``t.shape + (nmax+1,)``)."""
    return jacobi_table(nmax, p, t) / np.sqrt(norms(nmax, p))


def orthonormal_divdiff(nmax, p, s, t):
    """``(p_k(s) - p_k(t)) / (s - t)`` for the orthonormal family, confluent-safe."""
    s = np.asarray(s, dtype=float)
    t = np.broadcast_to(np.asarray(t, dtype=float), s.shape)
    A, B, C = recurrence_coefficients(nmax, p)
    out = _backend.three_term_divdiff(A, B, C, s.ravel(), np.ascontiguousarray(t).ravel())
    return out.reshape(s.shape + (nmax + 1,)) / np.sqrt(norms(nmax, p))


def orthonormal_eval(n, p, t):
    return orthonormal_table(n, p, t)[..., n]


def weight_moments(p):
    """Mean and variance of the normalized weight ``w*_{a,b}``."""
    p = as_params(p)
    a, b = p.alpha, p.beta
    mean = (b - a) / (a + b + 2)
    var = 4 * (a + 1) * (b + 1) / ((a + b + 2) ** 2 * (a + b + 3))
    return mean, var


# --------------------------------------------------------------------------
# quadrature

def jacobi_matrix(n, p):
    """Diagonal and off-diagonal of the symmetric Jacobi matrix of size ``n``."""
    p = as_params(p)
    a, b = p.alpha, p.beta
    k = np.arange(n, dtype=float)
    s = 2 * k + a + b
    diag = np.empty(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = (b * b - a * a) / (s * (s + 2))
    diag[0] = (b - a) / (a + b + 2)
    off = np.empty(max(n - 1, 0))
    for i, kk in enumerate(range(1, n)):
        sk = 2 * kk + a + b
        if kk == 1:
            v = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        else:
            v = 4 * kk * (kk + a) * (kk + b) * (kk + a + b) / (sk ** 2 * (sk + 1) * (sk - 1))
        off[i] = np.sqrt(v)
    return diag, off


@lru_cache(maxsize=512)
def _gauss(n, a, b):
    p = JacobiParams(a, b)
    diag, off = jacobi_matrix(n, p)
    if n == 1:
        x = diag.copy()
        w = np.ones(1)
    else:
        try:
            x, vecs = eigh_tridiagonal(diag, off)
        except LinAlgError as exc:
            raise NumericalError(f"Golub-Welsch eigensolve failed for n={n}, {p}") from exc
        w = vecs[0, :] ** 2
    # Newton polish of the nodes on P_n itself
    for _ in range(6):
        f = jacobi_eval(n, p, x)
        df = jacobi_derivative(n, p, x)
        dx = f / df
        x = x - dx
        if np.max(np.abs(dx)) <= 1e-16:
            break
    if not np.all(np.isfinite(x)) or np.max(np.abs(dx)) > 1e-14:
        raise NumericalError(f"Newton refinement of Gauss nodes did not settle for n={n}, {p}")
    order = np.argsort(x)
    x = x[order]
    w = w[order] / np.sum(w)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_rule(n, p):
    """n-point Gauss rule for ``w*_{a,b}``: nodes are the zeros of ``P_n``."""
    if n < 1:
        raise InputError("Gauss rule needs at least one node")
    p = as_params(p)
    x, w = _gauss(int(n), p.alpha, p.beta)
    return QuadratureRule1D(x, w, 2 * n - 1, "gauss")


@lru_cache(maxsize=512)
def _radau(n, a, b):
    if n == 0:
        x = np.ones(1)
        w = np.ones(1)
    else:
        interior = gauss_rule(n, (a + 1, b))
        mu = 2 * (a + 1) / (a + b + 2) * interior.weights / (1 - interior.nodes)
        # endpoint weight = Christoffel function at 1; same value as 1 - sum(mu)
        # but keeps full relative accuracy when it is tiny
        p1 = orthonormal_table(n, (a, b), np.ones(1))[0]
        mu0 = 1.0 / np.sum(p1 * p1)
        x = np.append(interior.nodes, 1.0)
        w = np.append(mu, mu0)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_radau_rule(n, p):
    """Gauss-Radau rule with ``n`` interior nodes and the fixed node ``+1``.

    Interior nodes are the zeros of ``P_n^{(a+1,b)}``; exact through degree 2n.
    The endpoint weight is ``1 / sum_{k<=n} p_k(1)^2``, which equals
    ``1 - sum(interior weights)``.
    """
    if n < 0:
        raise InputError("interior node count must be non-negative")
    p = as_params(p)
    x, w = _radau(int(n), p.alpha, p.beta)
    return QuadratureRule1D(x, w, 2 * n, "gauss_radau_at_plus1")


def radau_endpoint_weight(n, p):
    """Closed form of the ``+1`` weight: ``(b+1)_n / (binom(n+a+1, n) (a+b+2)_n)``."""
    p = as_params(p)
    a, b = p.alpha, p.beta
    return float(poch(b + 1, n) / (binom(n + a + 1, n) * poch(a + b + 2, n)))
