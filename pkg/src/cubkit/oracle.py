"""Reference integration against the weights on the square.

Every exactness or orthogonality claim made elsewhere in the package is
checked against this module, which shares no code path with the rule
constructions: it works in angle coordinates ``x = cos(theta), y = cos(phi)``,
where the ``(1-x^2)^{-1/2}`` factors cancel against the Jacobian, cuts the
square ``[0, pi]^2`` along the two lines ``theta = phi`` and
``theta + phi = pi`` on which ``|x - y|`` and ``|x + y|`` vanish, and applies
collapsed tensor Gauss-Legendre on each of the four triangles.

For half-integer ``alpha, beta`` the integrand is analytic on each triangle
and the result converges spectrally in ``order``. For other parameters the
convergence is only algebraic.
"""

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from cubkit.errors import InputError, OracleError
from cubkit.jacobi import JacobiParams

DEFAULT_ORDER = 96
MIN_ORDER = 16


def default_order():
    """Oracle order per panel direction; ``CUBKIT_ORACLE_ORDER`` overrides 96."""
    raw = os.environ.get("CUBKIT_ORACLE_ORDER")
    if not raw:
        return DEFAULT_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise InputError(f"CUBKIT_ORACLE_ORDER must be an integer, got {raw!r}") from None
    if order < MIN_ORDER:
        raise InputError(f"oracle order must be >= {MIN_ORDER}")
    return order


@dataclass(frozen=True)
class WeightSpec:
    """Selects ``|x-y|^{2a+1} |x+y|^{2b+1} ((1-x^2)(1-y^2))^sigma`` on the square."""

    alpha: float
    beta: float
    sigma: float = -0.5

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise InputError(f"need alpha, beta > -1; got ({self.alpha}, {self.beta})")
        if self.sigma not in (-0.5, 0.5):
            raise InputError(f"sigma must be -1/2 or +1/2; got {self.sigma}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "sigma", float(self.sigma))

    @property
    def jacobi(self):
        return JacobiParams(self.alpha, self.beta)

    def with_sigma(self, sigma):
        return WeightSpec(self.alpha, self.beta, sigma)

    def swapped(self):
        return WeightSpec(self.beta, self.alpha, self.sigma)

    def weight(self, x, y):
        """Unnormalized weight value."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return (np.abs(x - y) ** (2 * self.alpha + 1) * np.abs(x + y) ** (2 * self.beta + 1)
                * ((1 - x * x) * (1 - y * y)) ** self.sigma)


@dataclass(frozen=True)
class MomentTable:
    spec: WeightSpec
    max_degree: int
    values: dict = field(repr=False)

    def __getitem__(self, ab):
        return self.values[ab]

    def as_array(self):
        """``M[a, b]`` for ``a + b <= max_degree``; NaN elsewhere."""
        d = self.max_degree
        out = np.full((d + 1, d + 1), np.nan)
        for (a, b), v in self.values.items():
            out[a, b] = v
        return out


def _gauss_legendre01(order):
    g, w = np.polynomial.legendre.leggauss(order)
    return (g + 1) / 2, w / 2


@lru_cache(maxsize=64)
def _points(alpha, beta, sigma, order):
    if order < MIN_ORDER:
        raise InputError(f"oracle order must be >= {MIN_ORDER}")
    g, w = _gauss_legendre01(order)
    r, tau = np.meshgrid(g, g, indexing="ij")
    wr, wt = np.meshgrid(w, w, indexing="ij")
    r, tau, wrt = r.ravel(), tau.ravel(), (wr * wt).ravel()

    apex = np.array([np.pi / 2, np.pi / 2])
    corners = [np.array(c) for c in ((0.0, 0.0), (np.pi, 0.0), (np.pi, np.pi), (0.0, np.pi))]
    th, ph, wts = [], [], []
    for i in range(4):
        b, c = corners[i], corners[(i + 1) % 4]
        e1, e2 = b - apex, c - b
        area2 = abs(e1[0] * e2[1] - e1[1] * e2[0])
        th.append(apex[0] + r * (e1[0] + tau * e2[0]))
        ph.append(apex[1] + r * (e1[1] + tau * e2[1]))
        wts.append(wrt * r * area2)
    th = np.concatenate(th)
    ph = np.concatenate(ph)
    wts = np.concatenate(wts)

    half_sum, half_diff = (th + ph) / 2, (th - ph) / 2
    # |cos th - cos ph| and |cos th + cos ph| in product form (no cancellation)
    dist_minus = 2 * np.abs(np.sin(half_sum) * np.sin(half_diff))
    dist_plus = 2 * np.abs(np.cos(half_sum) * np.cos(half_diff))
    dens = (dist_minus ** (2 * alpha + 1) * dist_plus ** (2 * beta + 1)
            * (np.sin(th) * np.sin(ph)) ** (2 * sigma + 1))
    wts = wts * dens
    wts = wts / np.sum(wts)
    x, y = np.cos(th), np.cos(ph)
    for arr in (x, y, wts):
        arr.setflags(write=False)
    return x, y, wts


def quadrature_points(spec, order=None):
    """Nodes and normalized weights of the reference rule (read-only arrays)."""
    order = default_order() if order is None else int(order)
    return _points(spec.alpha, spec.beta, spec.sigma, order)


def integrate_cw(spec, f, order=None):
    """``int f(x, y) W*(x, y) dx dy`` over the square; ``f`` must be vectorized."""
    x, y, w = quadrature_points(spec, order)
    vals = np.asarray(f(x, y), dtype=float)
    vals = np.broadcast_to(vals, w.shape)
    if not np.all(np.isfinite(vals)):
        raise OracleError("integrand returned non-finite values")
    return float(np.sum(w * vals))


def integrate_w_parabolic(spec, f, order=None):
    """Integral over the parabolic domain, pulled back by ``(u, v) = (2xy, x^2+y^2-1)``."""
    return integrate_cw(spec, lambda x, y: f(2 * x * y, x * x + y * y - 1), order)


@lru_cache(maxsize=64)
def _moments(alpha, beta, sigma, max_degree, order):
    x, y, w = _points(alpha, beta, sigma, order)
    d = max_degree
    xp = np.vander(x, d + 1, increasing=True)
    yp_t = np.ascontiguousarray(np.vander(y, d + 1, increasing=True).T)
    values = {}
    for a in range(d + 1):
        wa = w * xp[:, a]
        # contiguous rows -> numpy's pairwise summation, deterministic order
        row = np.sum(yp_t[: d - a + 1] * wa[None, :], axis=1)
        for b in range(d - a + 1):
            values[(a, b)] = float(row[b])
    return values


def moment_table(spec, max_degree, order=None):
    """All normalized moments ``int x^a y^b W*`` with ``a + b <= max_degree``."""
    if max_degree < 0:
        raise InputError("max_degree must be non-negative")
    order = default_order() if order is None else int(order)
    values = _moments(spec.alpha, spec.beta, spec.sigma, int(max_degree), order)
    return MomentTable(spec, int(max_degree), dict(values))


def integrate_jacobi_1d(f, p, order=500):
    """``int f(t) w*_{a,b}(t) dt`` by Gauss-Legendre in ``t = cos(theta)``.

    Spectrally accurate when ``2a+1`` and ``2b+1`` are non-negative integers.
    """
    g, w = _gauss_legendre01(order)
    th = np.pi * g
    dens = np.sin(th / 2) ** (2 * p.alpha + 1) * np.cos(th / 2) ** (2 * p.beta + 1)
    wts = w * dens
    return float(np.sum(wts * f(np.cos(th))) / np.sum(wts))
