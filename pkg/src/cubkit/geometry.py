"""Where the near-minimal nodes can sit.

With ``x = cos A`` and ``y = cos B`` every off-diagonal node satisfies
``|A - B| >= theta_1`` and either ``A + B <= theta_m`` or
``A + B >= 2 pi - theta_m``. The boundary of that set in ``(x, y)`` consists
of the curves

    S1+ = {(cos t, cos(t - theta_1)) : theta_1 <= t <= pi}
    S2+ = {(cos t, cos(t - theta_m)) : 0 <= t <= theta_m}

their reflections across the diagonal, and their negations ``S1-``, ``S2-``.
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from cubkit import jacobi
from cubkit.errors import InputError
from cubkit.jacobi import JacobiParams, as_params

DIAG_TOL = 1e-12


@dataclass(frozen=True)
class RegionCurves:
    m: int
    params: JacobiParams
    case: Literal["radau", "gauss"]
    theta_1: float
    theta_m: float
    curves: dict  # label -> (samples, 2) array

    @property
    def n_samples(self):
        return sum(len(c) for c in self.curves.values())


def region_thetas(m, p, case="radau"):
    """``theta_1`` and ``theta_m`` from the zeros of ``P_m^{(a+1,b)}`` (or ``P_m^{(a,b)}``)."""
    if m < 1:
        raise InputError("region needs m >= 1")
    p = as_params(p)
    if case == "radau":
        q = p.shift(1, 0)
    elif case == "gauss":
        q = p
    else:
        raise InputError(f"unknown case {case!r}")
    z = np.asarray(jacobi.gauss_rule(m, q).nodes)
    return float(np.arccos(z[-1])), float(np.arccos(z[0]))


def region_curves(m, p, samples=200, case="radau"):
    """Sampled polylines of ``S1+, S1-, S2+, S2-`` (``samples`` points each)."""
    if samples < 2:
        raise InputError("need at least two samples per curve")
    p = as_params(p)
    th1, thm = region_thetas(m, p, case)
    t1 = np.linspace(th1, np.pi, samples)
    t2 = np.linspace(0.0, thm, samples)
    s1 = np.column_stack([np.cos(t1), np.cos(t1 - th1)])
    s2 = np.column_stack([np.cos(t2), np.cos(t2 - thm)])
    curves = {"S1+": s1, "S1-": -s1, "S2+": s2, "S2-": -s2}
    for c in curves.values():
        c.setflags(write=False)
    return RegionCurves(m, p, case, th1, thm, curves)


def points_in_region(x, y, curves, tol=1e-12):
    """Angle-space membership test; points on the diagonal ``x = y`` always pass."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    A = np.arccos(np.clip(x, -1, 1))
    B = np.arccos(np.clip(y, -1, 1))
    gap = np.abs(A - B) >= curves.theta_1 - tol
    tot = A + B
    band = (tot <= curves.theta_m + tol) | (tot >= 2 * np.pi - curves.theta_m - tol)
    diag = np.abs(x - y) <= DIAG_TOL
    return diag | (gap & band)


@dataclass(frozen=True)
class RegionReport:
    inside: bool
    flags: np.ndarray
    diagonal: np.ndarray
    n_checked: int
    failures: list

    def __bool__(self):
        return self.inside


def check_node_region(rule, curves, tol=1e-12):
    """Check every off-diagonal node of ``rule`` against the region of ``curves``."""
    if rule.m != curves.m or rule.spec.jacobi != curves.params:
        raise InputError(
            f"rule (m={rule.m}, {rule.spec.jacobi}) does not match curves "
            f"(m={curves.m}, {curves.params})")
    x, y = np.asarray(rule.x), np.asarray(rule.y)
    flags = points_in_region(x, y, curves, tol)
    diag = np.abs(x - y) <= DIAG_TOL
    failures = [(float(a), float(b)) for a, b, f in zip(x, y, flags) if not f]
    return RegionReport(bool(np.all(flags)), flags, diag, int(np.sum(~diag)), failures)
