"""Minimal and near-minimal cubature rules of degree 4m+1 on the square.

The weights are ``|x-y|^{2a+1} |x+y|^{2b+1} ((1-x^2)(1-y^2))^sigma`` with
``sigma = -1/2`` or ``+1/2``, normalized to unit mass.
"""

__version__ = "0.1.0"

from cubkit._backend import BACKEND
from cubkit.errors import (
    ConstructionError,
    CubkitError,
    InputError,
    NumericalError,
    OracleError,
)
from cubkit.jacobi import (
    JacobiParams,
    QuadratureRule1D,
    gauss_radau_rule,
    gauss_rule,
    jacobi_eval,
    jacobi_norm_h,
)
from cubkit.oracle import WeightSpec, integrate_cw, moment_table
from cubkit.cubature import (
    CubatureRule2D,
    diagonal_zeros,
    minimal_rule,
    n_min,
    near_minimal_rule,
    theta_grid,
    verify_rule,
)
from cubkit.interpolation import (
    hat_h,
    interpolation_operator,
    lagrange_interpolate,
    lebesgue_constant,
    sample,
)
from cubkit.geometry import check_node_region, region_curves

__all__ = [
    "BACKEND",
    "ConstructionError",
    "CubatureRule2D",
    "CubkitError",
    "InputError",
    "JacobiParams",
    "NumericalError",
    "OracleError",
    "QuadratureRule1D",
    "WeightSpec",
    "check_node_region",
    "diagonal_zeros",
    "gauss_radau_rule",
    "gauss_rule",
    "hat_h",
    "integrate_cw",
    "interpolation_operator",
    "jacobi_eval",
    "jacobi_norm_h",
    "lagrange_interpolate",
    "lebesgue_constant",
    "minimal_rule",
    "moment_table",
    "n_min",
    "near_minimal_rule",
    "region_curves",
    "sample",
    "theta_grid",
    "verify_rule",
]
