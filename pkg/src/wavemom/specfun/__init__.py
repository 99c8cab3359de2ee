"""Special functions underlying the separable wave families."""

from .bessel import bessel_j
from .mathieu import (
    MathieuClass,
    MathieuEigen,
    mathieu_angular_derivative,
    mathieu_ce,
    mathieu_ce_radial,
    mathieu_eigen,
    mathieu_norm_constant,
    mathieu_se,
    mathieu_se_radial,
    radial_xi_max,
)

__all__ = [
    "bessel_j",
    "MathieuClass",
    "MathieuEigen",
    "mathieu_angular_derivative",
    "mathieu_ce",
    "mathieu_ce_radial",
    "mathieu_eigen",
    "mathieu_norm_constant",
    "mathieu_se",
    "mathieu_se_radial",
    "radial_xi_max",
]
