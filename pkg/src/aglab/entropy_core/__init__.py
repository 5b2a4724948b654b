"""Spectral entropies, the harmonic extension and the matrix curve K."""

from .entropies import (
    DEFAULT_CUTOFF,
    CutoffEntropy,
    CutoffProfile,
    DiscEntropy,
    HarmonicEntropy,
    JinKohnEntropy,
    circle_entropy_from_psi,
    cutoff_extension,
)
from .harmonic import HarmonicFunction, a_phi, b_phi, b_phi_jacobian, harmonic_extend
from .kset import (
    CoercivityEstimate,
    KMatrix,
    coercivity_scan,
    jin_kohn_jacobian,
    jin_kohn_sigma,
    p_matrix,
    p_matrix_derivative,
    p_of_theta,
    p_rows_from_sigma,
    perp,
    reduce_angle,
    rotate,
    rotation_relation_residual,
)
from .spectral import (
    DEFAULT_K_MAX,
    AngularFunction,
    a_symbol,
    apply_multiplier,
    hilbert_transform,
    multiplier_A,
    multiplier_A0,
    multiplier_A1,
)

__all__ = [
    "DEFAULT_CUTOFF",
    "DEFAULT_K_MAX",
    "AngularFunction",
    "CoercivityEstimate",
    "CutoffEntropy",
    "CutoffProfile",
    "DiscEntropy",
    "HarmonicEntropy",
    "HarmonicFunction",
    "JinKohnEntropy",
    "KMatrix",
    "a_phi",
    "a_symbol",
    "apply_multiplier",
    "b_phi",
    "b_phi_jacobian",
    "circle_entropy_from_psi",
    "coercivity_scan",
    "cutoff_extension",
    "harmonic_extend",
    "hilbert_transform",
    "jin_kohn_jacobian",
    "jin_kohn_sigma",
    "multiplier_A",
    "multiplier_A0",
    "multiplier_A1",
    "p_matrix",
    "p_matrix_derivative",
    "p_of_theta",
    "p_rows_from_sigma",
    "perp",
    "reduce_angle",
    "rotate",
    "rotation_relation_residual",
]
