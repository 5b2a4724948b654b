"""Grids, discrete calculus, mollification and entropy productions."""

from .besov import besov_profile, besov_seminorm, direction_shifts, lp_norm_on
from .calculus import curl, divergence, gradient, grown_mask, jacobian, partials
from .fieldio import format_field, parse_field, read_field, write_field
from .grid import Box, GridSpec, PlanarField, field_from_function
from .mollify import (
    MollifierKernel,
    ball_offsets,
    bump_profile,
    commutator,
    convolve,
    difference_average,
    mollify,
    p_eps,
)
from .production import (
    ProductionReport,
    RatioProfile,
    TestBump,
    bump_family,
    production_bound_profile,
    production_bound_ratio,
    weak_entropy_production,
)

__all__ = [
    "Box",
    "GridSpec",
    "MollifierKernel",
    "PlanarField",
    "ProductionReport",
    "RatioProfile",
    "TestBump",
    "ball_offsets",
    "besov_profile",
    "besov_seminorm",
    "bump_family",
    "bump_profile",
    "commutator",
    "convolve",
    "curl",
    "difference_average",
    "direction_shifts",
    "divergence",
    "field_from_function",
    "format_field",
    "gradient",
    "grown_mask",
    "jacobian",
    "lp_norm_on",
    "mollify",
    "p_eps",
    "parse_field",
    "partials",
    "production_bound_profile",
    "production_bound_ratio",
    "read_field",
    "weak_entropy_production",
    "write_field",
]
