"""Reference fields and the Aviles-Giga descent."""

from .aviles_giga import (
    DescentResult,
    aviles_giga_energy,
    aviles_giga_gradient,
    eikonal_residual,
    field_from_u,
    minimize_aviles_giga,
)
from .generators import (
    conjugate,
    jump_cost,
    jump_field,
    jump_line_offset,
    jump_traces,
    vortex,
    vortex_center,
    vortex_superposition,
)

__all__ = [
    "DescentResult",
    "aviles_giga_energy",
    "aviles_giga_gradient",
    "conjugate",
    "eikonal_residual",
    "field_from_u",
    "jump_cost",
    "jump_field",
    "jump_line_offset",
    "jump_traces",
    "minimize_aviles_giga",
    "vortex",
    "vortex_center",
    "vortex_superposition",
]
