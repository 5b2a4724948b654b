"""The m <-> F <-> v correspondences and vortex detection."""

from .potentials import (
    DEFAULT_CURL_TOL,
    Potentials,
    beltrami_residual,
    complex_potential,
    field_to_potential,
    inclusion_distance,
    inclusion_distance_many,
    plaquette_curl,
    potential_gradients,
    potential_jacobian,
    potential_to_field,
    wirtinger,
)
from .winding import (
    SingularPoint,
    loop_nodes,
    parse_singular_csv,
    plaquette_windings,
    singular_set_csv,
    singular_set_scan,
    winding_number,
    wrap_angle,
)

__all__ = [
    "DEFAULT_CURL_TOL",
    "Potentials",
    "SingularPoint",
    "beltrami_residual",
    "complex_potential",
    "field_to_potential",
    "inclusion_distance",
    "inclusion_distance_many",
    "loop_nodes",
    "parse_singular_csv",
    "plaquette_curl",
    "plaquette_windings",
    "potential_gradients",
    "potential_jacobian",
    "potential_to_field",
    "singular_set_csv",
    "singular_set_scan",
    "winding_number",
    "wirtinger",
    "wrap_angle",
]
