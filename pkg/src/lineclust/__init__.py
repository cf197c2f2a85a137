"""Density-based clustering of lines and line segments in R^n.

Lines get neighbourhoods, not centroids: a density profile along a line is
rotated around it to form a region of space, a dataset line relates to
another when the other enters its (scaled) region, and clusters grow from
lines whose neighbour count clears a cardinality threshold.  Points with one
missing coordinate join the same pipeline as axis-aligned segments.
"""

from .engine import ClusterLabels, NOISE, RunConfig, is_core, relation_eval_count, run, run_expand, run_literal
from .errors import ConfigurationError, ParseError, UnsupportedRecordError
from .geometry import (
    ClosestPointResult,
    MinDistance,
    SegmentLike,
    closest_point,
    length,
    line,
    min_distance,
    param_point,
    segment,
)
from .missing_data import AxisDomain, LiftedPoint, LiftResult, lift, lift_dataset
from .neighborhood import (
    NeighbourhoodSpec,
    RelationEvaluator,
    contains_point,
    neighbor_set,
    relates,
    relates_prob,
    relates_v1,
)
from .profiles import (
    Profile,
    Support,
    adaptive_quadrature,
    density,
    effective_window,
    exact_volume_scaling_factor,
    format_profile,
    neighbourhood_volume,
    parse_profile,
    peak_density,
    scaling_factor,
    unit_ball_volume,
)

__version__ = "0.1.0"

__all__ = [
    "AxisDomain",
    "ClosestPointResult",
    "ClusterLabels",
    "ConfigurationError",
    "LiftResult",
    "LiftedPoint",
    "MinDistance",
    "NOISE",
    "NeighbourhoodSpec",
    "ParseError",
    "Profile",
    "RelationEvaluator",
    "RunConfig",
    "SegmentLike",
    "Support",
    "UnsupportedRecordError",
    "adaptive_quadrature",
    "closest_point",
    "contains_point",
    "density",
    "effective_window",
    "exact_volume_scaling_factor",
    "format_profile",
    "is_core",
    "length",
    "lift",
    "lift_dataset",
    "line",
    "min_distance",
    "neighbor_set",
    "neighbourhood_volume",
    "param_point",
    "parse_profile",
    "peak_density",
    "relates",
    "relates_prob",
    "relates_v1",
    "relation_eval_count",
    "run",
    "run_expand",
    "run_literal",
    "scaling_factor",
    "segment",
    "unit_ball_volume",
]
