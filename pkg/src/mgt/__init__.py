"""Exact-arithmetic toolkit for metrized graphs and the tau invariant."""

from .circuit import EdgeProfile, edge_profile, resistance, resistance_matrix, voltage
from .errors import MgtError
from .graph import (
    Edge,
    MetrizedGraph,
    bridges,
    build_graph,
    genus,
    insert_point,
    normalize,
    scale,
    subdivide_uniform,
    total_length,
)
from .integration import apq_direct, fit_edge_function, integrate_product, tau_via_integral
from .rational import INF, ExtScalar, Scalar
from .tau import (
    CanonicalMeasure,
    GradientVector,
    TauReport,
    apq_identity,
    canonical_measure,
    genus_identity_check,
    lower_bound_suite,
    tau_bridgeless_identity,
    tau_edge_sum,
    tau_gradient,
)

__all__ = [
    "CanonicalMeasure",
    "Edge",
    "EdgeProfile",
    "ExtScalar",
    "GradientVector",
    "INF",
    "MetrizedGraph",
    "MgtError",
    "Scalar",
    "TauReport",
    "apq_direct",
    "apq_identity",
    "bridges",
    "build_graph",
    "canonical_measure",
    "edge_profile",
    "fit_edge_function",
    "genus",
    "genus_identity_check",
    "insert_point",
    "integrate_product",
    "lower_bound_suite",
    "normalize",
    "resistance",
    "resistance_matrix",
    "scale",
    "subdivide_uniform",
    "tau_bridgeless_identity",
    "tau_edge_sum",
    "tau_gradient",
    "tau_via_integral",
    "total_length",
    "voltage",
]
