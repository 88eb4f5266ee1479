"""Directed single linkage quasi-clustering of asymmetric networks."""

from quasiclust._core import (
    EdgeEvent,
    InfluenceOrder,
    MergeEvent,
    Network,
    QuasiclustError,
    QuasiDendrogram,
    QuasiPartition,
    QuasiUltrametric,
    certify_quasi_ultrametric,
    chain_cost_oracle,
    cut_at,
    dendrogram_from_json,
    dendrogram_to_json,
    dioid_power,
    dioid_product,
    distortion,
    dsl,
    max_symmetrize,
    metric_closure,
    network_distance_exact,
    network_distance_upper,
    network_violations,
    partition_to_dot,
    partition_to_json,
    psi,
    scale_transform,
    separation,
    stability_check,
    transform_flow,
    upsilon,
)

__all__ = [
    "EdgeEvent",
    "InfluenceOrder",
    "MergeEvent",
    "Network",
    "QuasiclustError",
    "QuasiDendrogram",
    "QuasiPartition",
    "QuasiUltrametric",
    "certify_quasi_ultrametric",
    "chain_cost_oracle",
    "cut_at",
    "dendrogram_from_json",
    "dendrogram_to_json",
    "dioid_power",
    "dioid_product",
    "distortion",
    "dsl",
    "max_symmetrize",
    "metric_closure",
    "network_distance_exact",
    "network_distance_upper",
    "network_violations",
    "partition_to_dot",
    "partition_to_json",
    "psi",
    "scale_transform",
    "separation",
    "stability_check",
    "transform_flow",
    "upsilon",
]
