"""Sparse diameter and eccentricity spanners for directed graphs, static and under one-way edge streams."""

from .domset import SamplerConfig, dominating_pair, verify_domination
from .ecc import approx_eccentricities, ecc2_spanner, radius_dominating_set
from .graph import DirectedGraph, Direction, build_graph, sssp
from .lbgen import generate, random_strongly_connected
from .oracle import audit_spanner, exact_metrics
from .spanners import additive_spanner, diam15_spanner, diam53_spanner, tradeoff_spanner

__all__ = [
    "DirectedGraph",
    "Direction",
    "SamplerConfig",
    "additive_spanner",
    "approx_eccentricities",
    "audit_spanner",
    "build_graph",
    "diam15_spanner",
    "diam53_spanner",
    "dominating_pair",
    "ecc2_spanner",
    "exact_metrics",
    "generate",
    "radius_dominating_set",
    "random_strongly_connected",
    "sssp",
    "tradeoff_spanner",
    "verify_domination",
]
