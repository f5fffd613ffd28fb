"""Radius-dominating sets, 2-eccentricity spanners and 2-approximate eccentricities.

The level loop shrinks a candidate set ``B`` from ``V`` down to a handful of
vertices; each level samples ``A_i`` from ``B_{i+1}``, anchors at the
deepest vertex of ``out-bfs(A_i)`` and keeps only its closest incoming
vertices. ``S = B_1 ∪ A_1 ∪ ... ∪ A_{k-1}`` then satisfies
``depth(out-bfs(S)) <= OutEcc(x)`` for every ``x``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .domset import SamplerConfig, _sample, deepest, log2n
from .errors import ResampleLimitError
from .graph import (
    DirectedGraph,
    Direction,
    closest_order,
    require_strongly_connected,
    sssp,
    tree_depth,
    union_tree_edges,
)
from .spanners import SpannerKind, SpannerResult, StretchClaim


@dataclass(frozen=True)
class Level:
    i: int
    a: frozenset[int]
    anchor: int
    b: frozenset[int]
    b_parent: frozenset[int]  # B_{i+1}
    depth: int  # depth(out-bfs(A_i))
    resamples: int


@dataclass(frozen=True)
class RadiusDominatingSet:
    s: frozenset[int]
    levels: tuple[Level, ...]
    k: int
    depth: int  # depth(out-bfs(S))

    def to_dict(self) -> dict:
        return {
            "size": len(self.s),
            "k": self.k,
            "depth": self.depth,
            "levels": [
                {"i": lv.i, "A": len(lv.a), "anchor": lv.anchor, "B": len(lv.b), "depth": lv.depth}
                for lv in self.levels
            ],
        }


def default_levels(n: int) -> int:
    return max(1, math.ceil(log2n(n)))


def radius_dominating_set(
    g: DirectedGraph, k: Optional[int] = None, cfg: SamplerConfig = SamplerConfig()
) -> RadiusDominatingSet:
    require_strongly_connected(g)
    n = g.n
    k = default_levels(n) if k is None else k
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rng = cfg.rng()
    a_size = math.ceil(cfg.oversample_c * n ** (1 / k) * log2n(n))
    b = frozenset(range(n))
    levels = []
    picked: set[int] = set()
    for i in range(k - 1, 0, -1):
        b_size = math.ceil(n ** (i / k))
        for attempt in range(cfg.max_resamples):
            a = _sample(rng, b, max(1, min(a_size, len(b))))
            tree = sssp(g, a, Direction.OUT)
            anchor = deepest(tree.dist)
            order = [v for v in closest_order(g, anchor, Direction.IN) if v in b]
            b_next = frozenset(order[:b_size])
            if a & b_next:
                break
        else:
            raise ResampleLimitError(f"level {i}: A_i never met B_i in {cfg.max_resamples} samples")
        levels.append(Level(i, a, anchor, b_next, b, tree_depth(tree), attempt))
        picked |= a
        b = b_next
    s = frozenset(b | picked)
    depth = tree_depth(sssp(g, s, Direction.OUT))
    return RadiusDominatingSet(s, tuple(levels), k, depth)


def ecc2_spanner(g: DirectedGraph, cfg: SamplerConfig = SamplerConfig(), k: Optional[int] = None) -> SpannerResult:
    """In/out trees of a radius-dominating set: ``OutEcc_H(x) <= 2 OutEcc_G(x)``."""
    start = time.perf_counter()
    rds = radius_dominating_set(g, k, cfg)
    edges = union_tree_edges(g, rds.s)
    claim = StretchClaim(Fraction(2), 0, True, metric="eccentricity")
    audit = {
        "seed": cfg.seed,
        "edges": len(edges),
        "roots": len(rds.s),
        "size_bound": 2 * g.n * len(rds.s),
        "radius_set": rds.to_dict(),
        "construction_time_s": time.perf_counter() - start,
    }
    return SpannerResult(frozenset(edges), SpannerKind.ECC2, claim, audit)


def approx_eccentricities(
    g: DirectedGraph, cfg: SamplerConfig = SamplerConfig(), rds: Optional[RadiusDominatingSet] = None
) -> list[int]:
    """``OutEcc'(x) = max_{s in S} d(x, s) + depth(out-bfs(S))``, within factor 2 of ``OutEcc(x)``."""
    if rds is None:
        rds = radius_dominating_set(g, None, cfg)
    far = [0] * g.n
    for s in sorted(rds.s):
        dist = sssp(g, [s], Direction.IN).dist
        for x in range(g.n):
            if dist[x] > far[x]:
                far[x] = dist[x]
    return [f + rds.depth for f in far]
