"""Static diameter spanners.

All constructions return a :class:`SpannerResult`: a set of edge ids of the
input graph plus the stretch bound the construction guarantees, so that
:func:`xdspan.oracle.audit_spanner` can check it exactly.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .domset import (
    CertKind,
    SamplerConfig,
    _dominating_pair,
    _sample,
    as_fraction,
    balanced_size,
    log2n,
)
from .errors import GraphError, ResampleLimitError
from .graph import (
    DirectedGraph,
    Direction,
    closest_order,
    diameter_2approx,
    require_strongly_connected,
    sssp,
    union_tree_edges,
)


class SpannerKind(enum.Enum):
    DIAM15 = "diam15"
    DIAM53 = "diam53"
    TRADEOFF = "tradeoff"
    ADDITIVE = "additive"
    ECC2 = "ecc2"


@dataclass(frozen=True)
class StretchClaim:
    """``bound(x) = ceil(multiplier * x) + additive`` (or without the ceiling).

    ``metric`` is ``"diameter"`` (bound applies to ``diam(H)`` given
    ``diam(G)``) or ``"eccentricity"`` (applies per vertex to ``OutEcc``).
    """

    multiplier: Fraction
    additive: int = 0
    ceil: bool = True
    metric: str = "diameter"

    def bound(self, value):
        scaled = self.multiplier * value
        if self.ceil:
            scaled = math.ceil(scaled)
        return scaled + self.additive

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "multiplier": str(self.multiplier),
            "additive": self.additive,
            "ceil": self.ceil,
        }


@dataclass(frozen=True)
class SpannerResult:
    edges: frozenset[int]
    kind: SpannerKind
    stretch_claim: StretchClaim
    audit: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.edges)

    def subgraph(self, g: DirectedGraph) -> DirectedGraph:
        return g.subgraph(self.edges)

    def to_dict(self, timing: bool = False) -> dict:
        audit = dict(self.audit)
        if not timing:
            audit.pop("construction_time_s", None)
        return {
            "kind": self.kind.value,
            "edges": len(self.edges),
            "claim": self.stretch_claim.to_dict(),
            "audit": audit,
        }


def _diameter_claim(g: DirectedGraph, multiplier) -> StretchClaim:
    return StretchClaim(as_fraction(multiplier), g.max_weight if g.weighted else 0, True)


def _empty(kind: SpannerKind, claim: StretchClaim, cfg: SamplerConfig) -> SpannerResult:
    return SpannerResult(frozenset(), kind, claim, {"seed": cfg.seed, "edges": 0, "construction_time_s": 0.0})


def diam15_spanner(g: DirectedGraph, cfg: SamplerConfig = SamplerConfig()) -> SpannerResult:
    """Union of in/out trees of a valid set-pair: ``diam(H) <= ceil(1.5 D)``.

    On weighted graphs the bound is ``1.5 D + W``.
    """
    start = time.perf_counter()
    require_strongly_connected(g)
    if g.weighted:
        claim = StretchClaim(Fraction(3, 2), g.max_weight, ceil=False)
    else:
        claim = StretchClaim(Fraction(3, 2))
    if g.n <= 1:
        return _empty(SpannerKind.DIAM15, claim, cfg)
    size = balanced_size(g.n, cfg.oversample_c)
    pair = _dominating_pair(g, Fraction(1, 2), Fraction(1, 2), size, size, cfg, cfg.rng())
    roots = pair.s1 | pair.s2
    edges = union_tree_edges(g, roots)
    audit = {
        "seed": cfg.seed,
        "edges": len(edges),
        "roots": len(roots),
        "size_bound": 2 * g.n * len(roots),
        "pair": pair.to_dict(),
        "construction_time_s": time.perf_counter() - start,
    }
    return SpannerResult(frozenset(edges), SpannerKind.DIAM15, claim, audit)


def alpha_for(n: int, diameter_estimate: int) -> int:
    """Balance point ``(n D / log n)^(1/3)`` between tree and path edges, clamped to ``[1, n]``."""
    lg = log2n(n)
    if lg == 0:
        return 1
    return max(1, min(n, math.ceil((n * max(diameter_estimate, 1) / lg) ** (1 / 3))))


def diam53_spanner(g: DirectedGraph, cfg: SamplerConfig = SamplerConfig()) -> SpannerResult:
    """5/3-diameter spanner from two mirrored dominating pairs plus A2 x B1 paths."""
    start = time.perf_counter()
    require_strongly_connected(g)
    claim = _diameter_claim(g, Fraction(5, 3))
    n = g.n
    if n <= 1:
        return _empty(SpannerKind.DIAM53, claim, cfg)
    _, d_hat = diameter_2approx(g)
    alpha = alpha_for(n, d_hat)
    big = min(n, math.ceil(cfg.oversample_c * alpha * log2n(n)))
    small = min(n, math.ceil(n / alpha))
    rng = cfg.rng()
    a_pair = _dominating_pair(g, Fraction(2, 3), Fraction(1, 3), big, small, cfg, rng)
    b_pair = _dominating_pair(g, Fraction(1, 3), Fraction(2, 3), small, big, cfg, rng)
    a1, a2 = a_pair.s1, a_pair.s2
    b1, b2 = b_pair.s1, b_pair.s2

    edges = sssp(g, a2, Direction.IN).edge_ids()
    edges |= sssp(g, b1, Direction.OUT).edge_ids()
    edges |= union_tree_edges(g, a1 | b2)
    path_total = 0
    for u in sorted(a2):
        tree = sssp(g, [u], Direction.OUT)
        for v in sorted(b1):
            path = tree.path_edges(g, v)
            path_total += len(path)
            edges.update(path)
    audit = {
        "seed": cfg.seed,
        "edges": len(edges),
        "alpha": alpha,
        "diameter_estimate": d_hat,
        "sizes": {"A1": len(a1), "A2": len(a2), "B1": len(b1), "B2": len(b2)},
        "pair_a": a_pair.to_dict(),
        "pair_b": b_pair.to_dict(),
        "path_edges_total": path_total,
        "size_bound": 2 * n * len(a1 | b2) + 2 * n + path_total,
        "construction_time_s": time.perf_counter() - start,
    }
    if g.weighted:
        audit["experimental_weighted"] = True
    return SpannerResult(frozenset(edges), SpannerKind.DIAM53, claim, audit)


def tradeoff_spanner(
    g: DirectedGraph, p, r, n_p: int, n_r: int, cfg: SamplerConfig = SamplerConfig()
) -> SpannerResult:
    """Trees of ``S1`` (stretch ``1+p``) or of ``S2`` (stretch ``1+r``), whichever is certified."""
    start = time.perf_counter()
    p, r = as_fraction(p), as_fraction(r)
    require_strongly_connected(g)
    if g.n <= 1:
        res = _empty(SpannerKind.TRADEOFF, _diameter_claim(g, 1 + p), cfg)
        res.audit["branch"] = "H1"
        return res
    pair = _dominating_pair(g, p, r, n_p, n_r, cfg, cfg.rng())
    if pair.certificate.kind is CertKind.OUT_DOMINATES:
        branch, roots, claim = "H1", pair.s1, _diameter_claim(g, 1 + p)
    else:
        branch, roots, claim = "H2", pair.s2, _diameter_claim(g, 1 + r)
    edges = union_tree_edges(g, roots)
    audit = {
        "seed": cfg.seed,
        "edges": len(edges),
        "branch": branch,
        "roots": len(roots),
        "size_bound": 2 * g.n * len(roots),
        "pair": pair.to_dict(),
        "construction_time_s": time.perf_counter() - start,
    }
    return SpannerResult(frozenset(edges), SpannerKind.TRADEOFF, claim, audit)


def additive_spanner(
    g: DirectedGraph,
    d: int,
    cfg: SamplerConfig = SamplerConfig(),
    preserver: Optional[bool] = None,
) -> SpannerResult:
    """``diam(H) <= diam(G) + ceil(n/d)`` on unweighted graphs.

    ``preserver`` forces the pairwise-path branch (True) or the per-root
    out-tree branch (False); by default the sparser one for ``(n, d)`` is used.
    """
    start = time.perf_counter()
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if g.weighted:
        raise GraphError("additive spanner requires an unweighted graph")
    require_strongly_connected(g)
    n = g.n
    claim = StretchClaim(Fraction(1), math.ceil(n / d), True)
    if n <= 1:
        return _empty(SpannerKind.ADDITIVE, claim, cfg)
    lg = log2n(n)
    size = max(1, min(n, math.ceil(cfg.oversample_c * d * lg)))
    radius = math.ceil(n / (2 * d))
    rng = cfg.rng()
    if size < n:
        out_balls = [frozenset(closest_order(g, w, Direction.OUT)[:radius]) for w in range(n)]
        in_balls = [frozenset(closest_order(g, w, Direction.IN)[:radius]) for w in range(n)]
    for attempt in range(cfg.max_resamples):
        s = _sample(rng, range(n), size)
        if size >= n or all(s & b for b in out_balls) and all(s & b for b in in_balls):
            break
    else:
        raise ResampleLimitError(f"no {size}-sample hit every {radius}-ball")

    edges = sssp(g, s, Direction.IN).edge_ids() | sssp(g, s, Direction.OUT).edge_ids()
    use_preserver = (n ** (1 / 3) * lg > d * lg * lg) if preserver is None else preserver
    preserver_edges = 0
    for u in sorted(s):
        tree = sssp(g, [u], Direction.OUT)
        if use_preserver:
            for v in sorted(s):
                path = tree.path_edges(g, v)
                preserver_edges += len(path)
                edges.update(path)
        else:
            edges |= tree.edge_ids()
    audit = {
        "seed": cfg.seed,
        "edges": len(edges),
        "d": d,
        "sample_size": len(s),
        "ball_size": radius,
        "resamples": attempt,
        "branch": "preserver" if use_preserver else "out_trees",
        "construction_time_s": time.perf_counter() - start,
    }
    if use_preserver:
        audit["preserver"] = "naive: one shortest path per ordered pair of sampled vertices"
        audit["preserver_path_edges"] = preserver_edges
    return SpannerResult(frozenset(edges), SpannerKind.ADDITIVE, claim, audit)
