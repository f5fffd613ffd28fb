"""Randomized dominating set-pairs and their verification.

A pair ``(S1, S2)`` is ``<h1, h2>``-dominating when every vertex is within
``h1`` of ``S1`` (out-domination) or within ``h2`` of ``S2`` (in-domination).
The construction samples ``S1`` uniformly, anchors at the deepest vertex
``a`` of ``out-bfs(S1)``, and takes ``S2`` as the ``n_q`` closest incoming
vertices of ``a``; whenever ``S1`` misses ``S2`` it re-samples.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Optional

from .errors import ResampleLimitError, SamplingConstraintError
from .graph import (
    INF,
    DirectedGraph,
    Direction,
    closest_set,
    require_strongly_connected,
    sssp,
    tree_depth,
)


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    oversample_c: float = 8.0
    max_resamples: int = 64

    def __post_init__(self):
        if self.oversample_c < 1:
            raise ValueError(f"oversample_c must be >= 1, got {self.oversample_c}")
        if self.max_resamples < 1:
            raise ValueError(f"max_resamples must be >= 1, got {self.max_resamples}")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def log2n(n: int) -> float:
    return math.log2(n) if n > 1 else 0.0


def sampling_budget(n: int, c: float) -> int:
    """Smallest admissible ``n_p * n_q``: ``ceil(c * n * log2 n)``."""
    return math.ceil(c * n * log2n(n))


def balanced_size(n: int, c: float = 8.0) -> int:
    """``ceil(sqrt(c n log2 n))`` capped to ``[1, n]``."""
    return max(1, min(n, math.ceil(math.sqrt(c * n * log2n(n)))))


def check_sizes(n: int, n_p: int, n_q: int, cfg: SamplerConfig) -> None:
    if n_p < 1 or n_q < 1:
        raise SamplingConstraintError(f"sizes must be >= 1, got n_p={n_p}, n_q={n_q}")
    if n_p >= n or n_q >= n:
        # S = V, or N^in(v, n_q) = V: the hitting property is certain
        return
    need = sampling_budget(n, cfg.oversample_c)
    if n_p * n_q < need:
        raise SamplingConstraintError(
            f"n_p*n_q = {n_p * n_q} < ceil({cfg.oversample_c}*n*log2 n) = {need}"
        )


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Real):
        return Fraction(x).limit_denominator(10**6)
    return Fraction(x)


def sample_hitting_set(g: DirectedGraph, n_p: int, n_q: int, cfg: SamplerConfig) -> frozenset[int]:
    """Uniform ``n_p``-subset of V meant to hit every ``N^in(v, n_q)`` / ``N^out(v, n_q)``.

    The hitting property holds with high probability only; callers that need
    it verify it themselves.
    """
    check_sizes(g.n, n_p, n_q, cfg)
    return _sample(cfg.rng(), range(g.n), n_p)


def _sample(rng: random.Random, population, k: int) -> frozenset[int]:
    pop = sorted(population)
    return frozenset(rng.sample(pop, min(k, len(pop))))


class CertKind(enum.Enum):
    OUT_DOMINATES = "out_dominates"
    IN_DOMINATES = "in_dominates"


@dataclass(frozen=True)
class Certificate:
    kind: CertKind
    bound: int

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "bound": self.bound}


@dataclass(frozen=True)
class DominatingPair:
    s1: frozenset[int]
    s2: frozenset[int]
    anchor: int
    p: Fraction
    q: Fraction
    n_p: int
    n_q: int
    certificate: Certificate
    in_ecc_anchor: int
    out_depth: int
    resamples: int = 0
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "s1_size": len(self.s1),
            "s2_size": len(self.s2),
            "anchor": self.anchor,
            "p": str(self.p),
            "q": str(self.q),
            "n_p": self.n_p,
            "n_q": self.n_q,
            "certificate": self.certificate.to_dict(),
            "in_ecc_anchor": self.in_ecc_anchor,
            "out_depth": self.out_depth,
            "resamples": self.resamples,
            "seed": self.seed,
        }


def weight_slack(g: DirectedGraph) -> int:
    """Extra in-domination radius on weighted graphs (a boundary edge may cost up to W)."""
    return max(0, g.max_weight - 1) if g.weighted else 0


def deepest(dist, candidates=None) -> int:
    """Vertex of maximum finite depth, smallest id on ties."""
    pool = range(len(dist)) if candidates is None else candidates
    best, best_d = None, -1
    for v in sorted(pool):
        d = dist[v]
        if d != INF and d > best_d:
            best, best_d = v, d
    return best


def dominating_pair(
    g: DirectedGraph, p, q, n_p: int, n_q: int, cfg: SamplerConfig = SamplerConfig()
) -> DominatingPair:
    """Sample a ``<floor(p InEcc(a)), ceil(q InEcc(a))>``-dominating pair."""
    return _dominating_pair(g, p, q, n_p, n_q, cfg, cfg.rng())


def _dominating_pair(g, p, q, n_p, n_q, cfg, rng) -> DominatingPair:
    p, q = as_fraction(p), as_fraction(q)
    if p + q != 1 or not 0 < p < 1:
        raise ValueError(f"need p + q = 1 with 0 < p < 1, got p={p}, q={q}")
    n = g.n
    if n == 0:
        raise ValueError("empty graph")
    check_sizes(n, n_p, n_q, cfg)
    require_strongly_connected(g)
    if n == 1:
        only = frozenset({0})
        return DominatingPair(only, only, 0, p, q, n_p, n_q, Certificate(CertKind.OUT_DOMINATES, 0), 0, 0, 0, cfg.seed)

    for attempt in range(cfg.max_resamples):
        s1 = _sample(rng, range(n), n_p)
        out_tree = sssp(g, s1, Direction.OUT)
        a = deepest(out_tree.dist)
        s2 = closest_set(g, a, n_q, Direction.IN)
        if s1 & s2:
            break
    else:
        raise ResampleLimitError(f"S1 missed N^in(a, {n_q}) in {cfg.max_resamples} samples")

    out_depth = tree_depth(out_tree)
    ecc_a = tree_depth(sssp(g, [a], Direction.IN))
    h1 = math.floor(p * ecc_a)
    if out_depth <= h1:
        cert = Certificate(CertKind.OUT_DOMINATES, h1)
    else:
        cert = Certificate(CertKind.IN_DOMINATES, math.ceil(q * ecc_a) + weight_slack(g))
    return DominatingPair(s1, s2, a, p, q, n_p, n_q, cert, ecc_a, out_depth, attempt, cfg.seed)


@dataclass(frozen=True)
class DominationReport:
    out_depth: float
    in_depth: float
    in_ecc_anchor: float
    h1: Optional[int]
    h2: Optional[int]
    out_holds: bool
    in_holds: bool
    certificate_holds: bool
    ball_contained: bool
    sizes: tuple[int, int]
    certificate: Optional[Certificate] = None
    seed: Optional[int] = None
    notes: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.out_holds or self.in_holds

    def to_dict(self) -> dict:
        fin = lambda x: None if x == INF else x  # noqa: E731
        return {
            "sizes": {"s1": self.sizes[0], "s2": self.sizes[1]},
            "out_depth": fin(self.out_depth),
            "in_depth": fin(self.in_depth),
            "in_ecc_anchor": fin(self.in_ecc_anchor),
            "h1": self.h1,
            "h2": self.h2,
            "out_holds": self.out_holds,
            "in_holds": self.in_holds,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "certificate_holds": self.certificate_holds,
            "ball_contained": self.ball_contained,
            "holds": self.holds,
            "seed": self.seed,
        }


def verify_domination(g: DirectedGraph, pair, slack=0) -> DominationReport:
    """Recompute both super-source trees and test the two domination conditions.

    Thresholds are ``floor((p + slack) InEcc(a))`` and
    ``ceil((q + slack) InEcc(a))``; ``slack`` covers the lazily-updated
    dynamic pairs. The stored certificate is checked, never trusted.
    """
    slack = as_fraction(slack)
    out_depth = max(sssp(g, pair.s1, Direction.OUT).dist, default=0)
    in_depth = max(sssp(g, pair.s2, Direction.IN).dist, default=0)
    anchor_tree = sssp(g, [pair.anchor], Direction.IN)
    ecc_a = max(anchor_tree.dist, default=0)
    notes = []
    if ecc_a == INF:
        h1 = h2 = None
        out_holds = in_holds = False
        ball_ok = False
        notes.append("anchor in-tree does not reach every vertex")
    else:
        h1 = math.floor((pair.p + slack) * ecc_a)
        h2 = math.ceil((pair.q + slack) * ecc_a) + weight_slack(g)
        out_holds = out_depth <= h1
        in_holds = in_depth <= h2
        base = math.floor(pair.p * ecc_a)
        if out_depth > base:
            ball = {v for v in range(g.n) if anchor_tree.dist[v] <= base}
            ball_ok = ball <= pair.s2
        else:
            ball_ok = True
    cert = getattr(pair, "certificate", None)
    if cert is None:
        cert_ok = out_holds or in_holds
    elif cert.kind is CertKind.OUT_DOMINATES:
        cert_ok = out_depth <= cert.bound
    else:
        cert_ok = in_depth <= cert.bound
    return DominationReport(
        out_depth,
        in_depth,
        ecc_a,
        h1,
        h2,
        out_holds,
        in_holds,
        cert_ok,
        ball_ok,
        (len(pair.s1), len(pair.s2)),
        cert,
        getattr(pair, "seed", None),
        notes,
    )
