"""Brute-force ground truth: all-pairs distances and spanner audits.

Deliberately naive and independent of :mod:`xdspan.graph`'s tree code: it
reads only ``g.n`` and ``g.edges`` and runs its own BFS/Dijkstra per source.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Optional

from .errors import OracleCapError
from .graph import DirectedGraph

if TYPE_CHECKING:
    from .spanners import SpannerResult

INF = math.inf
DEFAULT_CAP = 2000


@dataclass(frozen=True)
class ExactMetrics:
    apd: tuple  # apd[u][v] = d(u, v)
    diameter: float
    radius: float
    out_ecc: tuple
    in_ecc: tuple
    center: Optional[int]

    @property
    def n(self) -> int:
        return len(self.apd)

    @property
    def strongly_connected(self) -> bool:
        return self.diameter != INF


def _single_source(n, adj, s, weighted):
    dist = [INF] * n
    dist[s] = 0
    if not weighted:
        queue = [s]
        for u in queue:
            du = dist[u] + 1
            for v, _ in adj[u]:
                if dist[v] == INF:
                    dist[v] = du
                    queue.append(v)
        return dist
    heap = [(0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            if d + w < dist[v]:
                dist[v] = d + w
                heapq.heappush(heap, (d + w, v))
    return dist


def exact_metrics(g: DirectedGraph, cap: Optional[int] = DEFAULT_CAP) -> ExactMetrics:
    """All-pairs distances by one search per source. ``cap=None`` disables the size guard."""
    n = g.n
    if cap is not None and n > cap:
        raise OracleCapError(f"n={n} exceeds oracle cap {cap}")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    weighted = False
    for u, v, w in g.edges:
        adj[u].append((v, w))
        weighted = weighted or w != 1
    apd = tuple(tuple(_single_source(n, adj, s, weighted)) for s in range(n))
    out_ecc = tuple(max(row, default=0) for row in apd)
    in_ecc = tuple(max((apd[u][v] for u in range(n)), default=0) for v in range(n))
    diameter = max(out_ecc, default=0)
    radius = min(out_ecc, default=0)
    center = min(range(n), key=lambda v: (out_ecc[v], v)) if n else None
    return ExactMetrics(apd, diameter, radius, out_ecc, in_ecc, center)


def _ratio(num: float, den: float) -> float:
    if num == INF:
        return INF
    if den == 0:
        return 1.0 if num == 0 else INF
    return num / den


def _finite(x):
    return None if x == INF else x


def audit_spanner(
    g: DirectedGraph,
    h: "SpannerResult",
    cap: Optional[int] = DEFAULT_CAP,
    g_metrics: Optional[ExactMetrics] = None,
) -> dict:
    """Exact stretch of spanner ``h`` against its own claim.

    The report carries realized diameter/radius stretch, the worst per-vertex
    out-eccentricity ratio, edge counts, and ``passed``. A spanner that is not
    strongly connected gets infinite stretch and fails.
    """
    gm = g_metrics if g_metrics is not None else exact_metrics(g, cap)
    sub = g.subgraph(h.edges)
    hm = exact_metrics(sub, cap)
    claim = h.stretch_claim
    diam_bound = claim.bound(gm.diameter) if gm.diameter != INF else INF
    ecc_ratios = [_ratio(hm.out_ecc[v], gm.out_ecc[v]) for v in range(g.n)]
    if claim.metric == "eccentricity":
        passed = all(hm.out_ecc[v] <= claim.bound(gm.out_ecc[v]) for v in range(g.n))
        passed = passed and hm.radius <= claim.bound(gm.radius)
    else:
        passed = hm.diameter <= diam_bound
    return {
        "kind": h.kind.value,
        "claim": claim.to_dict(),
        "n": g.n,
        "edges_g": g.m,
        "edges_h": sub.m,
        "diameter_g": _finite(gm.diameter),
        "diameter_h": _finite(hm.diameter),
        "diameter_bound": _finite(diam_bound) if not isinstance(diam_bound, Fraction) else float(diam_bound),
        "radius_g": _finite(gm.radius),
        "radius_h": _finite(hm.radius),
        "diameter_stretch": _finite(_ratio(hm.diameter, gm.diameter)),
        "radius_stretch": _finite(_ratio(hm.radius, gm.radius)),
        "max_ecc_ratio": _finite(max(ecc_ratios, default=1.0)),
        "passed": bool(passed),
    }
