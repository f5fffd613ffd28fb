"""Immutable directed graphs and exact shortest-path primitives.

Everything downstream (dominating pairs, spanners, eccentricity sets) is built
from three queries on a :class:`DirectedGraph`: super-source shortest-path
trees in either direction, the ``l`` closest vertices to/from a vertex, and a
cheap 2-approximation of the diameter.
"""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import GraphError, NotStronglyConnectedError

INF = math.inf


class Direction(enum.Enum):
    OUT = "out"
    IN = "in"


class DirectedGraph:
    """Directed graph on vertices ``0..n-1`` with CSR adjacency both ways.

    Edge ids index ``edges``, which is sorted by ``(u, v)``; parallel edges
    are collapsed at build time, so ``(u, v)`` identifies an edge uniquely.
    Instances are immutable; use :func:`build_graph` to construct one.
    """

    __slots__ = (
        "n",
        "edges",
        "src",
        "dst",
        "wt",
        "out_offsets",
        "out_edges",
        "in_offsets",
        "in_edges",
        "_out",
        "_in",
        "_index",
        "weighted",
        "max_weight",
    )

    def __init__(self, n: int, edges: Sequence[tuple[int, int, int]]):
        # edges must already be validated, deduplicated and sorted by (u, v)
        self.n = n
        self.edges = tuple(edges)
        self.src = tuple(e[0] for e in self.edges)
        self.dst = tuple(e[1] for e in self.edges)
        self.wt = tuple(e[2] for e in self.edges)
        self.weighted = any(w != 1 for w in self.wt)
        self.max_weight = max(self.wt, default=0)

        out_lists: list[list[int]] = [[] for _ in range(n)]
        in_lists: list[list[int]] = [[] for _ in range(n)]
        for eid, (u, v, _) in enumerate(self.edges):
            out_lists[u].append(eid)
        for eid in sorted(range(len(self.edges)), key=lambda e: (self.dst[e], self.src[e])):
            in_lists[self.dst[eid]].append(eid)
        self._out = tuple(tuple(x) for x in out_lists)
        self._in = tuple(tuple(x) for x in in_lists)
        self.out_offsets, self.out_edges = _csr(self._out)
        self.in_offsets, self.in_edges = _csr(self._in)
        self._index = {(u, v): eid for eid, (u, v, _) in enumerate(self.edges)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def out_edge_ids(self, u: int) -> tuple[int, ...]:
        return self._out[u]

    def in_edge_ids(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def edge_id(self, u: int, v: int) -> Optional[int]:
        return self._index.get((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def subgraph(self, edge_ids: Iterable[int]) -> "DirectedGraph":
        """Spanning subgraph keeping only ``edge_ids`` (renumbered)."""
        keep = sorted(set(edge_ids))
        return DirectedGraph(self.n, [self.edges[e] for e in keep])

    def __repr__(self) -> str:
        kind = "weighted" if self.weighted else "unweighted"
        return f"DirectedGraph(n={self.n}, m={self.m}, {kind})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


def _csr(lists: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    offsets = [0]
    flat: list[int] = []
    for row in lists:
        flat.extend(row)
        offsets.append(len(flat))
    return tuple(offsets), tuple(flat)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> DirectedGraph:
    """Validate ``(u, v[, w])`` triples and build a :class:`DirectedGraph`.

    Parallel edges collapse to their minimum weight. Weights must be
    non-negative integers; a missing weight means 1.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise GraphError(f"vertex count must be a non-negative int, got {n!r}")
    best: dict[tuple[int, int], int] = {}
    for item in edge_list:
        if len(item) == 2:
            u, v = item
            w = 1
        elif len(item) == 3:
            u, v, w = item
        else:
            raise GraphError(f"edge must be (u, v) or (u, v, w), got {item!r}")
        for x in (u, v):
            if isinstance(x, bool) or not isinstance(x, int):
                raise GraphError(f"vertex id must be int, got {x!r}")
            if not 0 <= x < n:
                raise GraphError(f"endpoint {x} out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if isinstance(w, bool) or not isinstance(w, int):
            raise GraphError(f"weight must be an int, got {w!r}")
        if w < 0:
            raise GraphError(f"negative weight {w} on ({u}, {v})")
        key = (u, v)
        if key not in best or w < best[key]:
            best[key] = w
    return DirectedGraph(n, [(u, v, w) for (u, v), w in sorted(best.items())])


@dataclass(frozen=True)
class ShortestPathTree:
    """Single-source or super-source shortest-path tree.

    ``parent[v]`` is the id of the tree edge joining ``v`` to the vertex one
    step closer to the roots (for IN trees that edge leaves ``v``).
    """

    roots: frozenset[int]
    direction: Direction
    dist: tuple
    parent: tuple
    depth_limit: Optional[float] = None

    def reached(self, v: int) -> bool:
        return self.dist[v] != INF

    def depth(self) -> int:
        return tree_depth(self)

    def depth_of(self, vertices: Iterable[int]) -> float:
        return max((self.dist[v] for v in vertices), default=0)

    def edge_ids(self) -> set[int]:
        return {e for e in self.parent if e is not None}

    def path_edges(self, g: DirectedGraph, v: int) -> list[int]:
        """Tree edges between the roots and ``v``, in edge-direction order."""
        if self.dist[v] == INF:
            raise NotStronglyConnectedError(f"vertex {v} not reached")
        out = []
        x = v
        step = g.src if self.direction is Direction.OUT else g.dst
        while self.parent[x] is not None:
            e = self.parent[x]
            out.append(e)
            x = step[e]
        if self.direction is Direction.OUT:
            out.reverse()
        return out


def sssp(
    g: DirectedGraph,
    roots: Iterable[int],
    direction: Direction = Direction.OUT,
    depth_limit: Optional[float] = None,
) -> ShortestPathTree:
    """Exact distances from (OUT) or to (IN) a contracted root set.

    BFS for unit weights, Dijkstra otherwise. Parents are tie-broken to the
    smallest edge id among the tight edges. Vertices farther than
    ``depth_limit`` are left unreached.
    """
    root_set = frozenset(roots)
    if not root_set:
        raise ValueError("sssp needs at least one root")
    for r in root_set:
        if not 0 <= r < g.n:
            raise GraphError(f"root {r} out of range for n={g.n}")
    if g.weighted:
        dist, parent = _dijkstra(g, root_set, direction, depth_limit)
    else:
        dist, parent = _bfs(g, root_set, direction, depth_limit)
    return ShortestPathTree(root_set, direction, tuple(dist), tuple(parent), depth_limit)


def _bfs(g, roots, direction, limit):
    n = g.n
    dist = [INF] * n
    parent: list = [None] * n
    if direction is Direction.OUT:
        adj, other = g._out, g.dst
    else:
        adj, other = g._in, g.src
    frontier = sorted(roots)
    for r in frontier:
        dist[r] = 0
    level = 0
    while frontier:
        nl = level + 1
        if limit is not None and nl > limit:
            break
        nxt = []
        for u in frontier:
            for e in adj[u]:
                v = other[e]
                dv = dist[v]
                if dv == INF:
                    dist[v] = nl
                    parent[v] = e
                    nxt.append(v)
                elif dv == nl and e < parent[v]:
                    parent[v] = e
        frontier = nxt
        level = nl
    return dist, parent


def _dijkstra(g, roots, direction, limit):
    n = g.n
    dist = [INF] * n
    parent: list = [None] * n
    done = [False] * n
    if direction is Direction.OUT:
        adj, other, radj, back = g._out, g.dst, g._in, g.src
    else:
        adj, other, radj, back = g._in, g.src, g._out, g.dst
    wt = g.wt
    heap = []
    for r in sorted(roots):
        dist[r] = 0
        heap.append((0, r))
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u] or d > dist[u]:
            continue
        if limit is not None and d > limit:
            break
        if u not in roots:
            # tight edge from an already-settled vertex; keeps zero-weight ties acyclic
            best = None
            for e in radj[u]:
                x = back[e]
                if done[x] and dist[x] + wt[e] == d and (best is None or e < best):
                    best = e
            parent[u] = best
        done[u] = True
        for e in adj[u]:
            v = other[e]
            nd = d + wt[e]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    for v in range(n):
        if not done[v]:
            dist[v] = INF
    return dist, parent


def tree_depth(t: ShortestPathTree) -> int:
    """Largest distance in ``t``; every vertex must be reached."""
    worst = max(t.dist, default=0)
    if worst == INF:
        missing = sum(1 for d in t.dist if d == INF)
        raise NotStronglyConnectedError(
            f"{missing} vertices unreachable in {t.direction.value}-tree from {sorted(t.roots)[:5]}"
        )
    return worst


def closest_order(g: DirectedGraph, x: int, direction: Direction) -> list[int]:
    """All vertices reachable from/to ``x`` sorted by (distance, id)."""
    t = sssp(g, [x], direction)
    dist = t.dist
    return sorted((v for v in range(g.n) if dist[v] != INF), key=lambda v: (dist[v], v))


def closest_set(g: DirectedGraph, x: int, ell: int, direction: Direction) -> frozenset[int]:
    """The ``ell`` closest vertices to/from ``x``, including ``x`` itself."""
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    return frozenset(closest_order(g, x, direction)[:ell])


def out_ecc(g: DirectedGraph, v: int) -> int:
    return tree_depth(sssp(g, [v], Direction.OUT))


def in_ecc(g: DirectedGraph, v: int) -> int:
    return tree_depth(sssp(g, [v], Direction.IN))


def is_strongly_connected(g: DirectedGraph) -> bool:
    if g.n <= 1:
        return True
    for direction in Direction:
        if INF in sssp(g, [0], direction).dist:
            return False
    return True


def require_strongly_connected(g: DirectedGraph) -> None:
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("graph is not strongly connected")


def diameter_2approx(g: DirectedGraph) -> tuple[int, int]:
    """``(lower, upper)`` with ``lower <= diam(g) <= upper <= 2 diam(g)``.

    Uses the in- and out-trees of vertex 0.
    """
    if g.n == 0:
        return 0, 0
    din = tree_depth(sssp(g, [0], Direction.IN))
    dout = tree_depth(sssp(g, [0], Direction.OUT))
    return max(din, dout), din + dout


def union_tree_edges(g: DirectedGraph, roots: Iterable[int]) -> set[int]:
    """Edges of ``in-bfs(s)`` and ``out-bfs(s)`` for every ``s`` in ``roots``."""
    edges: set[int] = set()
    for s in sorted(set(roots)):
        edges |= sssp(g, [s], Direction.OUT).edge_ids()
        edges |= sssp(g, [s], Direction.IN).edge_ids()
    return edges
