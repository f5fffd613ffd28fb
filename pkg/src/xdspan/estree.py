"""Even–Shiloach trees over a mutable unweighted digraph.

An :class:`EsTree` keeps the first ``level_cap`` BFS levels from a root set
exact under insertions only or deletions only. Deletions use per-vertex scan
cursors over a frozen predecessor list, so each vertex rescans its
predecessors at most once per level; insertions relax forward. ``work``
counts predecessor/successor inspections made by updates.
"""

from __future__ import annotations

import enum
import heapq
import math
from collections import deque
from typing import Iterable, Optional

from .errors import GraphError, StreamModeError
from .graph import DirectedGraph, Direction, build_graph

INF = math.inf


class Mode(enum.Enum):
    INCREMENTAL = "insert"
    DECREMENTAL = "delete"


class DynamicGraph:
    """Unweighted digraph with set adjacency, mutated one edge at a time."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.n = n
        self.out_adj: list[set[int]] = [set() for _ in range(n)]
        self.in_adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0
        for u, v in edges:
            self.insert(u, v)

    @classmethod
    def from_graph(cls, g: DirectedGraph) -> "DynamicGraph":
        if g.weighted:
            raise GraphError("dynamic algorithms take unweighted graphs only")
        return cls(g.n, [(u, v) for u, v, _ in g.edges])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.out_adj[u]

    def insert(self, u: int, v: int) -> None:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"bad edge ({u}, {v})")
        if v in self.out_adj[u]:
            raise StreamModeError(f"edge ({u}, {v}) already present")
        self.out_adj[u].add(v)
        self.in_adj[v].add(u)
        self.m += 1

    def delete(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n) or v not in self.out_adj[u]:
            raise StreamModeError(f"edge ({u}, {v}) not present")
        self.out_adj[u].discard(v)
        self.in_adj[v].discard(u)
        self.m -= 1

    def apply(self, op: tuple[int, int], mode: Mode) -> None:
        if mode is Mode.INCREMENTAL:
            self.insert(*op)
        else:
            self.delete(*op)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.out_adj[u])

    def snapshot(self) -> DirectedGraph:
        return build_graph(self.n, self.edges())

    def adjacency(self, direction: Direction) -> tuple[list[set[int]], list[set[int]]]:
        """``(preds, succs)`` in tree orientation for ``direction``."""
        if direction is Direction.OUT:
            return self.in_adj, self.out_adj
        return self.out_adj, self.in_adj


def bfs_dist(graph: DynamicGraph, roots: Iterable[int], direction: Direction) -> list:
    """Plain BFS distances on the current state of ``graph``."""
    _, succs = graph.adjacency(direction)
    dist = [INF] * graph.n
    queue = sorted(set(roots))
    for r in queue:
        dist[r] = 0
    for u in queue:
        du = dist[u] + 1
        for v in succs[u]:
            if dist[v] == INF:
                dist[v] = du
                queue.append(v)
    return dist


def closest_in(graph: DynamicGraph, x: int, ell: int) -> frozenset[int]:
    """``N^in(x, ell)`` on the current graph, ties by vertex id."""
    dist = bfs_dist(graph, [x], Direction.IN)
    order = sorted((v for v in range(graph.n) if dist[v] != INF), key=lambda v: (dist[v], v))
    return frozenset(order[:ell])


class EsTree:
    def __init__(
        self,
        graph: DynamicGraph,
        roots: Iterable[int],
        direction: Direction,
        mode: Mode,
        level_cap: Optional[int] = None,
    ):
        self.graph = graph
        self.roots = frozenset(roots)
        if not self.roots:
            raise ValueError("EsTree needs at least one root")
        self.direction = direction
        self.mode = mode
        self.cap = graph.n if level_cap is None else level_cap
        self.work = 0
        self.updates = 0
        self._preds, self._succs = graph.adjacency(direction)
        self._build()

    def _build(self) -> None:
        n = self.graph.n
        cap = self.cap
        dist = [INF] * n
        parent: list = [None] * n
        queue = sorted(self.roots)
        for r in queue:
            dist[r] = 0
        for u in queue:
            du = dist[u] + 1
            if du > cap:
                break
            for v in self._succs[u]:
                if dist[v] == INF:
                    dist[v] = du
                    queue.append(v)
        # parent = first tight predecessor in id order, which is where the scan cursor starts
        scan = [sorted(self._preds[v]) for v in range(n)]
        cursor = [0] * n
        for v in range(n):
            if dist[v] == INF or dist[v] == 0:
                continue
            want = dist[v] - 1
            for i, w in enumerate(scan[v]):
                if dist[w] == want:
                    parent[v], cursor[v] = w, i
                    break
        self.dist = dist
        self.parent = parent
        self._count = [0] * (cap + 2)
        self._unreached = 0
        top = 0
        for d in dist:
            if d == INF:
                self._unreached += 1
            else:
                self._count[d] += 1
                top = max(top, d)
        self._top = top
        if self.mode is Mode.DECREMENTAL:
            self._scan, self._cursor = scan, cursor

    # queries

    def depth(self) -> float:
        """Depth of the tree; infinite while some vertex is beyond the cap or unreachable."""
        if self._unreached:
            return INF
        top = self._top
        while top > 0 and self._count[top] == 0:
            top -= 1
        self._top = top
        return top

    def tree_edges(self) -> set[tuple[int, int]]:
        if self.direction is Direction.OUT:
            return {(p, v) for v, p in enumerate(self.parent) if p is not None}
        return {(v, p) for v, p in enumerate(self.parent) if p is not None}

    def path_to_root(self, v: int) -> list[tuple[int, int]]:
        """Tree edges joining ``v`` and the roots, as graph edges."""
        out = []
        x = v
        while self.parent[x] is not None:
            p = self.parent[x]
            out.append((p, x) if self.direction is Direction.OUT else (x, p))
            x = p
        if self.dist[x] != 0:
            raise ValueError(f"vertex {v} not reached")
        return out

    # updates

    def update(self, op: tuple[int, int]) -> None:
        """Absorb an edge change that has already been applied to the graph."""
        u, v = op
        if self.direction is Direction.OUT:
            p, c = u, v
        else:
            p, c = v, u
        self.updates += 1
        if self.mode is Mode.DECREMENTAL:
            if self.graph.has_edge(u, v):
                raise StreamModeError(f"decremental tree told about live edge ({u}, {v})")
            if self.parent[c] == p:
                self._repair(c)
        else:
            if not self.graph.has_edge(u, v):
                raise StreamModeError(f"incremental tree told about missing edge ({u}, {v})")
            self._relax(p, c)

    def _set_level(self, x: int, new) -> None:
        old = self.dist[x]
        if old == INF:
            self._unreached -= 1
        else:
            self._count[old] -= 1
        if new == INF:
            self._unreached += 1
        else:
            self._count[new] += 1
            if new > self._top:
                self._top = new
        self.dist[x] = new

    def _repair(self, start: int) -> None:
        dist, parent = self.dist, self.parent
        preds, succs = self._preds, self._succs
        scan, cursor = self._scan, self._cursor
        roots = self.roots
        heap = [(dist[start], start)]
        while heap:
            _, x = heapq.heappop(heap)
            if x in roots or dist[x] == INF:
                continue
            p = parent[x]
            if p is not None and p in preds[x] and dist[p] == dist[x] - 1:
                continue
            lst = scan[x]
            i = cursor[x]
            while True:
                want = dist[x] - 1
                found = None
                while i < len(lst):
                    w = lst[i]
                    self.work += 1
                    if dist[w] == want and w in preds[x]:
                        found = w
                        break
                    i += 1
                if found is not None:
                    parent[x] = found
                    cursor[x] = i
                    break
                # no predecessor one level up: x drops a level, its children must recheck
                nl = dist[x] + 1
                i = 0
                if nl > self.cap:
                    self._set_level(x, INF)
                    parent[x] = None
                else:
                    self._set_level(x, nl)
                for y in succs[x]:
                    self.work += 1
                    if parent[y] == x:
                        heapq.heappush(heap, (dist[y], y))
                if nl > self.cap:
                    break

    def _relax(self, p: int, c: int) -> None:
        dist, parent = self.dist, self.parent
        nd = dist[p] + 1
        if nd >= dist[c] or nd > self.cap:
            return
        self._set_level(c, nd)
        parent[c] = p
        queue = deque([c])
        succs = self._succs
        while queue:
            x = queue.popleft()
            nd = dist[x] + 1
            if nd > self.cap:
                continue
            for y in succs[x]:
                self.work += 1
                if nd < dist[y]:
                    self._set_level(y, nd)
                    parent[y] = x
                    queue.append(y)


def es_tree_update(tree: EsTree, op) -> EsTree:
    """Apply ``(u, v)`` or a signed ``("+"|"-", u, v)`` update; a sign against the tree's mode is rejected.

    The edge change must already be reflected in ``tree.graph``.
    """
    if len(op) == 3:
        sign, u, v = op
        want = "+" if tree.mode is Mode.INCREMENTAL else "-"
        if sign != want:
            raise StreamModeError(f"'{sign}' update on a {tree.mode.value}-only tree")
        op = (u, v)
    tree.update(op)
    return tree
