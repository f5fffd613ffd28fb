"""Graph generators: the three lower-bound families and random test digraphs.

Lower-bound families are fully deterministic. Vertex ids are assigned class
by class (A, B, C, D) in lexicographic index order; ``landmarks`` maps the
canonical name of every vertex (``"a:k:i"``, ``"b:i"``, ``"c:k:i:j"``, ...)
to its id. Indices are 1-based as in the constructions, layer ``k`` of the
5/3 family is 0-based.
"""

from __future__ import annotations

import enum
import random
import warnings
from dataclasses import dataclass
from typing import Optional

from .graph import DirectedGraph, build_graph

DEFAULT_EDGE_BUDGET = 200_000


class Family(enum.Enum):
    LB15 = "lb15"
    LBECC = "lbecc"
    LB53 = "lb53"


@dataclass(frozen=True)
class LbGraph:
    graph: DirectedGraph
    family: Family
    t: int
    N: int
    landmarks: dict

    def __getitem__(self, name: str) -> int:
        return self.landmarks[name]

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "t": self.t,
            "N": self.N,
            "n": self.graph.n,
            "m": self.graph.m,
            "landmarks": self.landmarks,
        }


def _check(t: int, N: int) -> None:
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")


def _budget(m: int, budget: Optional[int], family: str) -> None:
    if budget is not None and m > budget:
        warnings.warn(f"{family} generator produced {m} edges (budget {budget})", stacklevel=3)


def lb15_edge_count(t: int, N: int) -> int:
    # A chains + B x C + D chains + (B ∪ C ∪ D) -> every a_{1,i}
    return t * N + N * N + t * N + (2 * N + t * N) * N


def gen_lb15(t: int, N: int, edge_budget: Optional[int] = DEFAULT_EDGE_BUDGET) -> LbGraph:
    """Diameter-``2t+2`` graph where every ``B x C`` edge is needed below stretch ``3t+2``."""
    _check(t, N)
    ids: dict[str, int] = {}
    for k in range(1, t + 1):
        for i in range(1, N + 1):
            ids[f"a:{k}:{i}"] = len(ids)
    for i in range(1, N + 1):
        ids[f"b:{i}"] = len(ids)
    for j in range(1, N + 1):
        ids[f"c:{j}"] = len(ids)
    for k in range(1, t + 1):
        for j in range(1, N + 1):
            ids[f"d:{k}:{j}"] = len(ids)

    edges = []
    for i in range(1, N + 1):
        for k in range(1, t):
            edges.append((ids[f"a:{k}:{i}"], ids[f"a:{k + 1}:{i}"]))
        edges.append((ids[f"a:{t}:{i}"], ids[f"b:{i}"]))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            edges.append((ids[f"b:{i}"], ids[f"c:{j}"]))
    for j in range(1, N + 1):
        edges.append((ids[f"c:{j}"], ids[f"d:1:{j}"]))
        for k in range(2, t + 1):
            edges.append((ids[f"d:{k - 1}:{j}"], ids[f"d:{k}:{j}"]))
    heads = [ids[f"a:1:{i}"] for i in range(1, N + 1)]
    tails = [v for name, v in ids.items() if not name.startswith("a:")]
    for x in tails:
        for h in heads:
            edges.append((x, h))
    g = build_graph(len(ids), edges)
    _budget(g.m, edge_budget, "lb15")
    return LbGraph(g, Family.LB15, t, N, ids)


def gen_lb_ecc(t: int, N: int, edge_budget: Optional[int] = DEFAULT_EDGE_BUDGET) -> LbGraph:
    """Same graph as :func:`gen_lb15`; the landmark set of interest is ``B``."""
    base = gen_lb15(t, N, edge_budget)
    return LbGraph(base.graph, Family.LBECC, t, N, base.landmarks)


def lb53_edge_count(t: int, N: int) -> int:
    sq = N * N
    chains = 3 * t * sq
    rule_iv = sq * N  # a_t,i,j -> b_0,*,j
    rule_v = sq * N  # b_t,i,j -> c_0,i,*
    rule_vi = sq * N  # a_t,i,j -> a_0,*,j
    cross = 2 * N - 1  # (i', j') sharing a row or column with (i, j)
    rule_vii = sq * cross
    rule_viii = (sq + (t + 1) * sq) * cross
    return chains + rule_iv + rule_v + rule_vi + rule_vii + rule_viii


def gen_lb53(t: int, N: int, edge_budget: Optional[int] = DEFAULT_EDGE_BUDGET) -> LbGraph:
    """Diameter-``3t+3`` graph whose sparse ``5t+1``-spanners do not exist."""
    _check(t, N)
    idx = range(1, N + 1)
    ids: dict[str, int] = {}
    for cls in "abc":
        for k in range(t + 1):
            for i in idx:
                for j in idx:
                    ids[f"{cls}:{k}:{i}:{j}"] = len(ids)

    def v(cls, k, i, j):
        return ids[f"{cls}:{k}:{i}:{j}"]

    edges = []
    for cls in "abc":
        for k in range(t):
            for i in idx:
                for j in idx:
                    edges.append((v(cls, k, i, j), v(cls, k + 1, i, j)))
    for i in idx:
        for j in idx:
            at, bt = v("a", t, i, j), v("b", t, i, j)
            for i2 in idx:
                edges.append((at, v("b", 0, i2, j)))  # (iv)
                edges.append((at, v("a", 0, i2, j)))  # (vi)
            for j2 in idx:
                edges.append((bt, v("c", 0, i, j2)))  # (v)
            for i2 in idx:
                for j2 in idx:
                    if i2 == i or j2 == j:
                        edges.append((bt, v("b", 0, i2, j2)))  # (vii)
    sources = [v("b", t, i, j) for i in idx for j in idx]
    sources += [v("c", k, i, j) for k in range(t + 1) for i in idx for j in idx]
    names = {vid: name for name, vid in ids.items()}
    for x in sources:
        _, _, xi, xj = names[x].split(":")
        xi, xj = int(xi), int(xj)
        for i2 in idx:
            for j2 in idx:
                if i2 == xi or j2 == xj:
                    edges.append((x, v("a", 0, i2, j2)))  # (viii)
    g = build_graph(len(ids), edges)
    _budget(g.m, edge_budget, "lb53")
    return LbGraph(g, Family.LB53, t, N, ids)


def lb53_deletion(lb: LbGraph, ix: int, jx: int, iy: int, jy: int) -> tuple[list[int], int, int]:
    """Edge ids of the deleted triple, plus the endpoints ``x = a_0,ix,jx`` and ``y = c_t,iy,jy``."""
    if lb.family is not Family.LB53:
        raise ValueError("triple deletion is defined on the lb53 family")
    if ix == iy or jx == jy:
        raise ValueError("need ix != iy and jx != jy")
    t = lb.t
    g = lb.graph
    pairs = [
        (lb[f"a:{t}:{ix}:{jx}"], lb[f"b:0:{iy}:{jx}"]),
        (lb[f"a:{t}:{ix}:{jx}"], lb[f"a:0:{iy}:{jx}"]),
        (lb[f"b:{t}:{iy}:{jx}"], lb[f"c:0:{iy}:{jy}"]),
    ]
    return [g.edge_id(u, w) for u, w in pairs], lb[f"a:0:{ix}:{jx}"], lb[f"c:{t}:{iy}:{jy}"]


GENERATORS = {Family.LB15: gen_lb15, Family.LBECC: gen_lb_ecc, Family.LB53: gen_lb53}


def generate(family, t: int, N: int, edge_budget: Optional[int] = DEFAULT_EDGE_BUDGET) -> LbGraph:
    return GENERATORS[Family(family)](t, N, edge_budget)


def random_strongly_connected(
    n: int, m: int, seed: int = 0, max_weight: int = 1
) -> DirectedGraph:
    """Random digraph on a shuffled Hamiltonian cycle plus ``m - n`` random chords.

    ``max_weight > 1`` draws integer weights uniformly from ``[1, max_weight]``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return build_graph(1, [])
    m = max(n, min(m, n * (n - 1)))
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
    while len(pairs) < m:
        u = rng.randrange(n)
        w = rng.randrange(n - 1)
        w += w >= u
        pairs.add((u, w))
    edges = sorted(pairs)
    if max_weight > 1:
        return build_graph(n, [(u, w, rng.randint(1, max_weight)) for u, w in edges])
    return build_graph(n, edges)
