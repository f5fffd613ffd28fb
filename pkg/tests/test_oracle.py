from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from helpers import INF, bf_all_pairs, cycle, digraphs, strong_graphs
from xdspan.errors import OracleCapError
from xdspan.graph import build_graph
from xdspan.lbgen import random_strongly_connected
from xdspan.oracle import audit_spanner, exact_metrics
from xdspan.spanners import SpannerKind, SpannerResult, StretchClaim


def floyd_warshall(g):
    d = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(d, 0)
    for u, v, w in g.edges:
        d[u, v] = min(d[u, v], w)
    for k in range(g.n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


@pytest.mark.parametrize("n,m,seed,w", [(30, 90, 1, 1), (120, 600, 2, 1), (200, 1000, 3, 1), (80, 300, 4, 9)])
def test_apsp_matches_floyd_warshall(n, m, seed, w):
    g = random_strongly_connected(n, m, seed, max_weight=w)
    em = exact_metrics(g)
    assert np.array_equal(np.array(em.apd, dtype=float), floyd_warshall(g))


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=8, weighted=True))
def test_metrics_match_bellman_ford(g):
    em = exact_metrics(g)
    apd = bf_all_pairs(g)
    assert [list(r) for r in em.apd] == apd
    assert em.out_ecc == tuple(max(r) for r in apd)
    assert em.in_ecc == tuple(max(apd[u][v] for u in range(g.n)) for v in range(g.n))
    assert em.diameter == max(em.out_ecc)
    assert em.radius == min(em.out_ecc)
    assert em.strongly_connected == (em.diameter != INF)


def test_cycle_twenty():
    em = exact_metrics(cycle(20))
    assert em.diameter == 19 and em.radius == 19


def test_cap():
    with pytest.raises(OracleCapError):
        exact_metrics(cycle(10), cap=5)
    assert exact_metrics(cycle(10), cap=None).diameter == 9


def _result(g, edges, claim):
    return SpannerResult(frozenset(edges), SpannerKind.DIAM15, claim)


def test_audit_rejects_broken_spanner():
    g = cycle(5)
    rep = audit_spanner(g, _result(g, [0, 1, 2, 3], StretchClaim(Fraction(3, 2))))
    assert not rep["passed"]
    assert rep["diameter_h"] is None


def test_audit_accepts_whole_graph():
    g = random_strongly_connected(20, 60, 0)
    rep = audit_spanner(g, _result(g, range(g.m), StretchClaim(Fraction(1))))
    assert rep["passed"] and rep["diameter_stretch"] == 1.0 and rep["edges_h"] == g.m


def test_audit_is_exact_at_the_boundary():
    # bidirected 4-cycle has diameter 2; the one-way cycle inside it has diameter 3 = ceil(1.5 * 2)
    edges = [(i, (i + 1) % 4) for i in range(4)] + [((i + 1) % 4, i) for i in range(4)]
    g = build_graph(4, edges)
    one_way = [g.edge_id(i, (i + 1) % 4) for i in range(4)]
    assert audit_spanner(g, _result(g, one_way, StretchClaim(Fraction(3, 2))))["passed"]
    assert not audit_spanner(g, _result(g, one_way, StretchClaim(Fraction(5, 4), ceil=False)))["passed"]


def test_eccentricity_claim_is_per_vertex():
    # star with a long return path: dropping the shortcut hurts only vertex 0's eccentricity
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 3)])
    keep = [g.edge_id(u, v) for u, v in [(0, 1), (1, 2), (2, 3), (3, 0)]]
    claim = StretchClaim(Fraction(2), metric="eccentricity")
    rep = audit_spanner(g, SpannerResult(frozenset(keep), SpannerKind.ECC2, claim))
    assert rep["max_ecc_ratio"] == 3.0
    assert not rep["passed"]


@settings(max_examples=40, deadline=None)
@given(strong_graphs(max_n=8))
def test_audit_of_full_graph_always_passes(g):
    assert audit_spanner(g, _result(g, range(g.m), StretchClaim(Fraction(1))))["passed"]
