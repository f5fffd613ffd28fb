import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import INF, bellman_ford, bf_diameter, cycle, digraphs, strong_graphs
from xdspan.errors import GraphError, NotStronglyConnectedError
from xdspan.graph import (
    Direction,
    build_graph,
    closest_order,
    closest_set,
    diameter_2approx,
    in_ecc,
    is_strongly_connected,
    out_ecc,
    sssp,
    tree_depth,
    union_tree_edges,
)

directions = st.sampled_from(list(Direction))


def test_parallel_edges_keep_min_weight():
    g = build_graph(3, [(0, 1, 5), (0, 1, 2), (1, 2, 3), (0, 1, 7)])
    assert g.m == 2
    assert g.edges[0] == (0, 1, 2)
    assert g.weighted and g.max_weight == 3


def test_unit_weights_are_unweighted():
    g = build_graph(2, [(0, 1), (1, 0, 1)])
    assert not g.weighted
    assert g.m == 2


@pytest.mark.parametrize(
    "n,edges",
    [
        (2, [(0, 0)]),
        (2, [(0, 2)]),
        (2, [(0, 1, -1)]),
        (2, [(0, 1, 1.5)]),
        (2, [(0, 1, 2, 3)]),
        (-1, []),
        (2, [(True, 1)]),
    ],
)
def test_build_graph_rejects(n, edges):
    with pytest.raises(GraphError):
        build_graph(n, edges)


def test_edge_ids_sorted_by_endpoints():
    g = build_graph(3, [(2, 0), (0, 2), (0, 1), (1, 2)])
    assert [(u, v) for u, v, _ in g.edges] == [(0, 1), (0, 2), (1, 2), (2, 0)]
    assert g.edge_id(1, 2) == 2
    assert g.edge_id(2, 1) is None
    assert g.has_edge(2, 0) and not g.has_edge(1, 0)


def test_subgraph_keeps_vertices():
    g = cycle(4)
    h = g.subgraph([0, 1])
    assert h.n == 4 and h.m == 2


def test_three_cycle_distances():
    g = cycle(3)
    assert sssp(g, [0]).dist == (0, 1, 2)
    assert sssp(g, [0], Direction.IN).dist == (0, 2, 1)


def test_super_source_tree():
    g = cycle(6)
    t = sssp(g, [0, 3])
    assert t.dist == (0, 1, 2, 0, 1, 2)
    assert tree_depth(t) == 2


def test_depth_limit_truncates():
    t = sssp(cycle(5), [0], depth_limit=2)
    assert t.dist == (0, 1, 2, INF, INF)
    with pytest.raises(NotStronglyConnectedError):
        tree_depth(t)


def test_disconnected_depth_raises():
    g = build_graph(3, [(0, 1)])
    assert not is_strongly_connected(g)
    with pytest.raises(NotStronglyConnectedError):
        out_ecc(g, 0)


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=9, weighted=True), directions, st.data())
def test_sssp_matches_bellman_ford(g, direction, data):
    roots = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=3))
    t = sssp(g, roots, direction)
    assert list(t.dist) == bellman_ford(g, roots, direction)


@settings(max_examples=100, deadline=None)
@given(digraphs(max_n=9), directions, st.data())
def test_bfs_limit_matches_filtered_oracle(g, direction, data):
    roots = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=2))
    k = data.draw(st.integers(0, 5))
    ref = [d if d <= k else INF for d in bellman_ford(g, roots, direction)]
    assert list(sssp(g, roots, direction, depth_limit=k).dist) == ref


@settings(max_examples=100, deadline=None)
@given(digraphs(max_n=9), directions, st.data())
def test_bfs_parent_is_smallest_tight_edge(g, direction, data):
    roots = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=2))
    t = sssp(g, roots, direction)
    for v in range(g.n):
        if v in roots or t.dist[v] == INF:
            assert t.parent[v] is None
            continue
        tight = []
        for e, (a, b, w) in enumerate(g.edges):
            near, far = (a, b) if direction is Direction.OUT else (b, a)
            if far == v and t.dist[near] + w == t.dist[v]:
                tight.append(e)
        assert t.parent[v] == min(tight)


@settings(max_examples=100, deadline=None)
@given(strong_graphs(max_n=9, weighted=True), directions, st.data())
def test_path_edges_realize_distance(g, direction, data):
    root = data.draw(st.integers(0, g.n - 1))
    t = sssp(g, [root], direction)
    for v in range(g.n):
        path = t.path_edges(g, v)
        assert sum(g.edges[e][2] for e in path) == t.dist[v]
        if path:
            ends = (g.edges[path[0]][0], g.edges[path[-1]][1])
            assert ends == ((root, v) if direction is Direction.OUT else (v, root))
            for e1, e2 in zip(path, path[1:]):
                assert g.edges[e1][1] == g.edges[e2][0]


@settings(max_examples=100, deadline=None)
@given(strong_graphs(max_n=10), directions, st.data())
def test_closest_set_is_a_ball(g, direction, data):
    x = data.draw(st.integers(0, g.n - 1))
    ell = data.draw(st.integers(1, g.n + 2))
    s = closest_set(g, x, ell, direction)
    dist = sssp(g, [x], direction).dist
    assert x in s
    assert len(s) == min(ell, g.n)
    inside = max(dist[v] for v in s)
    assert all(dist[v] >= inside for v in range(g.n) if v not in s)
    # ties at the boundary go to smaller ids
    boundary_out = [v for v in range(g.n) if v not in s and dist[v] == inside]
    boundary_in = [v for v in s if dist[v] == inside]
    if boundary_out:
        assert max(boundary_in) < min(boundary_out)


def test_closest_order_ties_by_id():
    g = build_graph(4, [(0, 3), (0, 1), (0, 2), (1, 0), (2, 0), (3, 0)])
    assert closest_order(g, 0, Direction.OUT) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        closest_set(g, 0, 0, Direction.OUT)


@settings(max_examples=100, deadline=None)
@given(strong_graphs(max_n=10, weighted=True))
def test_diameter_2approx_sandwich(g):
    lo, hi = diameter_2approx(g)
    d = bf_diameter(g)
    assert lo <= d <= hi <= 2 * d


@settings(max_examples=60, deadline=None)
@given(strong_graphs(max_n=10))
def test_eccentricities_agree_with_oracle(g):
    for v in range(g.n):
        assert out_ecc(g, v) == max(bellman_ford(g, [v]))
        assert in_ecc(g, v) == max(bellman_ford(g, [v], Direction.IN))


def test_union_tree_edges_of_all_vertices_keeps_distances():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
    h = g.subgraph(union_tree_edges(g, range(g.n)))
    for v in range(g.n):
        assert sssp(h, [v]).dist == sssp(g, [v]).dist


def test_zero_weight_parents_stay_acyclic():
    g = build_graph(4, [(0, 1, 0), (1, 2, 0), (2, 1, 0), (2, 3, 1), (3, 0, 1)])
    t = sssp(g, [0])
    for v in range(1, 4):
        seen = set()
        x = v
        while t.parent[x] is not None:
            assert x not in seen
            seen.add(x)
            x = g.edges[t.parent[x]][0]
        assert x == 0
    assert t.dist == (0, 0, 0, 1)
    assert math.isinf(sssp(build_graph(2, []), [0]).dist[1])
