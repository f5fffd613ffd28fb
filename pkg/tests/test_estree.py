import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import INF, strong_graphs
from xdspan.dynamic import random_deletions, random_insertions
from xdspan.errors import GraphError, StreamModeError
from xdspan.estree import DynamicGraph, EsTree, Mode, closest_in, es_tree_update
from xdspan.graph import Direction, build_graph, closest_set, sssp
from xdspan.lbgen import random_strongly_connected


def fresh(g: DynamicGraph, tree: EsTree):
    return list(sssp(g.snapshot(), tree.roots, tree.direction, depth_limit=tree.cap).dist)


def replay_and_check(base, mode, ops, roots, direction, cap):
    g = DynamicGraph.from_graph(base)
    tree = EsTree(g, roots, direction, mode, cap)
    m0 = g.m
    assert tree.dist == fresh(g, tree)
    for op in ops:
        before = list(tree.dist)
        g.apply(op, mode)
        tree.update(op)
        assert tree.dist == fresh(g, tree)
        if mode is Mode.DECREMENTAL:
            assert all(a <= b for a, b in zip(before, tree.dist))
        else:
            assert all(a >= b for a, b in zip(before, tree.dist))
        assert tree.depth() == max(tree.dist)
        for v, p in enumerate(tree.parent):
            if p is not None:
                edge = (p, v) if direction is Direction.OUT else (v, p)
                assert g.has_edge(*edge) and tree.dist[p] == tree.dist[v] - 1
    k = tree.cap
    assert tree.work <= 2 * (k + 2) * max(m0, g.m)
    return tree


def test_path_delete_goes_infinite():
    g = DynamicGraph(3, [(0, 1), (1, 2)])
    t = EsTree(g, [0], Direction.OUT, Mode.DECREMENTAL)
    g.delete(1, 2)
    es_tree_update(t, ("-", 1, 2))
    assert t.dist == [0, 1, INF]
    assert t.depth() == INF


def test_three_cycle_delete():
    g = DynamicGraph(3, [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)])
    t = EsTree(g, [0], Direction.OUT, Mode.DECREMENTAL)
    g.delete(0, 1)
    t.update((0, 1))
    assert t.dist == [0, 2, 1]


def test_cap_marks_far_vertices():
    g = DynamicGraph(5, [(i, (i + 1) % 5) for i in range(5)] + [(0, 3)])
    t = EsTree(g, [0], Direction.OUT, Mode.DECREMENTAL, level_cap=2)
    assert t.dist == [0, 1, 2, 1, 2]
    g.delete(0, 3)
    t.update((0, 3))
    assert t.dist == [0, 1, 2, INF, INF]


def test_incremental_shortcut():
    g = DynamicGraph(5, [(i, (i + 1) % 5) for i in range(5)])
    t = EsTree(g, [0], Direction.IN, Mode.INCREMENTAL)
    assert t.dist == [0, 4, 3, 2, 1]
    g.insert(2, 0)
    t.update((2, 0))
    assert t.dist == [0, 2, 1, 2, 1]
    assert (2, 0) in t.tree_edges()


def test_mode_mismatch():
    g = DynamicGraph(3, [(0, 1), (1, 2), (2, 0)])
    t = EsTree(g, [0], Direction.OUT, Mode.DECREMENTAL)
    g.insert(0, 2)
    with pytest.raises(StreamModeError):
        es_tree_update(t, ("+", 0, 2))
    with pytest.raises(StreamModeError):
        t.update((0, 2))
    inc = EsTree(g, [0], Direction.OUT, Mode.INCREMENTAL)
    g.delete(0, 2)
    with pytest.raises(StreamModeError):
        inc.update((0, 2))


def test_dynamic_graph_rejects():
    g = DynamicGraph(3, [(0, 1)])
    with pytest.raises(StreamModeError):
        g.insert(0, 1)
    with pytest.raises(StreamModeError):
        g.delete(1, 0)
    with pytest.raises(GraphError):
        g.insert(1, 1)
    with pytest.raises(GraphError):
        DynamicGraph.from_graph(build_graph(2, [(0, 1, 3)]))
    with pytest.raises(ValueError):
        EsTree(g, [], Direction.OUT, Mode.INCREMENTAL)


def test_snapshot_round_trip():
    base = random_strongly_connected(20, 60, 1)
    assert DynamicGraph.from_graph(base).snapshot() == base


def test_closest_in_matches_static():
    base = random_strongly_connected(40, 120, 2)
    g = DynamicGraph.from_graph(base)
    for x in (0, 7, 39):
        assert closest_in(g, x, 9) == closest_set(base, x, 9, Direction.IN)


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("direction", list(Direction))
@pytest.mark.parametrize("cap", [None, 3])
def test_random_deletions_match_bfs(seed, direction, cap):
    base = random_strongly_connected(60, 300, seed)
    stream = random_deletions(base, 120, seed)
    replay_and_check(base, Mode.DECREMENTAL, stream.ops, [0, 17], direction, cap)


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("direction", list(Direction))
@pytest.mark.parametrize("cap", [None, 2])
def test_random_insertions_match_bfs(seed, direction, cap):
    base = random_strongly_connected(60, 120, seed)
    stream = random_insertions(base, 120, seed)
    replay_and_check(base, Mode.INCREMENTAL, stream.ops, [5], direction, cap)


@settings(max_examples=60, deadline=None)
@given(strong_graphs(min_n=2, max_n=10), st.data())
def test_property_deletions(base, data):
    edges = [(u, v) for u, v, _ in base.edges]
    ops = data.draw(st.lists(st.sampled_from(edges), unique=True, max_size=len(edges))) if edges else []
    direction = data.draw(st.sampled_from(list(Direction)))
    roots = data.draw(st.sets(st.integers(0, base.n - 1), min_size=1, max_size=3))
    cap = data.draw(st.one_of(st.none(), st.integers(0, 4)))
    replay_and_check(base, Mode.DECREMENTAL, ops, roots, direction, cap)


@settings(max_examples=60, deadline=None)
@given(strong_graphs(min_n=2, max_n=10, extra=0), st.data())
def test_property_insertions(base, data):
    n = base.n
    missing = [(u, v) for u in range(n) for v in range(n) if u != v and not base.has_edge(u, v)]
    ops = data.draw(st.lists(st.sampled_from(missing), unique=True, max_size=len(missing))) if missing else []
    direction = data.draw(st.sampled_from(list(Direction)))
    roots = data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=2))
    cap = data.draw(st.one_of(st.none(), st.integers(0, 4)))
    replay_and_check(base, Mode.INCREMENTAL, ops, roots, direction, cap)
