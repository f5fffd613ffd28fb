"""Hypothesis strategies and brute-force oracles shared by the test modules."""

from __future__ import annotations

import contextlib
import math

from hypothesis import strategies as st

from xdspan.graph import Direction, build_graph

INF = math.inf

# criterion number -> "PASS/FAIL ..." line, printed by the terminal summary hook
ACCEPTANCE: dict[int, str] = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Record one pass/fail line; the yielded list collects detail strings."""
    details: list[str] = []
    try:
        yield details
    except BaseException as exc:
        line = f"[FAIL] criterion {number}: {title} ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        ACCEPTANCE[number] = line
        print(line)
        raise
    line = f"[PASS] criterion {number}: {title}" + (f" ({'; '.join(details)})" if details else "")
    ACCEPTANCE[number] = line
    print(line)


@st.composite
def strong_graphs(draw, min_n=1, max_n=12, weighted=False, max_weight=5, extra=None):
    """Strongly connected digraph: a shuffled Hamiltonian cycle plus random chords."""
    n = draw(st.integers(min_n, max_n))
    if n == 1:
        return build_graph(1, [])
    perm = draw(st.permutations(range(n)))
    pairs = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
    limit = n * (n - 1) - n if extra is None else extra
    chords = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
            max_size=max(0, limit),
        )
    )
    pairs |= set(chords)
    edges = sorted(pairs)
    if weighted:
        ws = draw(st.lists(st.integers(1, max_weight), min_size=len(edges), max_size=len(edges)))
        return build_graph(n, [(u, v, w) for (u, v), w in zip(edges, ws)])
    return build_graph(n, edges)


@st.composite
def digraphs(draw, max_n=10, weighted=False):
    """Arbitrary (possibly disconnected) digraph, weights may be zero."""
    n = draw(st.integers(1, max_n))
    raw = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0 if weighted else 1, 6 if weighted else 1)),
            max_size=3 * n,
        )
    )
    edges = [(u, v, w) for u, v, w in raw if u != v]
    if weighted:
        return build_graph(n, edges)
    return build_graph(n, [(u, v) for u, v, _ in edges])


def bellman_ford(g, roots, direction=Direction.OUT):
    """Multi-source distances by edge relaxation; independent of the library's searches."""
    dist = [INF] * g.n
    for r in roots:
        dist[r] = 0
    for _ in range(g.n):
        changed = False
        for u, v, w in g.edges:
            a, b = (u, v) if direction is Direction.OUT else (v, u)
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            break
    return dist


def bf_all_pairs(g):
    return [bellman_ford(g, [s]) for s in range(g.n)]


def bf_diameter(g):
    return max(max(row) for row in bf_all_pairs(g)) if g.n else 0


def bf_out_ecc(g):
    return [max(row) for row in bf_all_pairs(g)]


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return build_graph(n, [(u, v) for u in range(n) for v in range(n) if u != v])
