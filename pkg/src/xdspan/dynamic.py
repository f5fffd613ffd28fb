"""Lazy-update maintenance of dominating pairs and spanners under one-way edge streams.

A stream is insert-only or delete-only. Every structure here keeps its BFS
trees in :class:`~xdspan.estree.EsTree` instances and only re-derives the
pair ``(S1, S2)`` or the anchor ``a`` when the tracked depths drift by more
than a ``(1 ± eps)`` factor. Snapshots are taken at checkpoints and carry
enough state for the oracle to check them against ``G_t``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from .domset import (
    CertKind,
    Certificate,
    SamplerConfig,
    _sample,
    as_fraction,
    balanced_size,
    check_sizes,
    deepest,
    log2n,
)
from .errors import (
    GraphFormatError,
    NotStronglyConnectedError,
    ResampleLimitError,
    StreamModeError,
)
from .estree import INF, DynamicGraph, EsTree, Mode, bfs_dist, closest_in
from .graph import DirectedGraph, Direction, diameter_2approx, require_strongly_connected
from .io import read_edge_list
from .spanners import SpannerKind, SpannerResult, StretchClaim, alpha_for

OUT, IN = Direction.OUT, Direction.IN
DEFAULT_CHECKPOINT_EVERY = 10


# streams


@dataclass(frozen=True)
class UpdateStream:
    base: DirectedGraph
    mode: Mode
    ops: tuple[tuple[int, int], ...] = ()
    checkpoints: Optional[tuple[int, ...]] = None  # op counts after which to snapshot
    base_path: Optional[str] = None

    def __post_init__(self):
        if self.base.weighted:
            raise StreamModeError("update streams run on unweighted graphs")
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "ops", tuple((int(u), int(v)) for u, v in self.ops))
        if self.checkpoints is None:
            object.__setattr__(self, "checkpoints", default_checkpoints(len(self.ops)))
        else:
            cps = tuple(sorted(set(self.checkpoints)))
            if cps and (cps[0] < 1 or cps[-1] > len(self.ops)):
                raise ValueError(f"checkpoints must lie in [1, {len(self.ops)}]")
            object.__setattr__(self, "checkpoints", cps)

    def __len__(self) -> int:
        return len(self.ops)

    def validate(self) -> None:
        """Replay on a scratch graph; raises on a duplicate insert or a dead delete."""
        g = DynamicGraph.from_graph(self.base)
        for i, op in enumerate(self.ops):
            try:
                g.apply(op, self.mode)
            except StreamModeError as e:
                raise StreamModeError(f"op {i + 1}: {e}") from None

    def with_checkpoints(self, every: int) -> "UpdateStream":
        return UpdateStream(self.base, self.mode, self.ops, default_checkpoints(len(self.ops), every), self.base_path)

    def final_graph(self) -> DirectedGraph:
        g = DynamicGraph.from_graph(self.base)
        for op in self.ops:
            g.apply(op, self.mode)
        return g.snapshot()


def default_checkpoints(length: int, every: int = DEFAULT_CHECKPOINT_EVERY) -> tuple[int, ...]:
    if every < 1:
        raise ValueError("checkpoint interval must be >= 1")
    cps = list(range(every, length + 1, every))
    if length and (not cps or cps[-1] != length):
        cps.append(length)
    return tuple(cps)


def make_stream(base: DirectedGraph, signed_ops, checkpoints=None) -> UpdateStream:
    """Build a stream from ``("+"|"-", u, v)`` triples; mixed signs are rejected."""
    signs = {s for s, _, _ in signed_ops}
    if len(signs) > 1:
        raise StreamModeError("stream mixes insertions and deletions")
    mode = Mode.DECREMENTAL if signs == {"-"} else Mode.INCREMENTAL
    if signs - {"+", "-"}:
        raise StreamModeError(f"unknown op sign(s) {sorted(signs - {'+', '-'})}")
    return UpdateStream(base, mode, tuple((u, v) for _, u, v in signed_ops), checkpoints)


def format_stream(stream: UpdateStream, base_path: str) -> str:
    sign = "+" if stream.mode is Mode.INCREMENTAL else "-"
    lines = [f"base {base_path} mode {stream.mode.value}"]
    lines += [f"{sign} {u} {v}" for u, v in stream.ops]
    return "\n".join(lines) + "\n"


def write_stream(stream: UpdateStream, path, base_path: str) -> None:
    Path(path).write_text(format_stream(stream, base_path))


def read_stream(path, checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY) -> UpdateStream:
    """Parse a stream file; the base graph path is resolved relative to the stream file."""
    path = Path(path)
    lines = [ln.split("#", 1)[0].strip() for ln in path.read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError(f"{path}: empty stream file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "base" or head[2] != "mode" or head[3] not in ("insert", "delete"):
        raise GraphFormatError(f"{path}: header must be 'base <graph-file> mode insert|delete'")
    mode = Mode(head[3])
    want = "+" if mode is Mode.INCREMENTAL else "-"
    ops = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 3 or parts[0] not in "+-":
            raise GraphFormatError(f"{path}:{lineno}: expected '+ u v' or '- u v'")
        if parts[0] != want:
            raise StreamModeError(f"{path}:{lineno}: '{parts[0]}' op in a {mode.value} stream")
        try:
            ops.append((int(parts[1]), int(parts[2])))
        except ValueError:
            raise GraphFormatError(f"{path}:{lineno}: non-integer vertex") from None
    base_file = Path(head[1])
    if not base_file.is_absolute():
        base_file = path.parent / base_file
    base = read_edge_list(base_file)
    return UpdateStream(base, mode, tuple(ops), default_checkpoints(len(ops), checkpoint_every), head[1])


def random_deletions(g: DirectedGraph, count: int, seed: int = 0, keep_strong: bool = True) -> UpdateStream:
    """Up to ``count`` deletions in random order, skipping any that would break strong connectivity."""
    rng = random.Random(seed)
    dg = DynamicGraph.from_graph(g)
    cand = [(u, v) for u, v, _ in g.edges]
    rng.shuffle(cand)
    ops = []
    for u, v in cand:
        if len(ops) >= count:
            break
        dg.delete(u, v)
        if keep_strong and not _strong(dg):
            dg.insert(u, v)
            continue
        ops.append((u, v))
    return UpdateStream(g, Mode.DECREMENTAL, tuple(ops))


def random_insertions(g: DirectedGraph, count: int, seed: int = 0) -> UpdateStream:
    rng = random.Random(seed)
    present = {(u, v) for u, v, _ in g.edges}
    missing = [(u, v) for u in range(g.n) for v in range(g.n) if u != v and (u, v) not in present]
    rng.shuffle(missing)
    return UpdateStream(g, Mode.INCREMENTAL, tuple(missing[:count]))


def _strong(dg: DynamicGraph) -> bool:
    return INF not in bfs_dist(dg, [0], OUT) and INF not in bfs_dist(dg, [0], IN)


# dominating pair tracker


@dataclass(frozen=True)
class DynamicDominatingPair:
    step: int
    s1: frozenset[int]
    s2: frozenset[int]
    anchor: int
    p: Fraction
    q: Fraction
    eps: Fraction
    l0: int
    t0: int
    certificate: Certificate
    in_ecc_anchor: int
    out_depth: int
    far: Optional[frozenset[int]] = None
    a_set: Optional[frozenset[int]] = None
    change_counter: int = 0
    counters: dict = field(default_factory=dict, compare=False)
    seed: Optional[int] = None
    graph: Optional[DirectedGraph] = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        d = {
            "step": self.step,
            "s1_size": len(self.s1),
            "s2_size": len(self.s2),
            "anchor": self.anchor,
            "p": str(self.p),
            "q": str(self.q),
            "eps": str(self.eps),
            "l0": self.l0,
            "t0": self.t0,
            "certificate": self.certificate.to_dict(),
            "in_ecc_anchor": self.in_ecc_anchor,
            "out_depth": self.out_depth,
            "change_counter": self.change_counter,
            "counters": dict(self.counters),
        }
        if self.far is not None:
            d["far_size"] = len(self.far)
            d["a_size"] = len(self.a_set)
        return d


def _check_eps(eps, allow_zero: bool) -> Fraction:
    eps = as_fraction(eps)
    if eps > Fraction(1, 2) or eps < 0 or (eps == 0 and not allow_zero):
        lo = "[0" if allow_zero else "(0"
        raise ValueError(f"eps must lie in {lo}, 1/2], got {eps}")
    return eps


class DomPairTracker:
    """Keeps ``(S1, S2, a)`` valid while edges arrive or leave.

    Decremental: ``l0`` is the depth of ``out-bfs(S1)`` at the last rebuild;
    ``(l0, a, S2)`` are re-derived once the depth passes ``(1+eps) l0``.
    Incremental: ``FAR`` holds vertices still at depth ``>= (1-eps) l0`` and
    ``A`` is a small random subset of it from which the anchor is drawn.
    """

    def __init__(
        self,
        graph: DynamicGraph,
        mode: Mode,
        p,
        q,
        n_p: int,
        n_q: int,
        eps,
        cfg: SamplerConfig,
        rng: random.Random,
        level_cap: Optional[int] = None,
    ):
        self.graph = graph
        self.mode = mode
        self.p, self.q = as_fraction(p), as_fraction(q)
        if self.p + self.q != 1 or not 0 < self.p < 1:
            raise ValueError(f"need p + q = 1 with 0 < p < 1, got p={self.p}, q={self.q}")
        check_sizes(graph.n, n_p, n_q, cfg)
        self.n_p, self.n_q = n_p, n_q
        self.eps = as_fraction(eps)
        self.cfg = cfg
        self.rng = rng
        self.cap = level_cap
        self.time = 0
        self.counters = {
            "changes": 0,
            "resamples": 0,
            "l0_rebuilds": 0,
            "a_rebuilds": 0,
            "anchor_swaps": 0,
            "s2_refreshes": 0,
        }
        self.retired_work = 0
        self.far = self.a_set = None
        self.in_tree = None
        self._fresh()

    @property
    def incremental(self) -> bool:
        return self.mode is Mode.INCREMENTAL

    def roots(self) -> frozenset[int]:
        return self.s1 | self.s2

    def work(self) -> int:
        w = self.retired_work + self.out_tree.work
        if self.in_tree is not None:
            w += self.in_tree.work
        return w

    def _tree(self, roots, direction):
        return EsTree(self.graph, roots, direction, self.mode, self.cap)

    def _out_depth(self) -> int:
        d = self.out_tree.depth()
        if d == INF:
            raise NotStronglyConnectedError("S1 no longer reaches every vertex")
        return d

    def _fresh(self) -> None:
        """Sample ``S1`` and derive ``a``, ``S2``; repeat while ``S1`` misses ``S2``."""
        n = self.graph.n
        for attempt in range(self.cfg.max_resamples):
            s1 = _sample(self.rng, range(n), self.n_p)
            if getattr(self, "out_tree", None) is not None:
                self.retired_work += self.out_tree.work
            self.out_tree = self._tree(s1, OUT)
            depth = self._out_depth()
            a = deepest(self.out_tree.dist)
            s2 = closest_in(self.graph, a, self.n_q)
            if s1 & s2:
                break
        else:
            raise ResampleLimitError(f"S1 missed N^in(a, {self.n_q}) in {self.cfg.max_resamples} samples")
        self.counters["resamples"] += attempt
        self.s1, self.s2, self.anchor = s1, s2, a
        self.l0 = depth
        self.t0 = self.time
        self.counters["changes"] += 1
        if self.incremental:
            self._set_in_tree(a)
            self._sample_far(keep=a)

    def _set_in_tree(self, a: int) -> None:
        if self.in_tree is not None:
            self.retired_work += self.in_tree.work
        self.in_tree = self._tree([a], IN)
        self.in_ecc0 = self.in_tree.depth()

    def _threshold(self):
        return (1 - self.eps) * self.l0

    def _sample_far(self, keep: Optional[int] = None) -> None:
        thr = self._threshold()
        dist = self.out_tree.dist
        self.far = frozenset(v for v in range(self.graph.n) if dist[v] >= thr)
        k = min(math.ceil(self.cfg.oversample_c * log2n(self.graph.n)), len(self.far))
        a_set = set(_sample(self.rng, self.far, max(k, 1)))
        if keep is not None:
            a_set.add(keep)
        self.a_set = a_set

    def _new_anchor(self, a: int) -> None:
        """Move the anchor to ``a`` and refresh ``S2``; full resample if ``S1`` misses it."""
        s2 = closest_in(self.graph, a, self.n_q)
        if not self.s1 & s2:
            self._fresh()
            return
        self.anchor, self.s2 = a, s2
        self.t0 = self.time
        self.counters["changes"] += 1
        if self.incremental:
            self._set_in_tree(a)

    def apply(self, op: tuple[int, int]) -> None:
        """Absorb one edge update that has already been applied to the graph."""
        self.time += 1
        self.out_tree.update(op)
        if not self.incremental:
            depth = self._out_depth()
            if depth > (1 + self.eps) * self.l0:
                self.counters["l0_rebuilds"] += 1
                self.l0 = depth
                self._new_anchor(deepest(self.out_tree.dist))
            return

        self.in_tree.update(op)
        thr = self._threshold()
        dist = self.out_tree.dist
        if self._out_depth() < thr:
            self.counters["l0_rebuilds"] += 1
            self.l0 = self._out_depth()
            self._rebuild_far()
            return
        self.a_set = {x for x in self.a_set if dist[x] >= thr}
        if not self.a_set:
            self.counters["a_rebuilds"] += 1
            self._rebuild_far()
        elif dist[self.anchor] < thr:
            self.counters["anchor_swaps"] += 1
            self._new_anchor(deepest(dist, self.a_set))
        elif self.in_tree.depth() < (1 - self.eps) * self.in_ecc0:
            self.counters["s2_refreshes"] += 1
            self._new_anchor(self.anchor)

    def _rebuild_far(self) -> None:
        self._sample_far()
        self._new_anchor(deepest(self.out_tree.dist, self.a_set))

    def snapshot(self) -> DynamicDominatingPair:
        ecc_a = max(bfs_dist(self.graph, [self.anchor], IN))
        out_depth = self._out_depth()
        h1 = math.floor((self.p + 2 * self.eps) * ecc_a)
        if out_depth <= h1:
            cert = Certificate(CertKind.OUT_DOMINATES, h1)
        else:
            cert = Certificate(CertKind.IN_DOMINATES, math.ceil((self.q + 2 * self.eps) * ecc_a))
        counters = dict(self.counters, es_work=self.work())
        return DynamicDominatingPair(
            self.time,
            self.s1,
            self.s2,
            self.anchor,
            self.p,
            self.q,
            self.eps,
            self.l0,
            self.t0,
            cert,
            ecc_a,
            out_depth,
            None if self.far is None else frozenset(self.far),
            None if self.a_set is None else frozenset(self.a_set),
            self.counters["changes"],
            counters,
            self.cfg.seed,
            self.graph.snapshot(),
        )


# tree collections


class TreeBank:
    """Single-root ES trees per root vertex, created and dropped as the root set moves."""

    def __init__(self, graph: DynamicGraph, mode: Mode, level_cap, directions=(IN, OUT)):
        self.graph, self.mode, self.cap = graph, mode, level_cap
        self.directions = tuple(directions)
        self.trees: dict[tuple[int, Direction], EsTree] = {}
        self.built = 0
        self.retired_work = 0

    def sync(self, roots) -> None:
        want = {(r, d) for r in roots for d in self.directions}
        for key in [k for k in self.trees if k not in want]:
            self.retired_work += self.trees.pop(key).work
        for r, d in sorted(want - self.trees.keys(), key=lambda k: (k[0], k[1].value)):
            self.trees[(r, d)] = EsTree(self.graph, [r], d, self.mode, self.cap)
            self.built += 1

    def update(self, op) -> None:
        for t in self.trees.values():
            t.update(op)

    def edges(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for t in self.trees.values():
            out |= t.tree_edges()
        return out

    def max_depth(self) -> float:
        return max((t.depth() for t in self.trees.values()), default=0)

    def work(self) -> int:
        return self.retired_work + sum(t.work for t in self.trees.values())

    def drop(self) -> None:
        self.sync(())


@dataclass(frozen=True)
class DynamicSnapshot:
    step: int
    graph: DirectedGraph
    spanner: SpannerResult
    pair: Optional[DynamicDominatingPair] = None
    events: tuple = ()
    counters: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "n": self.graph.n,
            "m": self.graph.m,
            "spanner": self.spanner.to_dict(),
            "pair": None if self.pair is None else self.pair.to_dict(),
            "events": list(self.events),
            "counters": dict(self.counters),
        }


def _result(g_t: DirectedGraph, pairs, kind, claim, audit) -> SpannerResult:
    ids = frozenset(g_t.edge_id(u, v) for u, v in pairs)
    audit = dict(audit, edges=len(ids))
    return SpannerResult(ids, kind, claim, audit)


def _default_cap(base: DirectedGraph, mode: Mode, level_cap):
    if level_cap is not None:
        return level_cap
    if mode is Mode.INCREMENTAL:
        # distances only shrink, so the initial upper bound caps every tree exactly
        return diameter_2approx(base)[1]
    return None


class _Maintainer:
    """Base: owns the graph, the event log and the op counter."""

    def __init__(self, graph: DynamicGraph, mode: Mode, eps: Fraction, cfg: SamplerConfig, rng, level_cap):
        self.graph, self.mode, self.eps, self.cfg, self.rng, self.cap = graph, mode, eps, cfg, rng, level_cap
        self.time = 0
        self.events: list[dict] = []

    def event(self, name: str, **info) -> None:
        self.events.append(dict(info, step=self.time, event=name))

    def apply(self, op) -> None:
        raise NotImplementedError

    def snapshot(self) -> DynamicSnapshot:
        raise NotImplementedError


class Diam15Maintainer(_Maintainer):
    """In/out ES trees of every root of a ``p = q = 1/2`` tracked pair.

    With ``d0`` set, a large-diameter mode kicks in once the in+out depth of
    vertex 0 reaches ``4 d0``: H becomes the in/out trees of a random ``W``
    that keeps every vertex within ``d0`` in both directions.
    """

    kind = SpannerKind.DIAM15

    def __init__(self, graph, mode, eps, cfg, rng, level_cap=None, d0: Optional[int] = None):
        super().__init__(graph, mode, eps, cfg, rng, level_cap)
        n = graph.n
        size = balanced_size(n, cfg.oversample_c)
        self.pair = DomPairTracker(graph, mode, Fraction(1, 2), Fraction(1, 2), size, size, eps / 2, cfg, rng, level_cap)
        self.bank = TreeBank(graph, mode, level_cap)
        self.bank.sync(self.pair.roots())
        self.d0 = d0
        self.use_w = False
        self.w = None
        if d0 is not None:
            if d0 < 1:
                raise ValueError("d0 must be >= 1")
            self.z = (EsTree(graph, [0], IN, mode, level_cap), EsTree(graph, [0], OUT, mode, level_cap))
            self.w_size = max(1, min(n, math.ceil(cfg.oversample_c * n * log2n(n) / d0)))
            self.w_bank = TreeBank(graph, mode, level_cap)
            self._check_large()

    def claim(self) -> StretchClaim:
        return StretchClaim(Fraction(3, 2) + self.eps)

    def _pick_w(self) -> bool:
        for _ in range(self.cfg.max_resamples):
            w = _sample(self.rng, range(self.graph.n), self.w_size)
            out_t = EsTree(self.graph, w, OUT, self.mode, self.cap)
            in_t = EsTree(self.graph, w, IN, self.mode, self.cap)
            if max(out_t.depth(), in_t.depth()) <= self.d0:
                self.w, self.w_trees = w, (in_t, out_t)
                self.w_bank.sync(w)
                self.event("sample_w", size=len(w))
                return True
        return False

    def _check_large(self) -> None:
        delta = self.z[0].depth() + self.z[1].depth()
        if not self.use_w and delta >= 4 * self.d0:
            if self._pick_w():
                self.use_w = True
                self.event("switch_large_diameter", delta=delta)
            else:
                self.event("w_resample_failed", delta=delta)
        elif self.use_w and max(t.depth() for t in self.w_trees) > self.d0:
            if not self._pick_w():
                self.use_w = False
                self.w_bank.drop()
                self.event("switch_back", delta=delta)

    def apply(self, op) -> None:
        self.time += 1
        self.bank.update(op)
        self.pair.apply(op)
        self.bank.sync(self.pair.roots())
        if self.d0 is not None:
            for t in self.z:
                t.update(op)
            if self.use_w:
                for t in self.w_trees:
                    t.update(op)
                self.w_bank.update(op)
            self._check_large()

    def edge_pairs(self) -> set[tuple[int, int]]:
        return self.w_bank.edges() if self.use_w else self.bank.edges()

    def counters(self) -> dict:
        c = dict(self.pair.counters)
        c["es_work"] = self.pair.work() + self.bank.work() + (self.w_bank.work() if self.d0 else 0)
        c["trees_built"] = self.bank.built
        return c

    def snapshot(self) -> DynamicSnapshot:
        g_t = self.graph.snapshot()
        audit = {"seed": self.cfg.seed, "eps": str(self.eps), "roots": len(self.pair.roots())}
        if self.d0 is not None:
            audit["large_diameter"] = self.use_w
        res = _result(g_t, self.edge_pairs(), self.kind, self.claim(), audit)
        return DynamicSnapshot(self.time, g_t, res, self.pair.snapshot(), tuple(self.events), self.counters())


class Diam53Maintainer(_Maintainer):
    """Two mirrored tracked pairs, super-source trees of ``A2``/``B1`` and per-``u`` out-trees for ``A2 x B1`` paths."""

    kind = SpannerKind.DIAM53

    def __init__(self, graph, mode, eps, cfg, rng, level_cap=None):
        super().__init__(graph, mode, eps, cfg, rng, level_cap)
        n = graph.n
        self.z = (EsTree(graph, [0], IN, mode, level_cap), EsTree(graph, [0], OUT, mode, level_cap))
        self.fallback: Optional[Diam15Maintainer] = None
        if self._too_deep():
            return
        g0 = graph.snapshot()
        self.d_hat = diameter_2approx(g0)[1]
        self.alpha = alpha_for(n, self.d_hat)
        big = min(n, math.ceil(cfg.oversample_c * self.alpha * log2n(n)))
        small = min(n, math.ceil(n / self.alpha))
        e4 = eps / 4
        self.pa = DomPairTracker(graph, mode, Fraction(2, 3), Fraction(1, 3), big, small, e4, cfg, rng, level_cap)
        self.pb = DomPairTracker(graph, mode, Fraction(1, 3), Fraction(2, 3), small, big, e4, cfg, rng, level_cap)
        self.bank = TreeBank(graph, mode, level_cap)
        self.path_bank = TreeBank(graph, mode, level_cap, directions=(OUT,))
        self.super_in = self.super_out = None
        self.retired_work = 0
        self._sync()

    def _too_deep(self) -> bool:
        lower = max(t.depth() for t in self.z)
        if lower * lower > self.graph.n:
            self.event("fallback_diam15", diameter_lower_bound=lower, limit=math.sqrt(self.graph.n))
            if getattr(self, "bank", None) is not None:
                self.bank.drop()
                self.path_bank.drop()
            self.fallback = Diam15Maintainer(self.graph, self.mode, self.eps, self.cfg, self.rng, self.cap)
            self.fallback.time = self.time
            return True
        return False

    def _sync(self) -> None:
        a2, b1 = self.pa.s2, self.pb.s1
        self.bank.sync(self.pa.s1 | self.pb.s2)
        self.path_bank.sync(a2)
        if self.super_in is None or self.super_in.roots != a2:
            if self.super_in is not None:
                self.retired_work += self.super_in.work
            self.super_in = EsTree(self.graph, a2, IN, self.mode, self.cap)
        if self.super_out is None or self.super_out.roots != b1:
            if self.super_out is not None:
                self.retired_work += self.super_out.work
            self.super_out = EsTree(self.graph, b1, OUT, self.mode, self.cap)

    def claim(self) -> StretchClaim:
        return StretchClaim(Fraction(5, 3) + self.eps)

    def apply(self, op) -> None:
        self.time += 1
        if self.fallback is not None:
            self.fallback.apply(op)
            return
        for t in self.z:
            t.update(op)
        if self._too_deep():
            return
        self.bank.update(op)
        self.path_bank.update(op)
        self.super_in.update(op)
        self.super_out.update(op)
        self.pa.apply(op)
        self.pb.apply(op)
        self._sync()

    def edge_pairs(self) -> set[tuple[int, int]]:
        edges = self.bank.edges() | self.super_in.tree_edges() | self.super_out.tree_edges()
        for u in sorted(self.pa.s2):
            tree = self.path_bank.trees[(u, OUT)]
            for v in sorted(self.pb.s1):
                edges.update(tree.path_to_root(v))
        return edges

    def snapshot(self) -> DynamicSnapshot:
        if self.fallback is not None:
            snap = self.fallback.snapshot()
            audit = dict(snap.spanner.audit, fallback="diam15")
            res = SpannerResult(snap.spanner.edges, SpannerKind.DIAM15, snap.spanner.stretch_claim, audit)
            events = tuple(self.events) + snap.events
            return DynamicSnapshot(self.time, snap.graph, res, snap.pair, events, snap.counters)
        g_t = self.graph.snapshot()
        audit = {
            "seed": self.cfg.seed,
            "eps": str(self.eps),
            "alpha": self.alpha,
            "diameter_estimate": self.d_hat,
            "sizes": {"A1": len(self.pa.s1), "A2": len(self.pa.s2), "B1": len(self.pb.s1), "B2": len(self.pb.s2)},
            "pair_b": self.pb.snapshot().to_dict(),
        }
        res = _result(g_t, self.edge_pairs(), self.kind, self.claim(), audit)
        counters = {f"a_{k}": v for k, v in self.pa.counters.items()}
        counters.update({f"b_{k}": v for k, v in self.pb.counters.items()})
        counters["es_work"] = (
            self.pa.work() + self.pb.work() + self.bank.work() + self.path_bank.work()
            + self.retired_work + self.super_in.work + self.super_out.work
        )
        return DynamicSnapshot(self.time, g_t, res, self.pa.snapshot(), tuple(self.events), counters)


class Ecc2Maintainer(_Maintainer):
    """In/out ES trees of ``S1 ∪ S2`` for a ``(2+eps)``-eccentricity spanner.

    Decremental: ``S2 = N^in(a, n_q)`` from a tracker run at ``eps``.
    Incremental: the tracker runs at ``eps/3`` and ``S2`` is replaced by a
    growing in-ball of the anchor, reset when it outgrows ``n_q``.
    """

    kind = SpannerKind.ECC2

    def __init__(self, graph, mode, eps, cfg, rng, level_cap=None):
        super().__init__(graph, mode, eps, cfg, rng, level_cap)
        n = graph.n
        self.size = balanced_size(n, cfg.oversample_c)
        inner = eps / 3 if mode is Mode.INCREMENTAL else eps
        self.pair = DomPairTracker(graph, mode, Fraction(1, 2), Fraction(1, 2), self.size, self.size, inner, cfg, rng, level_cap)
        self.bank = TreeBank(graph, mode, level_cap)
        self.generation = 0
        self.ball_rebuilds = 0
        if mode is Mode.INCREMENTAL:
            self._reset_ball()
        self.bank.sync(self._roots())

    def claim(self) -> StretchClaim:
        return StretchClaim(2 + self.eps, metric="eccentricity")

    def _reset_ball(self) -> None:
        """``q(a)``: largest radius whose in-ball of ``a`` still fits in ``n_q`` vertices."""
        a = self.pair.anchor
        dist = self.pair.in_tree.dist
        levels = sorted(d for d in dist if d != INF)
        q = levels[-1]
        if len(levels) > self.size:
            q = levels[self.size] - 1  # radius just below the first level that overflows
        self.ball_anchor = a
        self.ball_radius = math.floor((1 - self.pair.eps) * q)
        self.ball = {v for v in range(self.graph.n) if dist[v] <= self.ball_radius}
        self.generation += 1

    def _roots(self) -> frozenset[int]:
        if self.mode is Mode.INCREMENTAL:
            return self.pair.s1 | frozenset(self.ball)
        return self.pair.roots()

    def apply(self, op) -> None:
        self.time += 1
        self.bank.update(op)
        self.pair.apply(op)
        if self.mode is Mode.INCREMENTAL:
            if self.pair.anchor != self.ball_anchor or self.pair.t0 == self.time:
                self._reset_ball()
            else:
                dist = self.pair.in_tree.dist
                self.ball |= {v for v in range(self.graph.n) if dist[v] <= self.ball_radius}
                if len(self.ball) > self.size:
                    self.ball_rebuilds += 1
                    self._reset_ball()
        self.bank.sync(self._roots())

    def snapshot(self) -> DynamicSnapshot:
        g_t = self.graph.snapshot()
        audit = {"seed": self.cfg.seed, "eps": str(self.eps), "roots": len(self._roots())}
        if self.mode is Mode.INCREMENTAL:
            audit["ball"] = {
                "generation": self.generation,
                "anchor": self.ball_anchor,
                "radius": self.ball_radius,
                "members": sorted(self.ball),
                "rebuilds": self.ball_rebuilds,
            }
        res = _result(g_t, self.bank.edges(), self.kind, self.claim(), audit)
        counters = dict(self.pair.counters, es_work=self.pair.work() + self.bank.work())
        return DynamicSnapshot(self.time, g_t, res, self.pair.snapshot(), tuple(self.events), counters)


# drivers


def _replay(stream: UpdateStream, build: Callable, snap: Callable) -> list:
    stream.validate()
    require_strongly_connected(stream.base)
    graph = DynamicGraph.from_graph(stream.base)
    m = build(graph)
    out = [snap(m)]
    cps = set(stream.checkpoints)
    for i, op in enumerate(stream.ops, start=1):
        graph.apply(op, stream.mode)
        m.apply(op)
        if i in cps:
            out.append(snap(m))
    return out


def dyn_dominating_pair(
    stream: UpdateStream,
    eps,
    n_p: int,
    n_q: int,
    cfg: SamplerConfig = SamplerConfig(),
    p=Fraction(1, 2),
    level_cap: Optional[int] = None,
) -> list[DynamicDominatingPair]:
    eps = _check_eps(eps, allow_zero=True)
    p = as_fraction(p)
    cap = _default_cap(stream.base, stream.mode, level_cap)
    return _replay(
        stream,
        lambda g: DomPairTracker(g, stream.mode, p, 1 - p, n_p, n_q, eps, cfg, cfg.rng(), cap),
        lambda t: t.snapshot(),
    )


def dyn_diam15_spanner(
    stream: UpdateStream,
    eps,
    cfg: SamplerConfig = SamplerConfig(),
    level_cap: Optional[int] = None,
    d0: Optional[int] = None,
) -> list[DynamicSnapshot]:
    eps = _check_eps(eps, allow_zero=False)
    cap = _default_cap(stream.base, stream.mode, level_cap)
    return _replay(
        stream,
        lambda g: Diam15Maintainer(g, stream.mode, eps, cfg, cfg.rng(), cap, d0),
        lambda m: m.snapshot(),
    )


def dyn_diam53_spanner(
    stream: UpdateStream, eps, cfg: SamplerConfig = SamplerConfig(), level_cap: Optional[int] = None
) -> list[DynamicSnapshot]:
    eps = _check_eps(eps, allow_zero=False)
    cap = _default_cap(stream.base, stream.mode, level_cap)
    return _replay(
        stream,
        lambda g: Diam53Maintainer(g, stream.mode, eps, cfg, cfg.rng(), cap),
        lambda m: m.snapshot(),
    )


def dyn_ecc2_spanner(
    stream: UpdateStream, eps, cfg: SamplerConfig = SamplerConfig(), level_cap: Optional[int] = None
) -> list[DynamicSnapshot]:
    eps = _check_eps(eps, allow_zero=False)
    cap = _default_cap(stream.base, stream.mode, level_cap)
    return _replay(
        stream,
        lambda g: Ecc2Maintainer(g, stream.mode, eps, cfg, cfg.rng(), cap),
        lambda m: m.snapshot(),
    )


@dataclass(frozen=True)
class DiameterEstimate:
    step: int
    estimate: int
    max_depth: int
    eps: Fraction
    graph: DirectedGraph
    pair: DynamicDominatingPair

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "estimate": self.estimate,
            "max_depth": self.max_depth,
            "eps": str(self.eps),
            "pair": self.pair.to_dict(),
        }


def _estimate(m: Diam15Maintainer) -> DiameterEstimate:
    depth = int(m.bank.max_depth())
    est = max(depth, math.ceil((Fraction(3, 2) + m.eps) * depth))
    return DiameterEstimate(m.time, est, depth, m.eps, m.graph.snapshot(), m.pair.snapshot())


def dyn_diameter_estimate(
    stream: UpdateStream, eps, cfg: SamplerConfig = SamplerConfig(), level_cap: Optional[int] = None
) -> list[DiameterEstimate]:
    """``ceil((1.5+eps) M)`` with ``M`` the largest in/out depth over the tracked roots."""
    eps = _check_eps(eps, allow_zero=False)
    cap = _default_cap(stream.base, stream.mode, level_cap)
    return _replay(
        stream,
        lambda g: Diam15Maintainer(g, stream.mode, eps, cfg, cfg.rng(), cap),
        _estimate,
    )


ALGORITHMS = {
    "diam15": dyn_diam15_spanner,
    "diam53": dyn_diam53_spanner,
    "ecc2": dyn_ecc2_spanner,
}
