import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import bellman_ford, cycle, strong_graphs
from xdspan import domset
from xdspan.domset import (
    CertKind,
    SamplerConfig,
    as_fraction,
    balanced_size,
    check_sizes,
    deepest,
    dominating_pair,
    sample_hitting_set,
    sampling_budget,
    verify_domination,
)
from xdspan.errors import NotStronglyConnectedError, ResampleLimitError, SamplingConstraintError
from xdspan.graph import Direction, build_graph
from xdspan.lbgen import random_strongly_connected

LOOSE = SamplerConfig(oversample_c=1.0)


def test_budget_uses_real_log():
    assert sampling_budget(100, 8) == math.ceil(8 * 100 * math.log2(100))
    assert sampling_budget(1, 8) == 0
    assert balanced_size(100, 8) == math.ceil(math.sqrt(8 * 100 * math.log2(100)))
    assert balanced_size(10, 8) == 10


def test_check_sizes():
    cfg = SamplerConfig(oversample_c=1.0)
    check_sizes(100, 27, 25, cfg)  # 675 >= 665
    with pytest.raises(SamplingConstraintError):
        check_sizes(100, 20, 20, cfg)
    check_sizes(100, 1, 100, cfg)  # N^in(v, n) = V, hitting is certain
    with pytest.raises(SamplingConstraintError):
        check_sizes(10, 0, 10, cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(oversample_c=0.5)
    with pytest.raises(ValueError):
        SamplerConfig(max_resamples=0)


def test_as_fraction():
    assert as_fraction(0.5) == Fraction(1, 2)
    assert as_fraction(2) == Fraction(2)
    assert as_fraction("2/3") == Fraction(2, 3)
    assert as_fraction(0.1) == Fraction(1, 10)


def test_deepest_breaks_ties_by_id():
    assert deepest([0, 2, 1, 2]) == 1
    assert deepest([0, 2, 1, 2], candidates=[3, 2]) == 3


def test_hitting_set_size_and_determinism():
    g = random_strongly_connected(60, 200, 1)
    cfg = SamplerConfig(seed=3, oversample_c=1.0)
    s = sample_hitting_set(g, 20, 20, cfg)
    assert len(s) == 20 and s == sample_hitting_set(g, 20, 20, cfg)


@settings(max_examples=80, deadline=None)
@given(strong_graphs(min_n=2, max_n=14), st.integers(0, 10**6), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)]))
def test_certificate_holds(g, seed, p):
    n = g.n
    size = balanced_size(n, 1.0)
    cfg = SamplerConfig(seed=seed, oversample_c=1.0)
    pair = dominating_pair(g, p, 1 - p, size, size, cfg)
    assert pair.s1 & pair.s2
    out_dist = bellman_ford(g, pair.s1)
    assert max(out_dist) == pair.out_depth
    assert pair.out_depth == out_dist[pair.anchor]
    ecc_a = max(bellman_ford(g, [pair.anchor], Direction.IN))
    assert ecc_a == pair.in_ecc_anchor
    in_depth = max(bellman_ford(g, pair.s2, Direction.IN))
    h1, h2 = math.floor(p * ecc_a), math.ceil((1 - p) * ecc_a)
    assert pair.out_depth <= h1 or in_depth <= h2
    if pair.certificate.kind is CertKind.OUT_DOMINATES:
        assert pair.certificate.bound == h1 and pair.out_depth <= h1
    else:
        assert pair.certificate.bound == h2 and in_depth <= h2
    rep = verify_domination(g, pair)
    assert rep.holds and rep.certificate_holds and rep.ball_contained


@settings(max_examples=60, deadline=None)
@given(strong_graphs(min_n=2, max_n=10, weighted=True), st.integers(0, 1000))
def test_weighted_certificate_with_slack(g, seed):
    size = balanced_size(g.n, 1.0)
    pair = dominating_pair(g, 0.5, 0.5, size, size, SamplerConfig(seed=seed, oversample_c=1.0))
    rep = verify_domination(g, pair)
    assert rep.holds and rep.certificate_holds


def test_same_seed_same_pair():
    g = random_strongly_connected(100, 500, 5)
    a = dominating_pair(g, 0.5, 0.5, 30, 30, SamplerConfig(seed=9, oversample_c=1.0))
    b = dominating_pair(g, 0.5, 0.5, 30, 30, SamplerConfig(seed=9, oversample_c=1.0))
    assert a == b


def test_single_vertex():
    pair = dominating_pair(build_graph(1, []), 0.5, 0.5, 1, 1)
    assert pair.s1 == pair.s2 == {0}
    assert verify_domination(build_graph(1, []), pair).holds


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        dominating_pair(cycle(5), 0.5, 0.6, 5, 5)
    with pytest.raises(ValueError):
        dominating_pair(cycle(5), 0, 1, 5, 5)
    with pytest.raises(NotStronglyConnectedError):
        dominating_pair(build_graph(3, [(0, 1), (1, 2)]), 0.5, 0.5, 3, 3)
    with pytest.raises(SamplingConstraintError):
        dominating_pair(cycle(100), 0.5, 0.5, 5, 5)


def test_resample_cap(monkeypatch):
    monkeypatch.setattr(domset, "closest_set", lambda *a: frozenset())
    with pytest.raises(ResampleLimitError):
        dominating_pair(cycle(10), 0.5, 0.5, 10, 10, SamplerConfig(max_resamples=3))


def test_verify_flags_bad_pair():
    g = cycle(12)
    good = dominating_pair(g, 0.5, 0.5, 12, 12)
    bad = domset.DominatingPair(
        frozenset({0}), frozenset({0}), 6, good.p, good.q, 1, 1,
        domset.Certificate(CertKind.OUT_DOMINATES, 1), 0, 0,
    )
    rep = verify_domination(g, bad)
    assert not rep.holds and not rep.certificate_holds
    assert rep.h1 == 5 and rep.h2 == 6
