import io
import itertools
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings

from hypermotif import (
    ConfigError,
    Hypergraph,
    SampleBudget,
    count_motifs,
    default_budget,
    enumerate_containing,
    enumerate_patterns,
    sample_census,
)
from hypermotif.patterns import canonicalize, countmax
from hypermotif.sampling import budget_from_multipliers, correct

from conftest import small_hypergraphs
from oracles import brute_canonical, brute_census, linked, random_hypergraph_edges, scan_induced


def brute_containing(edges, n, e, k):
    out = set()
    for vs in itertools.combinations(range(n), k):
        if not set(e) <= set(vs):
            continue
        sub = scan_induced(edges, vs)
        if any(len(x) > len(e) for x in sub):
            continue
        if linked(vs, sub):
            out.add(vs)
    return out


@settings(max_examples=50, deadline=None)
@given(small_hypergraphs(max_n=8))
def test_containing_matches_scan(h):
    for e in h.edges:
        for k in range(max(3, len(e)), 5):
            got = [sub.vertices for sub in enumerate_containing(h, e, k)]
            assert len(got) == len(set(got))
            assert set(got) == brute_containing(h.edges, h.n, e, k)


@settings(max_examples=40, deadline=None)
@given(small_hypergraphs(max_n=8))
def test_anchoring_identity(h):
    # summing the tallies of every edge, scaled by 1/countmax, recovers the
    # exact census; this is the identity behind unbiasedness
    for k in (3, 4):
        total = Counter()
        for e in h.edges:
            if len(e) > k:
                continue
            for sub in enumerate_containing(h, e, k):
                total[brute_canonical(sub.edges, sub.vertices)] += 1
        scaled = {p: c / countmax(p)[1] for p, c in total.items()}
        assert scaled == brute_census(h.edges, h.n, k)


def test_backends_agree_for_same_seed(random_graphs):
    for i, h in enumerate(random_graphs):
        for k in (3, 4):
            try:
                b = default_budget(h, k, 30)
            except ConfigError:
                continue
            a = sample_census(h, k, b, seed=i)
            p = sample_census(h, k, b, seed=i, backend="python")
            assert a.raw == p.raw
            assert a.counts == p.counts


def test_deterministic(random_graphs):
    h = random_graphs[0]
    b = default_budget(h, 4, 40)
    assert sample_census(h, 4, b, seed=9).counts == sample_census(h, 4, b, seed=9).counts


def test_full_coverage_limit_is_exact():
    # one pattern per top size: every draw of the single edge sees everything
    h = Hypergraph([(0, 1, 2), (1, 2), (2, 3)])
    est = sample_census(h, 3, SampleBudget({2: 5, 3: 3}), seed=1)
    assert est.counts == count_motifs(h, 3).counts


def test_correction_factor():
    h = Hypergraph([(0, 1), (1, 2), (2, 3), (0, 1, 2), (1, 2, 3)])
    pat = canonicalize([(0, 1), (1, 2)])
    out = correct({pat: 6}, SampleBudget({2: 4, 3: 1}), h)
    assert out[pat] == 6 * 3 / (4 * 2)


def test_default_budget_split():
    h = Hypergraph([(0, 1), (0, 1, 2), (1, 2, 3, 4)])
    b = default_budget(h, 4, 100)
    # unit share 100 // 6 = 16; the remainder of 4 goes to S_2
    assert b.per_size == {2: 20, 3: 48, 4: 32}
    h3 = Hypergraph([(0, 1, 2), (1, 2, 3, 4)])
    b3 = default_budget(h3, 4, 50)
    assert b3[2] == 0 and b3.total == 50
    assert default_budget(h, 4, 60, {3: 1, 4: 1}).per_size == {2: 20, 3: 20, 4: 20}


def test_budget_validation():
    h = Hypergraph([(0, 1), (0, 1, 2)])
    with pytest.raises(ConfigError):
        SampleBudget({2: -1})
    with pytest.raises(ConfigError):
        SampleBudget({2: 0})
    with pytest.raises(ConfigError):
        sample_census(h, 3, SampleBudget({2: 1, 4: 2}), seed=0)
    with pytest.raises(ConfigError):
        sample_census(h, 4, SampleBudget({2: 1, 4: 2}), seed=0)
    with pytest.raises(ConfigError):
        default_budget(h, 3, 0)
    with pytest.raises(ValueError):
        sample_census(h, 6, SampleBudget({2: 1}), seed=0)


def test_multipliers_zero_missing_sizes():
    h = Hypergraph([(0, 1), (0, 1, 2)])
    assert budget_from_multipliers(h, 10, {3: 3, 4: 2}).per_size == {2: 10, 3: 30, 4: 0}


def test_flags_and_output():
    h = Hypergraph([(0, 1), (1, 2), (0, 1, 2, 3)])
    est = sample_census(h, 4, SampleBudget({2: 4}), seed=0)
    flags = {p: est.flag(p) for p in enumerate_patterns(4)}
    assert set(flags.values()) <= {"observed", "zero", "unsampled"}
    four = canonicalize([(0, 1, 2, 3)])
    assert flags[four] == "unsampled"
    assert not est.support()[enumerate_patterns(4).index(four)]
    text = est.to_csv()
    body = [line for line in text.splitlines() if not line.startswith("#")]
    assert body[0] == "pattern,count,raw,estimate,flag"
    assert len(body) == 1 + len(enumerate_patterns(4))
    assert f'"{four.encode()}",,0,,unsampled' in body


def test_order5_keys_canonical():
    rng = random.Random(4)
    h = Hypergraph(random_hypergraph_edges(rng, 12, 40, sizes=(2, 3, 4, 5)), n=12)
    est = sample_census(h, 5, default_budget(h, 5, 40), seed=2)
    assert est.counts
    for p in est.counts:
        assert p.order == 5
        assert canonicalize(p, range(5)) == p
