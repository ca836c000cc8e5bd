import io
import json
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermotif import (
    Hypergraph,
    MotifCensus,
    SampleBudget,
    abundance_profile,
    configuration_sample,
    count_motifs,
    enumerate_patterns,
    generate,
    GenSpec,
    null_ensemble,
    profile_correlation_matrix,
    profile_metrics,
    sample_census,
)
from hypermotif.significance import NullCounts, census_many, exact_reference

from conftest import small_hypergraphs

TOY = [(0, 1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]


def swap_neighbours(state):
    edges = list(state)
    for i, e1 in enumerate(edges):
        for j, e2 in enumerate(edges):
            if i == j:
                continue
            for a in e1:
                for b in e2:
                    if b in e1 or a in e2:
                        continue
                    n1 = tuple(sorted(b if v == a else v for v in e1))
                    n2 = tuple(sorted(a if v == b else v for v in e2))
                    rest = set(edges) - {e1, e2}
                    if n1 in rest or n2 in rest:
                        continue
                    yield frozenset(rest | {n1, n2})


def reachable(edges):
    start = frozenset(edges)
    seen, todo = {start}, [start]
    while todo:
        for t in swap_neighbours(todo.pop()):
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


@settings(max_examples=60, deadline=None)
@given(small_hypergraphs(max_n=9, max_m=15), st.integers(0, 2 ** 32 - 1))
def test_swaps_preserve_sequences(h, seed):
    r = configuration_sample(h, seed=seed)
    assert np.array_equal(r.degrees(), h.degrees())
    assert np.array_equal(r.size_sequence(), h.size_sequence())
    assert len(set(r.edges)) == len(h.edges)
    assert all(len(set(e)) == len(e) for e in r.edges)


def test_swap_chain_uniform_over_reachable_states():
    states = reachable(TOY)
    assert len(states) == 54
    h = Hypergraph(TOY)
    n = 10_000
    seen = Counter(frozenset(configuration_sample(h, seed=s, swap_attempts=100).edges) for s in range(n))
    assert set(seen) <= states
    expected = n / len(states)
    chi2 = sum((seen.get(s, 0) - expected) ** 2 / expected for s in states)
    df = len(states) - 1
    assert abs(chi2 - df) / math.sqrt(2 * df) < 5


def test_ensemble_deterministic_and_distinct():
    h = generate(GenSpec(30, {2: 40, 3: 20}, seed=3))
    a = null_ensemble(h, 4, seed=8)
    b = null_ensemble(h, 4, seed=8)
    assert [r.edges for r in a.replicas] == [r.edges for r in b.replicas]
    assert len({r.edges for r in a.replicas}) == 4
    assert a.swap_count == 600


def test_census_many_workers_match():
    h = generate(GenSpec(20, {2: 30, 3: 10}, seed=1))
    reps = null_ensemble(h, 3, seed=2).replicas
    assert census_many(reps, 3, workers=1) == census_many(reps, 3, workers=2)


def _census(counts, k=3):
    pats = enumerate_patterns(k)
    return MotifCensus(k, {p: c for p, c in zip(pats, counts)})


def test_delta_formula():
    real = _census([10, 0, 6, 0, 0, 0])
    nulls = [_census([2, 0, 6, 0, 0, 0]), _census([4, 0, 6, 0, 0, 0])]
    prof = abundance_profile(real, nulls, epsilon=4)
    assert prof.abundance[0] == pytest.approx((10 - 3) / (10 + 3 + 4))
    assert prof.abundance[2] == 0
    assert prof.values[0] == pytest.approx(1.0)
    assert np.linalg.norm(prof.values) == pytest.approx(1.0, abs=1e-12)


def test_degenerate_profile():
    real = _census([5, 1, 0, 0, 0, 0])
    prof = abundance_profile(real, [real], epsilon=4)
    assert prof.degenerate
    assert not prof.values.any()


def test_null_counts_equivalent_to_list():
    real = _census([3, 1, 4, 1, 5, 9])
    nulls = [_census([2, 7, 1, 8, 2, 8]), _census([1, 4, 1, 4, 2, 1])]
    a = abundance_profile(real, nulls)
    b = abundance_profile(real, NullCounts.from_censuses(nulls))
    assert np.array_equal(a.values, b.values)


def test_order_mismatch():
    with pytest.raises(ValueError):
        abundance_profile(_census([1] * 6), [MotifCensus(4, {})])
    with pytest.raises(ValueError):
        abundance_profile(_census([1] * 6), [])


def test_unsampled_patterns_get_zero():
    h = Hypergraph([(0, 1), (1, 2), (0, 1, 2), (2, 3, 4)])
    est = sample_census(h, 3, SampleBudget({2: 5}), seed=0)
    prof = abundance_profile(est, [count_motifs(h, 3)])
    pats = enumerate_patterns(3)
    for i, p in enumerate(pats):
        if max(len(e) for e in p) == 3:
            assert prof.values[i] == 0 and not prof.supported[i]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1, 1, allow_nan=False), min_size=6, max_size=6))
def test_metrics_identity(vals):
    v = np.array(vals)
    norm = np.linalg.norm(v)
    if norm == 0 or v.std() == 0:
        return
    real = abundance_profile(_census([1] * 6), [_census([1] * 6)])
    real.values = v / norm
    m = profile_metrics(real, real)
    assert m.rho == pytest.approx(1.0)
    assert m.maxae == 0 and m.mae == 0


def test_metrics_values():
    a = abundance_profile(_census([10, 0, 0, 0, 0, 1]), [_census([1] * 6)])
    b = abundance_profile(_census([0, 10, 0, 0, 0, 1]), [_census([1] * 6)])
    m = profile_metrics(a, b)
    diff = np.abs(a.values - b.values)
    assert m.maxae == pytest.approx(diff.max()) and m.mae == pytest.approx(diff.mean())
    assert m.rho == pytest.approx(np.corrcoef(a.values, b.values)[0, 1])


def test_metrics_zero_variance_is_nan():
    a = abundance_profile(_census([1] * 6), [_census([1] * 6)])
    assert math.isnan(profile_metrics(a, a).rho)


def test_correlation_matrix():
    profs = {}
    for i, counts in enumerate([[9, 1, 0, 2, 0, 0], [8, 2, 0, 3, 0, 1], [0, 0, 9, 0, 4, 0]]):
        profs[f"g{i}"] = abundance_profile(_census(counts), [_census([2] * 6)])
    mat = profile_correlation_matrix(profs)
    assert np.array_equal(mat.values, mat.values.T)
    assert np.all(np.diag(mat.values) == 1.0)
    assert mat.values[0, 1] > mat.values[0, 2]
    data = json.loads(mat.to_json())
    assert data["labels"] == ["g0", "g1", "g2"]
    assert mat.to_csv().splitlines()[0] == ",g0,g1,g2"
    with pytest.raises(ValueError):
        profile_correlation_matrix({"a": profs["g0"]})


def test_exact_reference_repeatable():
    h = generate(GenSpec(25, {2: 40, 3: 15, 4: 4}, seed=5))
    p1, n1 = exact_reference(h, 4, null_samples=3, seed=1)
    p2, n2 = exact_reference(h, 4, null_samples=3, seed=1)
    assert np.array_equal(p1.values, p2.values) and np.array_equal(n1.mean, n2.mean)
    assert n1.n == 3
