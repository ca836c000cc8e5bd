import itertools
import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermotif import Pattern, build_table, canonicalize, classify, enumerate_patterns
from hypermotif.patterns import (
    LazyClassifier,
    automorphism_count,
    canonical_mask,
    countmax,
    decode,
    edges_from_mask,
    mask_connected,
    mask_from_edges,
    nbits,
    universe,
)

from oracles import brute_canonical, burnside_class_counts, isomorphic, linked

ORBIT_COUNTS = burnside_class_counts(5)


def test_class_counts_small():
    assert len(enumerate_patterns(3)) == 6 == ORBIT_COUNTS[3]
    assert len(enumerate_patterns(4)) == 171 == ORBIT_COUNTS[4]


@pytest.mark.slow
def test_class_count_order5():
    pats = enumerate_patterns(5)
    assert len(pats) == 611846 == ORBIT_COUNTS[5]
    sample = random.Random(3).sample(pats, 200)
    for p in sample:
        assert brute_canonical(p, range(5)) == tuple(p)


def test_order3_catalog_is_exact():
    expect = {
        ((0, 1), (0, 2)),
        ((0, 1), (0, 2), (1, 2)),
        ((0, 1, 2),),
        ((0, 1), (0, 1, 2)),
        ((0, 1), (0, 2), (0, 1, 2)),
        ((0, 1), (0, 2), (1, 2), (0, 1, 2)),
    }
    assert {tuple(p) for p in enumerate_patterns(3)} == expect


@pytest.mark.parametrize("k", [3, 4])
def test_catalog_matches_brute_force(k):
    reps = set()
    for mask in range(1, 1 << nbits(k)):
        edges = edges_from_mask(mask, k)
        if linked(range(k), edges):
            reps.add(brute_canonical(edges, range(k)))
    assert reps == {tuple(p) for p in enumerate_patterns(k)}


@pytest.mark.parametrize("k", [3, 4])
def test_catalog_pairwise_non_isomorphic(k):
    pats = enumerate_patterns(k)
    rng = random.Random(k)
    for a, b in [rng.sample(pats, 2) for _ in range(300)]:
        assert not isomorphic(a, range(k), b, range(k))


def test_table_sizes():
    t3 = build_table(3)
    assert t3.class_count == 6
    assert len(t3) == t3.n_entries == 36 == 6 * factorial(3)
    # distinct labeled keys: each class contributes 3!/|Aut|
    assert len(t3.index) == sum(factorial(3) // automorphism_count(p) for p in t3.patterns) == 12
    t4 = build_table(4)
    assert len(t4) == 171 * 24
    assert len(t4.index) == sum(24 // automorphism_count(p) for p in t4.patterns)


@pytest.mark.parametrize("k", [3, 4])
def test_table_covers_every_connected_mask(k):
    t = build_table(k)
    for mask in range(1, 1 << nbits(k)):
        connected = linked(range(k), edges_from_mask(mask, k))
        assert (mask in t.index) == connected
        assert (t.lookup[mask] >= 0) == connected
        if connected:
            got = t.classify_mask(mask)
            assert tuple(got) == brute_canonical(edges_from_mask(mask, k), range(k))


def test_mask_round_trip():
    for k in (3, 4, 5):
        u = universe(k)
        assert len(u) == nbits(k) == 2 ** k - k - 1
        rng = random.Random(k)
        for _ in range(50):
            m = rng.randrange(1, 1 << nbits(k))
            assert mask_from_edges(edges_from_mask(m, k), k) == m


def test_encoding_stable():
    p = Pattern(((0, 1), (0, 1, 2)))
    assert p.encode() == "[[0,1],[0,1,2]]"
    assert str(p) == p.encode()
    assert decode(p.encode()) == p
    assert p.order == 3


def _relabeled(edges, k, rng):
    perm = list(range(100, 100 + k))
    rng.shuffle(perm)
    return [tuple(perm[v] for v in e) for e in edges], perm


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 5), st.integers(1, 2 ** 26 - 1), st.randoms(use_true_random=False))
def test_canonicalize_invariant_under_relabeling(k, raw, rng):
    mask = raw % (1 << nbits(k)) or 1
    edges = edges_from_mask(mask, k)
    moved, perm = _relabeled(edges, k, rng)
    p = canonicalize(edges, range(k))
    assert canonicalize(moved, perm) == p
    assert canonicalize(p, range(k)) == p
    assert tuple(p) == brute_canonical(edges, range(k))


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 5), st.integers(1, 2 ** 26 - 1), st.randoms(use_true_random=False))
def test_classify_lookup_matches_direct(k, raw, rng):
    mask = raw % (1 << nbits(k)) or 1
    edges = edges_from_mask(mask, k)
    moved, perm = _relabeled(edges, k, rng)
    if not mask_connected(mask, k):
        with pytest.raises(ValueError):
            classify((tuple(sorted(perm)), moved))
        return
    direct = classify((tuple(sorted(perm)), moved))
    t = build_table(k) if k < 5 else LazyClassifier(5)
    assert classify((tuple(sorted(perm)), moved), t) == direct
    assert canonical_mask(mask, k) == mask_from_edges(direct, k)


def test_lazy_batch_matches_single():
    lazy = LazyClassifier(5)
    rng = random.Random(11)
    masks = [rng.randrange(1, 1 << 26) for _ in range(300)]
    batch = LazyClassifier(5).classify_masks(masks)
    assert batch == [lazy.classify_mask(m) for m in masks]


def test_countmax():
    assert countmax(Pattern(((0, 1), (1, 2)))) == (2, 2)
    assert countmax(Pattern(((0, 1), (0, 1, 2), (0, 1, 3)))) == (3, 2)
    assert countmax(Pattern(((0, 1, 2, 3, 4),))) == (5, 1)


def test_automorphisms():
    assert automorphism_count(Pattern(((0, 1, 2),))) == 6
    assert automorphism_count(Pattern(((0, 1), (0, 2)))) == 2
    for k in (3, 4):
        for p in enumerate_patterns(k):
            brute = sum(
                1 for perm in itertools.permutations(range(k))
                if {tuple(sorted(perm[v] for v in e)) for e in p} == set(p)
            )
            assert automorphism_count(p) == brute


def test_bad_orders():
    with pytest.raises(ValueError):
        enumerate_patterns(6)
    with pytest.raises(ValueError):
        build_table(5)
