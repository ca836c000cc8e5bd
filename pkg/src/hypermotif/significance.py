"""Null models, significance profiles and profile comparison metrics."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .census import MotifCensus, _emit, count_motifs
from .hypergraph import Hypergraph
from .patterns import enumerate_patterns

DEFAULT_EPSILON = 4.0
DEFAULT_NULL_SAMPLES = 10
DEFAULT_SWAP_MULT = 10.0


def configuration_sample(h: Hypergraph, seed=None, swap_attempts: Optional[int] = None) -> Hypergraph:
    """Randomize ``h`` by member swaps between pairs of hyperedges.

    Each attempt picks two distinct hyperedges uniformly, one member of each
    uniformly, and exchanges the two members. Attempts that would repeat a
    vertex inside an edge or duplicate an existing hyperedge are rejected, so
    vertex degrees and hyperedge sizes are preserved exactly and the result
    stays simple. ``swap_attempts`` defaults to ``10 * |E|``.
    """
    m = len(h.edges)
    if swap_attempts is None:
        swap_attempts = int(DEFAULT_SWAP_MULT * m)
    edges = list(h.edges)
    if m < 2 or swap_attempts <= 0:
        return Hypergraph(edges, n=h.n, labels=h.labels)
    rng = np.random.default_rng(seed)
    first = rng.integers(0, m, size=swap_attempts)
    second = rng.integers(0, m - 1, size=swap_attempts)
    second += second >= first
    pick = rng.random((swap_attempts, 2))
    present = set(edges)
    for t in range(swap_attempts):
        i, j = first[t], second[t]
        e1, e2 = edges[i], edges[j]
        a = e1[int(pick[t, 0] * len(e1))]
        b = e2[int(pick[t, 1] * len(e2))]
        if b in e1 or a in e2:
            continue
        new1 = tuple(sorted(b if v == a else v for v in e1))
        new2 = tuple(sorted(a if v == b else v for v in e2))
        present.discard(e1)
        present.discard(e2)
        if new1 in present or new2 in present:
            present.add(e1)
            present.add(e2)
            continue
        present.add(new1)
        present.add(new2)
        edges[i] = new1
        edges[j] = new2
    return Hypergraph(edges, n=h.n, labels=h.labels)


@dataclass
class NullEnsemble:
    replicas: list
    swap_count: int
    seed: object = None


def null_ensemble(h: Hypergraph, n_samples: int = DEFAULT_NULL_SAMPLES, seed=None,
                  swap_mult: float = DEFAULT_SWAP_MULT) -> NullEnsemble:
    """``n_samples`` independent configuration-model replicas of ``h``."""
    swaps = int(swap_mult * len(h.edges))
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    seqs = root.spawn(n_samples)
    replicas = [configuration_sample(h, seed=s, swap_attempts=swaps) for s in seqs]
    return NullEnsemble(replicas, swaps, seed)


def _census_job(args):
    h, k, algorithm = args
    return count_motifs(h, k, algorithm=algorithm)


def census_many(hypergraphs, k: int, algorithm: str = "efficient", workers: int = 1) -> list:
    """Exact censuses of several hypergraphs, optionally in worker processes."""
    jobs = [(h, k, algorithm) for h in hypergraphs]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(jobs) <= 1:
        return [_census_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_census_job, jobs))


@dataclass
class SignificanceProfile:
    """Unit-norm vector of motif abundances over all patterns of one order.

    ``abundance`` holds the unnormalized per-pattern values in [-1, 1];
    ``values`` is ``abundance`` scaled to unit L2 norm, or left as is (and
    ``degenerate`` set) when every abundance is zero.
    """

    order: int
    patterns: list
    values: np.ndarray
    abundance: np.ndarray
    epsilon: float
    degenerate: bool = False
    supported: Optional[np.ndarray] = None
    name: str = ""

    def as_dict(self):
        return {p: float(v) for p, v in zip(self.patterns, self.values)}


def _mean_null(nulls, patterns):
    if isinstance(nulls, NullCounts):
        return nulls.mean
    nulls = list(nulls)
    if not nulls:
        raise ValueError("at least one null census is required")
    return np.mean([c.vector(patterns) for c in nulls], axis=0)


@dataclass
class NullCounts:
    """Precomputed mean null counts over a fixed pattern list."""

    order: int
    mean: np.ndarray
    n: int

    @classmethod
    def from_censuses(cls, nulls, patterns=None):
        nulls = list(nulls)
        if not nulls:
            raise ValueError("at least one null census is required")
        order = nulls[0].order
        patterns = patterns if patterns is not None else enumerate_patterns(order)
        return cls(order, _mean_null(nulls, patterns), len(nulls))


def abundance_profile(real: MotifCensus, nulls, epsilon: float = DEFAULT_EPSILON) -> SignificanceProfile:
    """Relative abundance of every pattern with respect to a null ensemble.

    ``delta = (N_real - <N_null>) / (N_real + <N_null> + epsilon)`` per
    pattern, then normalized to unit length. ``nulls`` is a list of null
    censuses (or a :class:`NullCounts`). Patterns that a sampled census could
    not observe (no budget at their largest edge size) get 0 and are marked
    in ``supported``.
    """
    patterns = enumerate_patterns(real.order)
    if not isinstance(nulls, NullCounts):
        nulls = list(nulls)
        if not nulls:
            raise ValueError("at least one null census is required")
        if any(c.order != real.order for c in nulls):
            raise ValueError("null censuses must share the real census order")
    elif nulls.order != real.order:
        raise ValueError("null counts must share the real census order")
    observed = real.vector(patterns)
    expected = _mean_null(nulls, patterns)
    denom = observed + expected + epsilon
    with np.errstate(invalid="ignore", divide="ignore"):
        delta = np.where(denom > 0, (observed - expected) / np.where(denom > 0, denom, 1.0), 0.0)
    supported = real.support(patterns) if hasattr(real, "support") else None
    if supported is not None:
        delta = np.where(supported, delta, 0.0)
    norm = np.linalg.norm(delta)
    degenerate = norm == 0
    values = delta if degenerate else delta / norm
    return SignificanceProfile(real.order, patterns, values, delta, epsilon, degenerate, supported)


class ProfileMetrics(NamedTuple):
    rho: float
    maxae: float
    mae: float


def profile_metrics(estimated: SignificanceProfile, exact: SignificanceProfile) -> ProfileMetrics:
    """Pearson correlation, max and mean absolute error between two profiles.

    ``rho`` is NaN when either profile has zero variance.
    """
    if estimated.order != exact.order or len(estimated.values) != len(exact.values):
        raise ValueError("profiles must share order and pattern indexing")
    x = np.asarray(estimated.values, dtype=float)
    y = np.asarray(exact.values, dtype=float)
    diff = np.abs(x - y)
    if x.std() == 0 or y.std() == 0:
        rho = float("nan")
    else:
        rho = float(np.clip(np.corrcoef(x, y)[0, 1], -1.0, 1.0))
    return ProfileMetrics(rho, float(diff.max()), float(diff.mean()))


@dataclass
class CorrelationMatrix:
    labels: list
    values: np.ndarray = field(repr=False)

    def to_csv(self, target=None):
        lines = ["," + ",".join(self.labels)]
        for lab, row in zip(self.labels, self.values):
            lines.append(lab + "," + ",".join(repr(float(v)) for v in row))
        return _emit("\n".join(lines) + "\n", target)

    def to_json(self, target=None):
        import json

        data = {"labels": self.labels, "matrix": [[float(v) for v in row] for row in self.values]}
        return _emit(json.dumps(data, indent=2) + "\n", target)


def profile_correlation_matrix(profiles) -> CorrelationMatrix:
    """Pairwise Pearson correlations between named profiles.

    ``profiles`` is a mapping name -> profile or a list of (name, profile).
    """
    items = list(profiles.items()) if isinstance(profiles, dict) else list(profiles)
    if len(items) < 2:
        raise ValueError("need at least two profiles")
    orders = {p.order for _, p in items}
    if len(orders) != 1:
        raise ValueError("profiles must share one motif order")
    labels = [str(name) for name, _ in items]
    data = np.array([p.values for _, p in items], dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        mat = np.corrcoef(data)
    mat = np.clip((mat + mat.T) / 2, -1.0, 1.0)
    np.fill_diagonal(mat, 1.0)
    return CorrelationMatrix(labels, mat)


def exact_reference(h: Hypergraph, k: int, null_samples: int = DEFAULT_NULL_SAMPLES, seed=None,
                    epsilon: float = DEFAULT_EPSILON, swap_mult: float = DEFAULT_SWAP_MULT,
                    workers: int = 1, real: Optional[MotifCensus] = None):
    """Exact profile of ``h`` and the mean counts of its null ensemble."""
    ens = null_ensemble(h, null_samples, seed=seed, swap_mult=swap_mult)
    nulls = census_many(ens.replicas, k, workers=workers)
    null_counts = NullCounts.from_censuses(nulls)
    if real is None:
        real = count_motifs(h, k)
    return abundance_profile(real, null_counts, epsilon), null_counts
