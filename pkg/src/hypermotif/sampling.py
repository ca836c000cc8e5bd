"""Approximate motif census by hyperedge sampling.

For each hyperedge size ``s`` a budget of ``S_s`` edges is drawn with
replacement from ``E_s``. Around every sampled edge ``e`` all connected
induced k-vertex sub-hypergraphs containing ``e`` are enumerated, and those
holding an edge larger than ``e`` are thrown away, so an occurrence is only
tallied from one of its largest edges. Raw tallies are scaled by
``|E_s| / (S_s * countmax)`` where ``s`` is the pattern's largest edge size
and ``countmax`` the number of its edges of that size.
"""

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _engine
from .census import MotifCensus, _emit, _fmt, write_meta_header
from .errors import ConfigError, InvariantError
from .esu import esu_anchored
from .hypergraph import Hypergraph, induced_subhypergraph, is_connected
from .patterns import Pattern, classifier, classify, countmax, enumerate_patterns

# S_3 = 3 S_2 and S_4 = 2 S_2; S_5 = S_4 is an unvalidated default.
DEFAULT_RATIOS = {2: 1, 3: 3, 4: 2, 5: 2}


@dataclass(frozen=True)
class SampleBudget:
    """Number of hyperedge samples per edge size."""

    per_size: dict

    def __post_init__(self):
        clean = {}
        for s, v in self.per_size.items():
            s, v = int(s), int(v)
            if v < 0:
                raise ConfigError(f"negative budget for size {s}")
            if s < 2:
                raise ConfigError(f"budget size {s} is below 2")
            clean[s] = v
        object.__setattr__(self, "per_size", dict(sorted(clean.items())))
        if self.total <= 0:
            raise ConfigError("sample budget must be positive")

    @property
    def total(self) -> int:
        return sum(self.per_size.values())

    def __getitem__(self, size):
        return self.per_size.get(size, 0)

    def to_dict(self):
        return {str(s): v for s, v in self.per_size.items()}


def default_budget(h: Hypergraph, k: int, total: int, ratios: Optional[dict] = None) -> SampleBudget:
    """Split ``total`` samples across sizes 2..k in proportion to ``ratios``.

    Ratios are relative to ``S_2`` (weight 1). Sizes with no hyperedges get no
    samples. The per-unit share is floored and the remainder goes to the
    smallest present size (``S_2`` whenever pairwise edges exist).
    """
    if total <= 0:
        raise ConfigError("total number of samples must be positive")
    weights = dict(DEFAULT_RATIOS)
    if ratios:
        weights.update({int(s): r for s, r in ratios.items()})
    present = [s for s in range(2, k + 1) if h.num_edges(s) > 0]
    if not present:
        raise ConfigError(f"hypergraph has no hyperedges of size 2..{k}")
    unit = total // sum(weights[s] for s in present)
    per = {s: int(math.floor(weights[s] * unit)) for s in present}
    per[present[0]] += total - sum(per.values())
    return SampleBudget(per)


def budget_from_multipliers(h: Hypergraph, base: int, multipliers: dict) -> SampleBudget:
    """``S_2 = base`` and ``S_s = multipliers[s] * base``; empty sizes get 0."""
    per = {2: base}
    per.update({s: int(m * base) for s, m in multipliers.items()})
    return SampleBudget({s: (v if h.num_edges(s) else 0) for s, v in per.items()})


def _check_budget(h, k, budget):
    if k not in (3, 4, 5):
        raise ValueError(f"sampling supports k in 3..5, got {k}")
    for s, v in budget.per_size.items():
        if s > k:
            raise ConfigError(f"budget for size {s} exceeds motif order {k}")
        if v > 0 and h.num_edges(s) == 0:
            raise ConfigError(f"budget S_{s}={v} but the hypergraph has no size-{s} hyperedges")


def enumerate_containing(h: Hypergraph, e, k: int):
    """Connected induced k-vertex sub-hypergraphs containing ``e``.

    Sub-hypergraphs holding an edge larger than ``e`` are skipped, so the
    search only walks through edges of size <= |e|.
    """
    e = tuple(sorted(e))
    if e not in h.edge_lookup:
        raise ValueError(f"{e} is not a hyperedge of the hypergraph")
    if len(e) > k:
        raise ValueError(f"hyperedge of size {len(e)} cannot anchor an order-{k} motif")
    g = _engine.projection(h, max_size=len(e))
    for vs in esu_anchored(g, e, k):
        sub = induced_subhypergraph(h, vs)
        if any(len(x) > len(e) for x in sub.edges):
            continue
        if is_connected(sub):
            yield sub


def correct(raw: dict, budget: SampleBudget, h: Hypergraph) -> dict:
    """Scale raw tallies into unbiased estimates (zero tallies are dropped)."""
    out = {}
    for pattern, c in raw.items():
        if not c:
            continue
        top, mult = countmax(pattern)
        s_top = budget[top]
        if s_top == 0:
            raise InvariantError(f"pattern {pattern} tallied without budget for size {top}")
        out[pattern] = c * h.num_edges(top) / (s_top * mult)
    return out


@dataclass(eq=False)
class EstimateCensus(MotifCensus):
    """Sampled census: ``counts`` are corrected estimates, ``raw`` the tallies."""

    raw: dict = field(default_factory=dict)
    budget: Optional[SampleBudget] = None
    seed: Optional[int] = None

    def flag(self, pattern) -> str:
        """``observed``, ``zero`` (sampled size, never seen) or ``unsampled``."""
        if self.raw.get(pattern, 0) > 0:
            return "observed"
        top, _ = countmax(pattern)
        return "zero" if self.budget[top] > 0 else "unsampled"

    def support(self, patterns=None) -> np.ndarray:
        if patterns is None:
            patterns = enumerate_patterns(self.order)
        return np.array([self.flag(p) != "unsampled" for p in patterns], dtype=bool)

    def patterns(self):
        if self.order in (3, 4):
            return enumerate_patterns(self.order)
        return sorted((p for p, c in self.raw.items() if c), key=Pattern.sort_key)

    def to_csv(self, target=None, header=True):
        import csv
        import io

        buf = io.StringIO()
        if header:
            write_meta_header(buf, {"order": self.order, **self.meta})
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pattern", "count", "raw", "estimate", "flag"])
        for p in self.patterns():
            flag = self.flag(p)
            est = "" if flag == "unsampled" else _fmt(float(self.counts.get(p, 0.0)))
            w.writerow([p.encode(), est, self.raw.get(p, 0), est, flag])
        return _emit(buf.getvalue(), target)

    def to_json(self, target=None):
        import json

        from .census import _jsonable

        rows = {}
        for p in self.patterns():
            flag = self.flag(p)
            est = None if flag == "unsampled" else float(self.counts.get(p, 0.0))
            rows[p.encode()] = {"count": est, "raw": self.raw.get(p, 0), "estimate": est, "flag": flag}
        data = {"order": self.order, "meta": self.meta, "counts": rows}
        return _emit(json.dumps(data, indent=2, default=_jsonable) + "\n", target)


def draw_samples(h: Hypergraph, budget: SampleBudget, rng) -> dict:
    """Edge index arrays per size, drawn uniformly with replacement."""
    out = {}
    for s, n_s in budget.per_size.items():
        if n_s:
            out[s] = rng.integers(0, h.num_edges(s), size=n_s)
    return out


def sample_census(h: Hypergraph, k: int, budget: SampleBudget, seed=None, backend: str = "numba") -> EstimateCensus:
    """Estimate the order-k census from ``budget`` sampled hyperedges.

    The same ``(h, k, budget, seed)`` always gives the same result.
    """
    _check_budget(h, k, budget)
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    draws = draw_samples(h, budget, rng)
    raw = Counter()
    leaves = 0
    if backend == "numba":
        edict = _engine.edge_dict(h)
        masks = Counter()
        for s, idx in draws.items():
            edges = h.edges_by_size[s]
            seeds = np.array([edges[i] for i in idx], dtype=np.int64).reshape(len(idx), s)
            g = _engine.projection(h, max_size=s)
            m, n_leaves = _engine.esu_masks(g, k, edict, seeds=seeds, restrict=False, allow_max=s)
            masks.update(m)
            leaves += n_leaves
        raw.update(_engine.classify_counts(masks, k))
    elif backend == "python":
        cls = classifier(k)
        for s, idx in draws.items():
            edges = h.edges_by_size[s]
            for i in idx:
                for sub in enumerate_containing(h, edges[i], k):
                    leaves += 1
                    raw[classify(sub, cls)] += 1
    else:
        raise ValueError(f"unknown backend {backend!r}")
    estimates = correct(raw, budget, h)
    meta = {
        "algorithm": "sample",
        "backend": backend,
        "seed": seed,
        "budget": budget.to_dict(),
        "samples": budget.total,
        "candidates": leaves,
        "runtime_s": round(time.perf_counter() - started, 6),
    }
    return EstimateCensus(k, estimates, meta, raw=dict(raw), budget=budget, seed=seed)


@dataclass
class BudgetSearchResult:
    """Mean profile correlation per (S_3/S_2, S_4/S_2) multiplier cell."""

    a_values: list
    b_values: list
    matrix: np.ndarray
    best: tuple
    per_graph: list = field(default_factory=list)

    def to_csv(self, target=None):
        lines = ["a\\b," + ",".join(str(b) for b in self.b_values)]
        for a, row in zip(self.a_values, self.matrix):
            lines.append(f"{a}," + ",".join(repr(float(v)) for v in row))
        return _emit("\n".join(lines) + "\n", target)


def budget_search(
    h_list,
    k: int = 4,
    base: int = 50,
    a_values=(1, 2, 3, 4),
    b_values=(1, 2, 3, 4),
    repetitions: int = 10,
    seed: int = 0,
    null_samples: int = 10,
    epsilon: float = 4.0,
    swap_mult: float = 10.0,
    exact_profiles=None,
):
    """Grid search of per-size budget multipliers with ``S_2 = base``.

    For every cell ``(a, b)`` the sampler runs with ``S_3 = a*base`` and
    ``S_4 = b*base``; each estimate is turned into a significance profile
    against the hypergraph's (exact) null ensemble and scored by Pearson
    correlation with the exact profile. Scores are averaged over repetitions
    and then over hypergraphs; the best cell is the argmax.
    """
    from .significance import abundance_profile, exact_reference, profile_metrics

    if k != 4:
        raise ValueError("budget search is defined for order-4 motifs")
    a_values, b_values = list(a_values), list(b_values)
    seq = np.random.SeedSequence(seed)
    graph_seqs = seq.spawn(len(h_list))
    per_graph = []
    for gi, h in enumerate(h_list):
        null_seq, *cell_seqs = graph_seqs[gi].spawn(len(a_values) * len(b_values) + 1)
        if exact_profiles is not None:
            exact_prof, null_mean = exact_profiles[gi]
        else:
            exact_prof, null_mean = exact_reference(
                h, k, null_samples=null_samples, seed=null_seq, epsilon=epsilon, swap_mult=swap_mult,
            )
        mat = np.full((len(a_values), len(b_values)), np.nan)
        for i, a in enumerate(a_values):
            for j, b in enumerate(b_values):
                budget = budget_from_multipliers(h, base, {3: a, 4: b})
                rhos = []
                for rep_seq in cell_seqs[i * len(b_values) + j].spawn(repetitions):
                    est = sample_census(h, k, budget, seed=int(rep_seq.generate_state(1)[0]))
                    prof = abundance_profile(est, null_mean, epsilon=epsilon)
                    rhos.append(profile_metrics(prof, exact_prof).rho)
                mat[i, j] = np.nanmean(rhos)
        per_graph.append(mat)
    matrix = np.mean(per_graph, axis=0)
    i, j = np.unravel_index(np.nanargmax(matrix), matrix.shape)
    return BudgetSearchResult(a_values, b_values, matrix, (a_values[i], b_values[j]), per_graph)
