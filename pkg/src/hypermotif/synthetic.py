"""Random hypergraphs with controlled size distribution and nesting."""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .errors import ConfigError
from .hypergraph import Hypergraph

log = logging.getLogger(__name__)


@dataclass
class GenSpec:
    """Generator parameters.

    ``edge_counts`` maps hyperedge size to the number of distinct edges drawn
    uniformly at random. With probability ``nesting_prob`` each drawn edge of
    size >= 3 also emits one proper sub-edge (size >= 2) chosen uniformly
    among all of them.
    """

    n: int
    edge_counts: dict
    nesting_prob: float = 0.0
    seed: object = 0

    def validate(self):
        if self.n < 2:
            raise ConfigError("need at least two vertices")
        if not 0.0 <= self.nesting_prob <= 1.0:
            raise ConfigError("nesting_prob must lie in [0, 1]")
        for s, c in self.edge_counts.items():
            if s < 2:
                raise ConfigError(f"edge size {s} is below 2")
            if c < 0:
                raise ConfigError(f"negative edge count for size {s}")
            if c > comb(self.n, s):
                raise ConfigError(f"{c} distinct edges of size {s} do not fit on {self.n} vertices")


@dataclass
class GenReport:
    """Requested vs. realized edge counts; nested edges that hit an existing edge count as collisions."""

    requested: dict
    realized: dict
    nested_emitted: int = 0
    collisions: dict = field(default_factory=dict)


def _draw_distinct(rng, n, s, count, taken):
    if count > comb(n, s) // 2:
        pool = [c for c in combinations(range(n), s) if c not in taken]
        pick = rng.choice(len(pool), size=count, replace=False)
        return [pool[i] for i in sorted(pick)]
    out = []
    mine = set()
    while len(out) < count:
        e = tuple(sorted(rng.choice(n, size=s, replace=False).tolist()))
        if e in mine or e in taken:
            continue
        mine.add(e)
        out.append(e)
    return out


def _proper_subedges(e):
    return [c for r in range(2, len(e)) for c in combinations(e, r)]


def generate(spec: GenSpec, report: bool = False):
    """Draw a hypergraph from ``spec``; deterministic for a fixed seed.

    Returns the hypergraph, or ``(hypergraph, GenReport)`` with ``report``.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    base = {}
    for s in sorted(spec.edge_counts):
        base[s] = _draw_distinct(rng, spec.n, s, spec.edge_counts[s], set())
    edges = set(e for es in base.values() for e in es)
    nested = 0
    collisions = {}
    for s in sorted(base):
        if s < 3:
            continue
        for e in base[s]:
            if rng.random() < spec.nesting_prob:
                subs = _proper_subedges(e)
                sub = subs[int(rng.integers(len(subs)))]
                nested += 1
                if sub in edges:
                    collisions[len(sub)] = collisions.get(len(sub), 0) + 1
                edges.add(sub)
    h = Hypergraph(edges, n=spec.n)
    if collisions:
        log.info("nested edge collisions per size: %s", collisions)
    if not report:
        return h
    return h, GenReport(dict(spec.edge_counts), h.size_counts(), nested, collisions)


def parse_sizes(text: str) -> dict:
    """Parse ``"2:100,3:40"`` into ``{2: 100, 3: 40}``."""
    out = {}
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        try:
            s, c = part.split(":")
            out[int(s)] = int(c)
        except ValueError:
            raise ConfigError(f"bad size spec {part!r}; expected size:count") from None
    if not out:
        raise ConfigError("empty size spec")
    return out
