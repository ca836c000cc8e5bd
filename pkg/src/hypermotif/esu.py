"""ESU enumeration of connected induced vertex subsets of a simple graph.

These are lazy generators used as the reference implementation; the census
and sampling code run the equivalent compiled loop in ``_kernels``.
"""

from collections import deque
from typing import Iterator


def _extend(adj, sub, ext, closed, root, k):
    if len(sub) == k:
        yield tuple(sorted(sub))
        return
    ext = list(ext)
    while ext:
        w = ext.pop()
        new = []
        grown = set(closed)
        for u in adj[w]:
            if u not in grown:
                grown.add(u)
                if root is None or u > root:
                    new.append(u)
        yield from _extend(adj, sub + [w], ext + new, grown, root, k)


def esu(g, k: int) -> Iterator[tuple]:
    """Yield every connected induced k-vertex subset of ``g`` exactly once.

    Classical root ordering: a subset is generated from its smallest vertex
    and only higher-numbered vertices are added. Subsets come out sorted.
    """
    if k < 1:
        raise ValueError("k must be positive")
    adj = g.adjacency
    for v in range(g.n):
        closed = {v, *adj[v]}
        yield from _extend(adj, [v], [u for u in adj[v] if u > v], closed, v, k)


def _is_connected_in(adj, vset) -> bool:
    vset = set(vset)
    start = next(iter(vset))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u in vset and u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(vset)


def esu_anchored(g, seed, k: int) -> Iterator[tuple]:
    """Yield every connected induced k-subset of ``g`` containing ``seed``.

    ``seed`` must induce a connected subgraph; it plays the role of the ESU
    root with no ordering restriction on the vertices that join it.
    """
    seed = sorted(set(seed))
    if len(seed) > k:
        raise ValueError("seed is larger than k")
    adj = g.adjacency
    if not _is_connected_in(adj, seed):
        raise ValueError("seed does not induce a connected subgraph")
    closed = set(seed)
    ext = []
    for v in seed:
        for u in adj[v]:
            if u not in closed:
                closed.add(u)
                ext.append(u)
    yield from _extend(adj, list(seed), ext, closed, None, k)
