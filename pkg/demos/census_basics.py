"""Exact order-3 and order-4 censuses of a small hypergraph."""

from hypermotif import Hypergraph, count_baseline, count_exact_4, enumerate_patterns, project
from hypermotif import induced_subhypergraph, is_connected

# two triangles sharing vertex 2; {0,1} and {3,4} are nested inside them
h = Hypergraph([(0, 1, 2), (0, 1), (2, 3, 4), (3, 4), (4, 5), (1, 5, 6)])
print(h)

# projection links 0-2-3 but no hyperedge sits inside {0, 2, 3}
g = project(h)
sub = induced_subhypergraph(h, (0, 2, 3))
print("0-2 and 2-3 in projection:", g.has_edge(0, 2), g.has_edge(2, 3))
print("induced {0,2,3}:", sub.edges, "connected:", is_connected(sub))

print(len(enumerate_patterns(3)), "order-3 classes,", len(enumerate_patterns(4)), "order-4 classes")

eff = count_exact_4(h)
base = count_baseline(h, 4)
print("baseline == efficient:", eff == base)
for pattern, count in sorted(eff.counts.items(), key=lambda kv: -kv[1]):
    print(f"{count:3d}  {pattern}")

print(eff.to_csv())
