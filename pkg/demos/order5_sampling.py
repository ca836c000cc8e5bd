"""Order-5 motifs are only reachable by sampling."""

from hypermotif import GenSpec, canonicalize, default_budget, generate, sample_census

h = generate(GenSpec(1500, {2: 1500, 3: 600, 4: 150, 5: 30}, nesting_prob=0.3, seed=4))
print(h)

budget = default_budget(h, 5, 200)
print("budget", budget.per_size)
est = sample_census(h, 5, budget, seed=1)
print(len(est.counts), "order-5 classes observed")

top = sorted(est.counts.items(), key=lambda kv: -kv[1])[:8]
for p, c in top:
    print(f"{c:10.1f}  {p}")

bare = canonicalize([(0, 1, 2, 3, 4)])
# nesting puts sub-edges inside some 5-edges; the rest form the bare class
bare_exact = sum(1 for e in h.edges_by_size[5] if not any(f != e and set(f) < set(e) for f in h.edges))
print("bare 5-edge estimate", est[bare], "exact", bare_exact, "of", h.num_edges(5), "5-edges")
