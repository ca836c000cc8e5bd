"""How close sampled censuses get to the exact one as the budget grows."""

import numpy as np

from hypermotif import GenSpec, count_exact_4, default_budget, generate, sample_census

h = generate(GenSpec(120, {2: 500, 3: 250, 4: 30}, nesting_prob=1.0, seed=3))
exact = count_exact_4(h)
pats = [p for p, c in exact.counts.items() if c >= 20]
print(h, "-", len(pats), "classes with >= 20 occurrences")

for S in (50, 200, 800):
    budget = default_budget(h, 4, S)
    errs = []
    for seed in range(20):
        est = sample_census(h, 4, budget, seed=seed)
        errs.append([abs(est[p] - exact[p]) / exact[p] for p in pats])
    errs = np.array(errs)
    print(f"S={S:4d} {budget.per_size}  median rel. error {np.median(errs):.3f}")

# one estimate in detail: raw tallies, corrected values and flags
est = sample_census(h, 4, default_budget(h, 4, 200), seed=0)
for p in pats[:5]:
    print(p, "raw", est.raw.get(p, 0), "est", round(est[p], 1), "exact", exact[p], est.flag(p))
