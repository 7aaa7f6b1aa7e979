"""The junta gap: how far every small-support approximation must stay.

The leaf-addressed construction forces any function depending on few
coordinates to disagree with it on a guaranteed fraction of inputs:
whenever a singleton fiber's leaf is ignored, half of that fiber is lost.
The exhaustive search certifies the bound from the other side.
"""

import juntagap as jg

family = jg.SetFamily(d=5, t=2, sets=((1, 2), (3, 4), (1, 3), (2, 4)))
h = jg.TribesAddressing(family).handle()
p1 = jg.exact_hit_statistics(family).p1
print(f"fixture family: Pr(1 hit) = {p1}\n")

print("best junta distance vs the guaranteed floor, k = 0..8:")
print(f"  {'k':>2} {'best distance':>14} {'lower bound':>12}   support of the optimum")
for k in range(9):
    result = jg.best_k_junta(h, k)
    bound = jg.junta_distance_lower_bound(p1, k, family.t)
    print(f"  {k:>2} {str(result.distance):>14} {str(bound):>12}   "
          f"{list(result.spec.coords)}")
print()

# The influence heuristic picks supports without searching; it can tie the
# optimum but never beat it.
for k in (1, 2, 4):
    heuristic = jg.top_influence_junta(h, k)
    exact = jg.best_k_junta(h, k)
    print(f"k={k}: top-influence support {list(heuristic.spec.coords)} "
          f"distance {heuristic.distance} (optimum {exact.distance})")
print()

# On a fixed support, nothing does better than the per-fiber majority.
res = jg.fiber_majority_junta(jg.majority_handle(3), (1,))
print("majority of 3 restricted to coordinate {1}: table",
      res.spec.table.tolist(), "distance", res.distance)
