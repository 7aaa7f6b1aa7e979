"""Tour of the constructions: clause families and the functions they define.

A family is a sequence of m size-t subsets ("clauses") of the d-1 address
coordinates.  An address word hits a clause when all of its coordinates
are 1; the number of hits drives everything built here.
"""

import juntagap as jg

# A tiny fixed family on 4 address bits: four clauses of size 2.
family = jg.SetFamily(d=5, t=2, sets=((1, 2), (3, 4), (1, 3), (2, 4)))
print("clauses:", family.sets)
print()

print("hit sets for a few address words (address bits are x1..x4):")
for bits in ("0000", "1100", "1110", "1111"):
    x = jg.InputWord.from_bits(bits)
    print(f"  x={bits}: hits {jg.hit_set(family, x) or '()'}")
print()

# The leaf-addressed function on (address, leaves): 1 with two or more
# hits, 0 with none, and the addressed leaf bit with exactly one.
f = jg.TribesAddressing(family)
print("leaf routing at x=1100 (only clause 1 hits, so the output copies y1):")
for leaves in ("1000", "0111"):
    w = jg.InputWord.from_bits("1100" + leaves)
    print(f"  y={leaves}: f = {f.eval(w)}")
print()

# Setting every leaf to 1 recovers the plain OR of the clauses.
G = jg.talagrand(family)
ones = jg.InputWord(4, 15)
assert all(
    f.eval_parts(jg.InputWord(4, xv), ones) == G(jg.InputWord(4, xv))
    for xv in range(16)
)
print("with all leaves forced to 1, f collapses to the OR of the clauses.")
print()

# The monotone addressing function: a weight threshold whose tie fiber is
# routed through a leaf selected by the address value.
af = jg.MonotoneAddressing(3)
h = af.handle()
print("monotone addressing at d=3 (threshold 1, leaves y0..y3):")
print("  x=11, any leaves      ->", h(jg.InputWord.from_bits("110000")))
print("  x=00, any leaves      ->", h(jg.InputWord.from_bits("000000")))
print("  x=10, leaves 0010     ->", h(jg.InputWord.from_bits("100010")),
      " (tie: address 10 = 2 selects y2)")
