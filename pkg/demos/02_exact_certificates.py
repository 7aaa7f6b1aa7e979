"""Structural certificates: monotonicity and decision-tree depth.

Both claims about the leaf-addressed construction are machine-checked
exactly: every cube edge is compared for monotonicity, and every address
fiber's restriction is matched against what its hit set dictates.
"""

import juntagap as jg

family = jg.sample_family(9, 3, 8, seed=1)
f = jg.TribesAddressing(family)
print(f"random family: d={family.d}, t={family.t}, m={family.m} "
      f"(function on {f.arity} coordinates)")

violation = jg.check_monotone(f.handle())
print("monotonicity over all", f.arity * 2 ** (f.arity - 1), "edges:",
      "no violation" if violation is None else violation)

cert = jg.depth_certificate(f)
print(f"depth certificate: passed={cert.passed}, "
      f"decision-tree depth <= {cert.depth_bound}")
print()

# What the certificate checks, spelled out on one fiber: after fixing the
# address bits, the restriction is constant or a single-leaf copy.
small = jg.SetFamily(d=5, t=2, sets=((1, 2), (3, 4), (1, 3), (2, 4)))
g = jg.TribesAddressing(small)
for bits in ("0000", "1100", "1111"):
    x = jg.InputWord.from_bits(bits)
    kind, which = jg.classify_restriction(g.handle(), g.layout, x)
    label = f"constant {which}" if kind == "constant" else f"copies leaf y{which}"
    print(f"  restriction at x={bits}: {label}")
print()

# A broken evaluator is caught: route one single-hit fiber to the wrong leaf.
class Broken(jg.TribesAddressing):
    def eval(self, w):
        if w.value >> 4 == 0b1100:
            return w.bit(6)
        return super().eval(w)

bad = jg.depth_certificate(Broken(small))
print(f"corrupted evaluator: passed={bad.passed}, "
      f"caught at x={bad.failing_x} y={bad.failing_y}")
