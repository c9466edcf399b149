"""Cohomology tables, the tensor facts and the Z_4 chase.

Spinor bundles are ACM, so their tables are concentrated in H^0 and H^n.
Products of two spinors are not: the few intermediate classes live in a small
data file, and the last part recomputes H^1 of the rank-2 bundle Z_4 from
exact sequences alone.
"""
from quadmonad import parse_bundle_expr, wedge2
from quadmonad.cohomology import cohomology
from quadmonad.oracles import derive_tensor_rows, z4_tables

print(cohomology(parse_bundle_expr("S'(1)", 4), (-5, 3)).render())
print()
w = wedge2(parse_bundle_expr("S'(1) + S''(1)", 4))
print(f"wedge^2 = {w}")
print(cohomology(w, (-5, 3)).render())

print("\nTensor rows rebuilt without reading the data file:")
for row in derive_tensor_rows():
    print("  n={} {:<8} H^{} in degree {:>2}: dim {}".format(*row))

g, z = z4_tables()
print("\nG_4 = ker(S'(1)+S''(1) -> O(1)):")
print(g.render())
print("\nZ_4 = G_4 / O:")
print(z.render())
