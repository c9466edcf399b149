"""Intersection theory on Q_4 and the Chern classes of spinor bundles.

Run: python demos/01_chow_ring.py
"""
from quadmonad import ChowClass, QuadricSpace, divide, format_class, parse_bundle_expr, total_chern

q4 = QuadricSpace(4)
print(f"Chow basis of {q4}: {', '.join(q4.basis)}")

# h^2 splits into the two planes a and b; they meet in a point only with themselves
h = ChowClass.h(q4)
a, b = ChowClass.basis_class(q4, "a"), ChowClass.basis_class(q4, "b")
print("h^2   =", format_class(h**2))
print("a*a   =", format_class(a * a), "  a*b =", format_class(a * b))
print("h^4   =", format_class(h**4), " (the quadric has degree 2)")

# The two spinor bundles twisted by 1 have a vanishing top Chern class.
B = parse_bundle_expr("S'(1) + S''(1)", 4)
c = total_chern(B)
print(f"\nc({B}) = {format_class(c)}")
print("c_4 =", format_class(c.part(4)))

# G_4(b) is the kernel of S'(1+b) + S''(1+b) -> O(1+b); its Chern class is a quotient.
print("\nc_3(G_4(b)) by exact division:")
for t in range(-2, 4):
    cb = total_chern(parse_bundle_expr(f"S'({1 + t}) + S''({1 + t})", 4))
    cc = total_chern(parse_bundle_expr(f"O({1 + t})", 4))
    print(f"  b = {t:>2}: {format_class(divide(cb, cc).part(3)):>10}   2b(1+b+b^2) = {2 * t * (1 + t + t * t)}")
