"""Rank four already has many bundles without inner cohomology.

Take an ACM bundle H of rank r > 4 on Q_4 and quotient by a generic O^{r-4}.
The exact sequence forces H^2_* of the quotient to vanish.
"""
from quadmonad import counterexample_rank4, format_class, parse_bundle_expr

for src in ["S' + S'' + O(1)", "S'(1) + S''(1) + O(1)", "S'(1) + S''(1) + O + O(2)"]:
    d = counterexample_rank4(parse_bundle_expr(src, 4))
    print(f"H = {src}")
    print(f"  quotient rank {d.rank}, c = {format_class(d.chern)}")
    print(f"  H^2_* = 0: {d.inner_vanishing}; H globally generated: {d.generic_injective}")
    print("  " + d.table.render().replace("\n", "\n  "))
