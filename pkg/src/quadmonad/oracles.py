"""Independent derivations behind the tabulated tensor facts and the Z_4 check.

Nothing here reads ``tensor_facts.txt``: the functions rebuild its rows from
the spinor sequence on Q_4, Serre duality and the dimension-one statements,
using the generic exact-sequence solver.
"""
from __future__ import annotations

from itertools import combinations

import sympy

from .bundles import MINUS, PLUS, Atom, BundleExpr, dual_atom, line, spinor, tensor_pair, tensor_twist
from .chow import QuadricSpace
from .cohomology import CohomologyTable, h0_line, les_propagate

Q4 = QuadricSpace(4)
N_SECTIONS = 4  # h^0(S'(1)) = h^0(S''(1)) on Q_4


def _self_dual_shift(pair: Atom) -> int:
    """s with pair^v = pair(s)."""
    return tensor_twist(dual_atom(Q4, pair)) - tensor_twist(pair)


def same_family_h2_degree(kind: str) -> int:
    """Degree of the one-dimensional H^2_*(X (x) X).

    Serre duality gives h^2(P(t)) = h^2(P(s - t - 4)); a one-dimensional module
    must sit at the centre of that symmetry.
    """
    pair = tensor_pair(Atom(kind, 0), Atom(kind, 0))
    s = _self_dual_shift(pair)
    if (s - 4) % 2:
        raise AssertionError("no symmetric degree for a one-dimensional module")
    return (s - 4) // 2


def mixed_h1_degrees(window=(-6, 6)) -> dict[int, int]:
    """H^1_*(S' (x) S'') by chasing 0 -> S''(x)S''(-1) -> S''(-1)^4 -> S'(x)S'' -> 0."""
    d2 = same_family_h2_degree(MINUS)
    lo, hi = window
    sub = CohomologyTable.derived(
        Q4,
        {(2, t): (1 if t == d2 + 1 else 0) for t in range(lo - 1, hi + 2)},
        window,
        "S''*S''(-1)",
    )
    mid = CohomologyTable(Q4, BundleExpr(Q4, [spinor(MINUS, -1)] * N_SECTIONS), (), window)
    quo = CohomologyTable.derived(Q4, {}, window, "S'*S''")
    _, _, quo = les_propagate(sub, mid, quo)
    return {t: quo.dim(1, t) for t in quo.twists() if quo.dim(1, t)}


def derive_tensor_rows() -> list[tuple[int, str, int, int, int]]:
    """Rows (n, pair, i, degree, dim) of the tensor fact file."""
    mixed = tensor_pair(Atom(PLUS, 0), Atom(MINUS, 0))
    h1 = mixed_h1_degrees()
    s = _self_dual_shift(mixed)
    rows = [(4, "S'*S''", 1, t, d) for t, d in sorted(h1.items())]
    # h^3(P(t)) = h^1(P(s - t - 4))
    rows += [(4, "S'*S''", 3, s - t - 4, d) for t, d in sorted(h1.items())]
    # H^2_*(S'(x)S'') = 0: condition 3 holds for the existing monad
    # 0 -> O -> S'(1)+S''(1) -> O(1) -> 0, whose wedge square contains S'(1)(x)S''(1).
    for kind in (PLUS, MINUS):
        rows.append((4, f"{kind}*{kind}", 2, same_family_h2_degree(kind), 1))
    return rows


# --- Z_4 ------------------------------------------------------------------------
def _plucker_pairs():
    return list(combinations(range(4), 2))


def section_map_rank(f=(1, 0, 0, 0), v=(1, 0, 0, 0)) -> int:
    """Rank of H^0(S'(1) + S''(1)) -> H^0(O(1)) for an explicit map.

    Q_4 = G(2, V), S'(1) = U^v with H^0 = V^v, S''(1) = V/U with H^0 = V and
    O(1) has H^0 = wedge^2 V^v.  The map is g -> g ^ f on the first summand and
    w -> vol(v, w, ., .) on the second.  It is surjective as a bundle map when
    f(v) != 0.
    """
    pairs = _plucker_pairs()
    cols = []
    for k in range(4):
        g = [int(k == i) for i in range(4)]
        cols.append([g[i] * f[j] - g[j] * f[i] for i, j in pairs])
    for k in range(4):
        w = [int(k == i) for i in range(4)]
        col = []
        for i, j in pairs:
            ei = [int(i == r) for r in range(4)]
            ej = [int(j == r) for r in range(4)]
            col.append(sympy.Matrix([list(v), w, ei, ej]).det())
        cols.append(col)
    return sympy.Matrix(cols).T.rank()


def z4_tables(window=(-6, 6)):
    """Cohomology of G_4 = ker(S'(1)+S''(1) -> O(1)) and of Z_4.

    The only input beyond dimension chasing is the cokernel of the section
    map: H^1_*(G_4) is a quotient of H^0_*(O(1)), which is cyclic, generated in
    degree -1; when the degree-0 image is all of H^0(O(1)) the quotient
    vanishes in every degree >= 0.
    """
    lo, hi = window
    B = CohomologyTable(Q4, BundleExpr(Q4, [spinor(PLUS, 1), spinor(MINUS, 1)]), (), window)
    C = CohomologyTable(Q4, BundleExpr(Q4, [line(1)]), (), window)
    O = CohomologyTable(Q4, BundleExpr(Q4, [line(0)]), (), window)
    known = {}
    if section_map_rank() == h0_line(4, 1):
        known = {(1, t): 0 for t in range(0, hi + 1)}
    G = CohomologyTable.derived(Q4, known, window, "G_4")
    G, B, C = les_propagate(G, B, C)
    Z = CohomologyTable.derived(Q4, {}, window, "Z_4")
    O, G, Z = les_propagate(O, G, Z)
    return G, Z
