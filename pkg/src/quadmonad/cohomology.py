"""Graded cohomology of ACM expressions on quadrics.

The degree-t piece of H^i_*(E) is H^i(E(t)).  Rows are returned as
:class:`GradedModule` values; individual dimensions through
:meth:`CohomologyTable.dim`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .bundles import (
    LINE,
    TENSOR,
    WEDGE,
    Atom,
    BundleError,
    BundleExpr,
    dual,
    dual_atom,
    tensor_pair,
    tensor_twist,
)
from .chow import QuadricSpace
from .facts import pair_key, tensor_facts

DEFAULT_WINDOW = (-10, 10)


class LESInconsistency(ArithmeticError):
    """Known dimensions admit no exact sequence."""


class UnknownModule(ValueError):
    pass


@dataclass(frozen=True)
class GradedModule:
    """Graded dimension data for one cohomology row.

    kind is one of ``zero``, ``free`` (generator degrees), ``cofree`` (the
    Serre dual of a free module, stored by the top degrees of its dual
    generators), ``finite`` (degree -> dimension) or ``unknown``.
    """

    kind: str
    gens: tuple[int, ...] = ()
    parts: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def zero():
        return GradedModule("zero")

    @staticmethod
    def unknown():
        return GradedModule("unknown")

    @staticmethod
    def free(degrees: Iterable[int]):
        degs = tuple(sorted(degrees))
        return GradedModule("free", degs) if degs else GradedModule.zero()

    @staticmethod
    def cofree(tops: Iterable[int]):
        degs = tuple(sorted(tops))
        return GradedModule("cofree", degs) if degs else GradedModule.zero()

    @staticmethod
    def finite(parts: Mapping[int, int]):
        clean = tuple(sorted((d, v) for d, v in parts.items() if v))
        if any(v < 0 for _, v in clean):
            raise ValueError("finite module dimensions must be positive")
        return GradedModule("finite", (), clean) if clean else GradedModule.zero()

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def __add__(self, other: "GradedModule") -> "GradedModule":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.is_unknown or other.is_unknown or self.kind != other.kind:
            return GradedModule.unknown()
        if self.kind == "finite":
            d = dict(self.parts)
            for k, v in other.parts:
                d[k] = d.get(k, 0) + v
            return GradedModule.finite(d)
        maker = GradedModule.free if self.kind == "free" else GradedModule.cofree
        return maker(self.gens + other.gens)

    def shift(self, k: int) -> "GradedModule":
        """Module of E(k) given the module of E: every degree moves by -k."""
        if self.kind in ("free", "cofree"):
            return GradedModule(self.kind, tuple(g - k for g in self.gens))
        if self.kind == "finite":
            return GradedModule("finite", (), tuple((d - k, v) for d, v in self.parts))
        return self

    def total_dim(self) -> int:
        if self.kind == "zero":
            return 0
        if self.kind == "finite":
            return sum(v for _, v in self.parts)
        raise UnknownModule(f"{self.kind} module has no finite total dimension")

    def describe(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "unknown":
            return "?"
        if self.kind == "finite":
            return "finite{" + ", ".join(f"{d}: {v}" for d, v in self.parts) + "}"
        return f"{self.kind}{list(self.gens)}"


def betti0(mod: GradedModule) -> int:
    """Number of minimal generators.

    Finite modules are treated as having trivial multiplication, so every
    basis vector is a generator.
    """
    if mod.kind == "zero":
        return 0
    if mod.kind == "free":
        return len(mod.gens)
    if mod.kind == "finite":
        return mod.total_dim()
    raise UnknownModule(f"betti0 undefined for a {mod.kind} module")


def betti0j(mod: GradedModule, j: int) -> int:
    if mod.kind == "zero":
        return 0
    if mod.kind == "free":
        return mod.gens.count(j)
    if mod.kind == "finite":
        return dict(mod.parts).get(j, 0)
    raise UnknownModule(f"betti0j undefined for a {mod.kind} module")


# --- atomic dimensions ---------------------------------------------------------
def h0_line(n: int, k: int) -> int:
    """h^0(Q_n, O(k)) = h^0(P^{n+1}, O(k)) - h^0(P^{n+1}, O(k-2))."""
    if k < 0:
        return 0
    return comb(n + 1 + k, n + 1) - (comb(n - 1 + k, n + 1) if k >= 2 else 0)


@lru_cache(maxsize=None)
def h0_spinor(n: int, t: int) -> int:
    """h^0(S(t)) for any spinor family, from 0 -> S~(t-1) -> O(t-1)^N -> S(t) -> 0.

    S~ is the other family on even quadrics (same Hilbert function) and S
    itself on odd ones; N = 2^ceil(n/2).  H^1 of spinor bundles vanishes.
    """
    if t <= 0:
        return 0
    return 2 ** ((n + 1) // 2) * h0_line(n, t - 1) - h0_spinor(n, t - 1)


def _tensor_inner(space: QuadricSpace, atom: Atom) -> dict[int, dict[int, int]] | None:
    x, y = atom.parts
    facts = tensor_facts().get((space.n, pair_key(x.kind, y.kind)))
    if facts is None:
        return None
    s = tensor_twist(atom)
    return {i: {d - s: v for d, v in row.items()} for i, row in facts.items()}


@lru_cache(maxsize=None)
def _h0_tensor(n: int, kx: str, ky: str, v: int) -> int | None:
    """h^0 of (X (x) Y)(v) on Q_4 by the spinor sequence tensored with Y."""
    space = QuadricSpace(n)
    if n != 4:
        return None
    if v <= 0:
        # S'(x)S'' = Omega_Q4 and S''(x)S'' have no sections at twist <= 0
        return 0
    other = {"S'": "S''", "S''": "S'"}[kx]
    prev = tensor_pair(Atom(other, 0), Atom(ky, 0))
    inner = _tensor_inner(space, prev)
    if inner is None:
        return None
    h1_prev = inner.get(1, {}).get(v - 1, 0)
    sub = _h0_tensor(n, *sorted_kinds(other, ky), v - 1)
    if sub is None:
        return None
    return 2 ** ((n + 1) // 2) * h0_spinor(n, v - 1) - sub + h1_prev


def sorted_kinds(kx: str, ky: str) -> tuple[str, str]:
    p = tensor_pair(Atom(kx, 0), Atom(ky, 0)).parts
    return p[0].kind, p[1].kind


def atom_dim(space: QuadricSpace, atom: Atom, i: int, t: int) -> int | None:
    """dim H^i(Q_n, atom(t)); None when not determined by the tables."""
    n = space.n
    if n < 3:
        raise ValueError("cohomology tables need n >= 3")
    if i < 0 or i > n:
        return 0
    if atom.kind == WEDGE:
        return None
    if atom.kind == TENSOR:
        inner = _tensor_inner(space, atom)
        if inner is None:
            return None
        if 0 < i < n:
            return inner.get(i, {}).get(t, 0)
        if i == 0:
            x, y = atom.parts
            return _h0_tensor(n, x.kind, y.kind, tensor_twist(atom) + t)
        return atom_dim(space, dual_atom(space, atom), 0, -t - n)
    if 0 < i < n:
        return 0
    if i == n:
        return atom_dim(space, dual_atom(space, atom), 0, -t - n)
    if atom.kind == LINE:
        return h0_line(n, atom.twist + t)
    return h0_spinor(n, atom.twist + t)


def atom_row(space: QuadricSpace, atom: Atom, i: int) -> GradedModule:
    n = space.n
    if i < 0 or i > n:
        return GradedModule.zero()
    if atom.kind == WEDGE:
        return GradedModule.unknown()
    if atom.kind == TENSOR:
        inner = _tensor_inner(space, atom)
        if inner is None or i in (0, n):
            # module structure of sections of a tensor atom is not tabulated
            return GradedModule.unknown()
        return GradedModule.finite(inner.get(i, {}))
    if 0 < i < n:
        return GradedModule.zero()
    if i == 0:
        if atom.kind == LINE:
            return GradedModule.free([-atom.twist])
        return GradedModule.free([1 - atom.twist] * 2 ** ((n + 1) // 2))
    d = dual_atom(space, atom)
    dual_gens = atom_row(space, d, 0).gens
    return GradedModule.cofree([-g - n for g in dual_gens])


# --- tables ----------------------------------------------------------------------
@dataclass(frozen=True)
class CohomologyTable:
    """Cohomology rows of one bundle.

    Expression-backed tables compute everything from the atoms; derived tables
    (kernels, cokernels) carry only the explicitly known dimensions inside
    ``window``.  ``known`` entries override the expression.
    """

    space: QuadricSpace
    expr: BundleExpr | None = None
    known: tuple[tuple[tuple[int, int], int], ...] = ()
    window: tuple[int, int] = DEFAULT_WINDOW
    label: str = ""

    @classmethod
    def derived(cls, space, known: Mapping[tuple[int, int], int] | None = None, window=DEFAULT_WINDOW, label=""):
        return cls(space, None, tuple(sorted((known or {}).items())), window, label)

    @property
    def known_map(self) -> dict[tuple[int, int], int]:
        return dict(self.known)

    def twists(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def dim(self, i: int, t: int) -> int | None:
        km = self.known_map
        if (i, t) in km:
            return km[(i, t)]
        if self.expr is None:
            return None
        total = 0
        for a, k in self.expr.items():
            d = atom_dim(self.space, a, i, t)
            if d is None:
                return None
            total += k * d
        return total

    def row(self, i: int) -> GradedModule:
        if self.expr is not None and not self.known:
            out = GradedModule.zero()
            for a, k in self.expr.items():
                for _ in range(k):
                    out = out + atom_row(self.space, a, i)
            return out
        dims = [self.dim(i, t) for t in self.twists()]
        if any(d is None for d in dims):
            return GradedModule.unknown()
        if i in (0, self.space.n) and any(dims):
            # an infinite module truncated to the window is not a finite module
            return GradedModule.unknown()
        return GradedModule.finite(dict(zip(self.twists(), dims)))

    @property
    def rows(self) -> dict[int, GradedModule]:
        return {i: self.row(i) for i in range(self.space.n + 1)}

    def euler(self, t: int) -> int | None:
        dims = [self.dim(i, t) for i in range(self.space.n + 1)]
        if any(d is None for d in dims):
            return None
        return sum((-1) ** i * d for i, d in enumerate(dims))

    def with_known(self, extra: Mapping[tuple[int, int], int]) -> "CohomologyTable":
        km = self.known_map
        km.update(extra)
        return CohomologyTable(self.space, self.expr, tuple(sorted(km.items())), self.window, self.label)

    def render(self, twists: Iterable[int] | None = None) -> str:
        ts = list(twists if twists is not None else self.twists())
        name = self.label or (str(self.expr) if self.expr is not None else "E")
        head = f"h^i({name}(t))   t = " + " ".join(f"{t:>4}" for t in ts)
        lines = [head]
        for i in range(self.space.n + 1):
            vals = []
            for t in ts:
                d = self.dim(i, t)
                vals.append(f"{'?' if d is None else d:>4}")
            lines.append(f"  i={i:<2} {self.row(i).describe():<18}" + " ".join(vals))
        return "\n".join(lines)


def cohomology(e: BundleExpr, window=DEFAULT_WINDOW) -> CohomologyTable:
    return CohomologyTable(e.space, e, (), window)


def serre_dual(table: CohomologyTable) -> CohomologyTable:
    """Table of the dual bundle: h^i(E^v(t)) = h^{n-i}(E(-t-n))."""
    n = table.space.n
    lo, hi = table.window
    window = (-hi - n, -lo - n)
    expr = None
    if table.expr is not None:
        try:
            expr = dual(table.expr)
        except BundleError:
            expr = None
    if expr is not None and not table.known:
        return CohomologyTable(table.space, expr, (), window, table.label and table.label + "^v")
    known = {}
    for i in range(n + 1):
        for t in range(window[0], window[1] + 1):
            d = table.dim(n - i, -t - n)
            if d is not None:
                known[(i, t)] = d
    return CohomologyTable.derived(table.space, known, window, table.label and table.label + "^v")


# --- long exact sequences ----------------------------------------------------------
INF = float("inf")


def solve_exact_sequence(dims: list[int | None]) -> list[int]:
    """Fill unknown terms of an exact sequence 0 -> V_0 -> ... -> V_L -> 0.

    Returns the dimensions that are forced; unknown terms that are not forced
    stay None.  Raises LESInconsistency when no exact sequence exists.
    """
    L = len(dims)
    # r[k] = rank of V_k -> V_{k+1}; r[-1] = r[L-1] = 0, so d_k = r[k-1] + r[k]
    lo = [0.0] * L
    hi = [INF] * L
    hi[L - 1] = 0
    changed = True
    while changed:
        changed = False
        for k, d in enumerate(dims):
            if d is None:
                continue
            plo, phi = (lo[k - 1], hi[k - 1]) if k > 0 else (0, 0)
            new = [(max(lo[k], d - phi), min(hi[k], d - plo))]
            if k > 0:
                new.append((max(lo[k - 1], d - hi[k]), min(hi[k - 1], d - lo[k])))
            for idx, (a, b) in zip((k, k - 1), new):
                if a > b:
                    raise LESInconsistency(f"no exact sequence with dimensions {dims}")
                if (a, b) != (lo[idx], hi[idx]):
                    lo[idx], hi[idx] = a, b
                    changed = True
    out = []
    for k, d in enumerate(dims):
        prev = (lo[k - 1], hi[k - 1]) if k > 0 else (0, 0)
        if d is None and prev[0] == prev[1] and lo[k] == hi[k]:
            d = int(prev[0] + lo[k])
        out.append(d)
    return out


def les_propagate(a: CohomologyTable, b: CohomologyTable, c: CohomologyTable, window=None):
    """Refine three tables of an exact triple 0 -> A -> B -> C -> 0.

    Works twist by twist on the sequence H^0(A) -> H^0(B) -> H^0(C) -> H^1(A)
    -> ...; unknown entries are filled only when forced.  Known entries are
    never changed.
    """
    n = a.space.n
    if not (a.space == b.space == c.space):
        raise ValueError("tables live on different quadrics")
    lo, hi = window or a.window
    tables = (a, b, c)
    fills = ({}, {}, {})
    for t in range(lo, hi + 1):
        dims = [tables[j].dim(i, t) for i in range(n + 1) for j in range(3)]
        solved = solve_exact_sequence(dims)
        for idx, (old, new) in enumerate(zip(dims, solved)):
            if old is None and new is not None:
                i, j = divmod(idx, 3)
                fills[j][(i, t)] = new
    return tuple(tab.with_known(f) if f else tab for tab, f in zip(tables, fills))
