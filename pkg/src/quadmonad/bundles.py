"""Formal direct sums of ACM atoms on a quadric.

Atoms are twisted line bundles ``O(t)``, twisted spinor bundles (``S'(t)``,
``S''(t)`` on even quadrics, ``S(t)`` on odd ones), unordered tensor products
of two non-line atoms, and an opaque marker for the exterior square of a
spinor bundle of rank >= 4.

Twist convention: ``S'(1)``, ``S''(1)`` and ``S(1)`` are the globally
generated twists; on Q_4 they have first Chern class ``h``.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .chow import ChowClass, QuadricSpace, chern_polynomial_twist

LINE = "O"
PLUS = "S'"
MINUS = "S''"
ODD = "S"
TENSOR = "T"
WEDGE = "W"

SPINORS = (PLUS, MINUS, ODD)
_KIND_ORDER = {LINE: 0, PLUS: 1, MINUS: 2, ODD: 3, TENSOR: 4, WEDGE: 5}


class BundleError(ValueError):
    pass


class ChernUnavailable(BundleError):
    """No Chern data is tabulated for an atom."""


@dataclass(frozen=True)
class Atom:
    kind: str
    twist: int = 0
    parts: tuple["Atom", ...] = ()

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.twist, tuple(p.sort_key() for p in self.parts))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    @property
    def is_line(self) -> bool:
        return self.kind == LINE

    @property
    def is_spinor(self) -> bool:
        return self.kind in SPINORS

    def twisted(self, k: int) -> "Atom":
        if self.kind == TENSOR:
            x, y = self.parts
            return tensor_pair(x.twisted(k), y)
        if self.kind == WEDGE:
            # twisting Wedge2(X) by k is Wedge2 of X twisted by k/2; keep the
            # shift on the marker itself
            return Atom(WEDGE, self.twist + k, self.parts)
        return Atom(self.kind, self.twist + k)

    def __str__(self):
        if self.kind == TENSOR:
            return f"{self.parts[0]}*{self.parts[1]}"
        if self.kind == WEDGE:
            inner = f"Wedge2({self.parts[0]})"
            return inner if not self.twist else f"{inner}({self.twist})"
        return f"{self.kind}({self.twist})"


def line(t: int = 0) -> Atom:
    return Atom(LINE, t)


def spinor(kind: str, t: int = 0) -> Atom:
    if kind not in SPINORS:
        raise BundleError(f"not a spinor kind: {kind!r}")
    return Atom(kind, t)


def tensor_pair(x: Atom, y: Atom) -> Atom:
    """Canonical tensor product atom of two non-line atoms.

    The total twist is split as evenly as possible, larger half first, so
    that isomorphic pairs compare equal.
    """
    if x.is_line or y.is_line:
        raise BundleError("line factors are absorbed as twists, not tensor atoms")
    if not (x.is_spinor and y.is_spinor):
        raise BundleError("tensor atoms are only formed from two spinor atoms")
    x, y = sorted((x, y))
    total = x.twist + y.twist
    hi = -((-total) // 2)
    x, y = Atom(x.kind, hi), Atom(y.kind, total - hi)
    return Atom(TENSOR, 0, (x, y))


def tensor_twist(atom: Atom) -> int:
    """Total twist of a tensor atom relative to the untwisted product."""
    return sum(p.twist for p in atom.parts)


def spinor_rank(space: QuadricSpace) -> int:
    return 2 ** ((space.n + 1) // 2 - 1)


def atom_rank(space: QuadricSpace, atom: Atom) -> int:
    if atom.is_line:
        return 1
    if atom.is_spinor:
        return spinor_rank(space)
    if atom.kind == TENSOR:
        return atom_rank(space, atom.parts[0]) * atom_rank(space, atom.parts[1])
    r = atom_rank(space, atom.parts[0])
    return r * (r - 1) // 2


def check_atom(space: QuadricSpace, atom: Atom) -> None:
    if atom.kind in (PLUS, MINUS) and not space.even:
        raise BundleError(f"{atom.kind} spinor bundles only exist on even quadrics, not {space}")
    if atom.kind == ODD and space.even:
        raise BundleError(f"the spinor bundle S only exists on odd quadrics, not {space}")
    for p in atom.parts:
        check_atom(space, p)


# --- dual spinor table -------------------------------------------------------
# S^v = S(1) on odd quadrics.  On Q_{2m}: S'^v = S'(1), S''^v = S''(1) when m is
# even, and the two families swap when m is odd.
SPINOR_DUAL_FAMILY = {
    "odd": {ODD: ODD},
    "m_even": {PLUS: PLUS, MINUS: MINUS},
    "m_odd": {PLUS: MINUS, MINUS: PLUS},
}


def _dual_family(space: QuadricSpace) -> dict[str, str]:
    if not space.even:
        return SPINOR_DUAL_FAMILY["odd"]
    return SPINOR_DUAL_FAMILY["m_even" if space.m % 2 == 0 else "m_odd"]


def dual_atom(space: QuadricSpace, atom: Atom) -> Atom:
    if atom.is_line:
        return line(-atom.twist)
    if atom.is_spinor:
        return Atom(_dual_family(space)[atom.kind], 1 - atom.twist)
    if atom.kind == TENSOR:
        x, y = atom.parts
        return tensor_pair(dual_atom(space, x), dual_atom(space, y))
    raise BundleError(f"no dual available for {atom}")


# --- Chern data --------------------------------------------------------------
def atom_chern(space: QuadricSpace, atom: Atom) -> ChowClass:
    """Total Chern class of one atom."""
    h = ChowClass.h(space)
    if atom.is_line:
        return ChowClass.one(space) + h * atom.twist
    if atom.is_spinor and space.n == 4:
        # c(S'(1)) = 1 + h + a, c(S''(1)) = 1 + h + b
        mid = ChowClass.basis_class(space, "a" if atom.kind == PLUS else "b")
        base = [ChowClass.one(space), h, mid]
        return chern_polynomial_twist(space, base, 2, atom.twist - 1)
    raise ChernUnavailable(f"no Chern data tabulated for {atom} on {space}")


class BundleExpr:
    """Direct sum of atoms on a fixed quadric (a multiset)."""

    __slots__ = ("space", "_atoms", "_hash")

    def __init__(self, space: QuadricSpace, atoms: Iterable[Atom] | Counter = ()):
        counts = Counter(atoms)
        for a in counts:
            check_atom(space, a)
        self.space = space
        self._atoms = tuple(sorted((a, k) for a, k in counts.items() if k > 0))
        self._hash = hash((space, self._atoms))

    @classmethod
    def empty(cls, space):
        return cls(space, ())

    def items(self) -> tuple[tuple[Atom, int], ...]:
        return self._atoms

    def atoms(self) -> list[Atom]:
        """Atoms with multiplicity, in canonical order."""
        return [a for a, k in self._atoms for _ in range(k)]

    def counter(self) -> Counter:
        return Counter(dict(self._atoms))

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms())

    def __len__(self):
        return sum(k for _, k in self._atoms)

    def __bool__(self):
        return bool(self._atoms)

    def __eq__(self, other):
        return isinstance(other, BundleExpr) and self.space == other.space and self._atoms == other._atoms

    def __hash__(self):
        return self._hash

    def __add__(self, other: "BundleExpr") -> "BundleExpr":
        if other.space != self.space:
            raise BundleError("direct sum of bundles on different quadrics")
        return BundleExpr(self.space, self.counter() + other.counter())

    def __str__(self):
        return format_expr(self)

    def __repr__(self):
        return f"BundleExpr({self.space}, {format_expr(self)!r})"

    @property
    def is_free(self) -> bool:
        return all(a.is_line for a, _ in self._atoms)

    def lines(self) -> "BundleExpr":
        return BundleExpr(self.space, [a for a in self.atoms() if a.is_line])

    def non_lines(self) -> "BundleExpr":
        return BundleExpr(self.space, [a for a in self.atoms() if not a.is_line])

    def line_twists(self) -> list[int]:
        return [a.twist for a in self.atoms() if a.is_line]


def format_expr(e: BundleExpr) -> str:
    if not e:
        return "0"
    return " + ".join(str(a) for a in e.atoms())


def rank(e: BundleExpr) -> int:
    return sum(atom_rank(e.space, a) * k for a, k in e.items())


def twist(e: BundleExpr, k: int) -> BundleExpr:
    return BundleExpr(e.space, [a.twisted(k) for a in e.atoms()])


def dual(e: BundleExpr) -> BundleExpr:
    if any(a.kind in (TENSOR, WEDGE) for a in e.atoms()):
        raise BundleError("dual of tensor or wedge atoms is not supported")
    return BundleExpr(e.space, [dual_atom(e.space, a) for a in e.atoms()])


def _atom_tensor(x: Atom, y: Atom) -> Atom | None:
    if x.is_line and y.is_line:
        return line(x.twist + y.twist)
    if x.is_line:
        return y.twisted(x.twist)
    if y.is_line:
        return x.twisted(y.twist)
    return tensor_pair(x, y)


def _atom_wedge2(space: QuadricSpace, x: Atom) -> list[Atom]:
    r = atom_rank(space, x)
    if r == 1:
        return []
    if x.is_spinor and r == 2:
        # det S(t) = O(2t - 1) in the normalization c_1(S(1)) = h
        return [line(2 * x.twist - 1)]
    return [Atom(WEDGE, 0, (x,))]


def wedge2(e: BundleExpr) -> BundleExpr:
    atoms = e.atoms()
    out: list[Atom] = []
    for x in atoms:
        out.extend(_atom_wedge2(e.space, x))
    for x, y in itertools.combinations(atoms, 2):
        out.append(_atom_tensor(x, y))
    return BundleExpr(e.space, out)


def sym2(e: BundleExpr) -> BundleExpr:
    if not e.is_free:
        raise BundleError("sym2 is only implemented for sums of line bundles")
    ts = e.line_twists()
    return BundleExpr(e.space, [line(ts[i] + ts[j]) for i in range(len(ts)) for j in range(i, len(ts))])


def total_chern(e: BundleExpr) -> ChowClass:
    out = ChowClass.one(e.space)
    for a, k in e.items():
        out = out * atom_chern(e.space, a) ** k
    return out


def restrict(e: BundleExpr) -> BundleExpr:
    """Restriction to a hyperplane section Q_{n-1}."""
    n = e.space.n
    if n < 3:
        raise BundleError("restriction needs n >= 3")
    target = QuadricSpace(n - 1)
    out: list[Atom] = []
    for a in e.atoms():
        if a.is_line:
            out.append(a)
        elif a.kind == ODD:
            out += [Atom(PLUS, a.twist), Atom(MINUS, a.twist)]
        elif a.kind in (PLUS, MINUS):
            out.append(Atom(ODD, a.twist))
        else:
            raise BundleError(f"cannot restrict {a}")
    return BundleExpr(target, out)


def lift_candidates(e: BundleExpr) -> list[BundleExpr]:
    """All sums on Q_{n+1} whose restriction is exactly ``e``."""
    src = e.space
    target = QuadricSpace(src.n + 1)
    if any(a.kind in (TENSOR, WEDGE) for a in e.atoms()):
        return []
    lines = [a for a in e.atoms() if a.is_line]
    counts = e.counter()
    if src.even:
        # S'(t) + S''(t) must pair up into S(t)
        twists = {a.twist for a in counts if a.is_spinor}
        spin = []
        for t in sorted(twists):
            p, q = counts[Atom(PLUS, t)], counts[Atom(MINUS, t)]
            if p != q:
                return []
            spin += [Atom(ODD, t)] * p
        return [BundleExpr(target, lines + spin)]
    # each S(t) lifts to S'(t) or S''(t); choose how many go to each family
    choices = []
    for a, k in counts.items():
        if a.kind == ODD:
            choices.append([[Atom(PLUS, a.twist)] * j + [Atom(MINUS, a.twist)] * (k - j) for j in range(k, -1, -1)])
    out = []
    for combo in itertools.product(*choices):
        out.append(BundleExpr(target, lines + [x for part in combo for x in part]))
    return out


# --- parsing -----------------------------------------------------------------
_ATOM_RE = re.compile(r"(S''|S'|S|O)\s*(?:\(\s*([+-]?\d+)\s*\))?")


class ParseError(BundleError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def parse_bundle_expr(src: str, n: int | QuadricSpace) -> BundleExpr:
    """Parse ``"S'(1) + S''(1) + O(2)"``; a missing twist means 0, ``"0"`` is empty."""
    space = n if isinstance(n, QuadricSpace) else QuadricSpace(n)
    text = src.strip()
    if text in ("", "0"):
        return BundleExpr.empty(space)
    atoms = []
    pos = 0
    expect_atom = True
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        if expect_atom:
            m = _ATOM_RE.match(src, pos)
            if not m:
                raise ParseError(f"expected an atom, found {src[pos:pos + 5]!r}", pos)
            kind = m.group(1)
            a = Atom(kind, int(m.group(2) or 0))
            try:
                check_atom(space, a)
            except BundleError as exc:
                raise ParseError(str(exc), pos) from None
            atoms.append(a)
            pos = m.end()
            expect_atom = False
        else:
            if src[pos] != "+":
                raise ParseError(f"expected '+', found {src[pos]!r}", pos)
            pos += 1
            expect_atom = True
    if expect_atom:
        raise ParseError("dangling '+'", len(src))
    return BundleExpr(space, atoms)
