"""Intersection arithmetic in the Chow ring of a smooth quadric Q_n.

The basis has one class per codimension, except in codimension m = n/2 on
even quadrics where the two families of maximal linear subspaces give two
classes ``a`` and ``b``.  Labels are fixed strings::

    "1", "h", "h^2", ..., "a", "b", "l_{m+1}", ..., "pt"

Below the middle codimension the classes are powers of the hyperplane class
``h``; above it they are classes ``l_i`` of linear subspaces of codimension
``i`` (``pt`` in codimension ``n``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping


class ChowError(ValueError):
    """Raised on mismatched spaces or impossible divisions."""


@dataclass(frozen=True)
class QuadricSpace:
    """A smooth quadric hypersurface of dimension ``n`` in P^{n+1}."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"quadric dimension must be >= 2, got {self.n}")

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def even(self) -> bool:
        return self.n % 2 == 0

    @property
    def canonical_twist(self) -> int:
        # omega_Q = O(-n)
        return -self.n

    @cached_property
    def basis(self) -> tuple[str, ...]:
        return tuple(lbl for c in range(self.n + 1) for lbl in self.labels_in_codim(c))

    def labels_in_codim(self, c: int) -> tuple[str, ...]:
        n, m = self.n, self.m
        if c < 0 or c > n:
            return ()
        if c == n:
            return ("pt",)
        if c == 0:
            return ("1",)
        if self.even and c == m:
            return ("a", "b")
        if c < m or (not self.even and c == m):
            return ("h",) if c == 1 else (f"h^{c}",)
        return (f"l_{c}",)

    def codim(self, label: str) -> int:
        if label == "1":
            return 0
        if label == "pt":
            return self.n
        if label == "h":
            return 1
        if label in ("a", "b"):
            if not self.even:
                raise ChowError(f"class {label!r} only exists on even quadrics")
            return self.m
        kind, _, k = label.partition("_") if label.startswith("l_") else label.partition("^")
        c = int(k)
        if label not in self.labels_in_codim(c):
            raise ChowError(f"unknown basis label {label!r} on Q_{self.n}")
        return c

    def __str__(self):
        return f"Q_{self.n}"


def _h_power(space: QuadricSpace, k: int) -> dict[str, int]:
    """h^k expressed in the basis."""
    n, m = space.n, space.m
    if k > n:
        return {}
    if k == 0:
        return {"1": 1}
    if k < m or (not space.even and k == m):
        return {space.labels_in_codim(k)[0]: 1}
    if space.even and k == m:
        return {"a": 1, "b": 1}
    return {space.labels_in_codim(k)[0]: 2}


def _middle_products(m: int) -> dict[tuple[str, str], int]:
    # a.a = b.b = pt iff m even; a.b = pt iff m odd
    same, mixed = (1, 0) if m % 2 == 0 else (0, 1)
    return {("a", "a"): same, ("b", "b"): same, ("a", "b"): mixed, ("b", "a"): mixed}


def _basis_product(space: QuadricSpace, x: str, y: str) -> dict[str, int]:
    if x == "1":
        return {y: 1}
    if y == "1":
        return {x: 1}
    cx, cy = space.codim(x), space.codim(y)
    c = cx + cy
    if c > space.n:
        return {}
    mid = {"a", "b"}
    if x in mid and y in mid:
        return {"pt": 1} if _middle_products(space.m)[(x, y)] else {}
    m = space.m
    # powers of h are the classes of codim <= m that are not a/b
    x_pow = cx <= m and x not in mid
    y_pow = cy <= m and y not in mid
    if x_pow and y_pow:
        return _h_power(space, c)
    # at least one side is a linear-subspace class; h^i times it moves down the flag
    if x_pow or y_pow:
        return {space.labels_in_codim(c)[0]: 1}
    # two linear-subspace classes with c <= n only happens for a/b against l_j,
    # which exceeds n; two l classes likewise
    return {}


@dataclass(frozen=True)
class ChowClass:
    """Integer combination of basis classes; zero coefficients are dropped."""

    space: QuadricSpace
    coeffs: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            self.space.codim(k)
            if int(v) != v:
                raise ChowError("Chow coefficients must be integers")
            if v:
                clean[k] = int(v)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), key=lambda kv: self.space.basis.index(kv[0]))))

    # construction helpers
    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def one(cls, space):
        return cls(space, {"1": 1})

    @classmethod
    def basis_class(cls, space, label, coeff=1):
        return cls(space, {label: coeff})

    @classmethod
    def h(cls, space, k=1):
        return cls(space, _h_power(space, k))

    def __hash__(self):
        return hash((self.space, tuple(self.coeffs.items())))

    def __eq__(self, other):
        if isinstance(other, int):
            other = ChowClass.one(self.space) * other if other else ChowClass.zero(self.space)
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.space == other.space and self.coeffs == other.coeffs

    def _check(self, other):
        if not isinstance(other, ChowClass):
            raise TypeError(f"expected ChowClass, got {type(other).__name__}")
        if other.space != self.space:
            raise ChowError(f"space mismatch: {self.space} vs {other.space}")

    def __add__(self, other):
        if isinstance(other, int):
            other = ChowClass.one(self.space) * other
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return ChowClass(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.space, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.space, {k: v * other for k, v in self.coeffs.items()})
        self._check(other)
        out: dict[str, int] = {}
        for kx, vx in self.coeffs.items():
            for ky, vy in other.coeffs.items():
                for kz, vz in _basis_product(self.space, kx, ky).items():
                    out[kz] = out.get(kz, 0) + vx * vy * vz
        return ChowClass(self.space, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = ChowClass.one(self.space)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.coeffs)

    def part(self, c: int) -> "ChowClass":
        """Homogeneous component of codimension ``c``."""
        keep = self.space.labels_in_codim(c)
        return ChowClass(self.space, {k: v for k, v in self.coeffs.items() if k in keep})

    def codims(self) -> set[int]:
        return {self.space.codim(k) for k in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.codims()) <= 1

    def coeff(self, label: str) -> int:
        return self.coeffs.get(label, 0)

    def __str__(self):
        return format_class(self)

    def __repr__(self):
        return f"ChowClass({self.space}, {format_class(self)!r})"


def add(x: ChowClass, y: ChowClass) -> ChowClass:
    return x + y


def mul(x: ChowClass, y: ChowClass) -> ChowClass:
    return x * y


def degree(x: ChowClass) -> int:
    """Coefficient of the point class."""
    return x.coeff("pt")


def _solve_exact(columns: list[list[int]], target: list[int]) -> list[Fraction] | None:
    """Unique solution of sum_j q_j * columns[j] = target, or None if inconsistent.

    Raises ChowError when the solution is not unique.
    """
    rows = len(target)
    ncol = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(ncol)] + [Fraction(target[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        mat[r] = [v / p for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in mat):
        return None
    if len(pivots) < ncol:
        raise ChowError("quotient is not unique")
    sol = [Fraction(0)] * ncol
    for i, c in enumerate(pivots):
        sol[c] = mat[i][-1]
    return sol


def _inverse_unit(y: ChowClass) -> ChowClass:
    """Inverse of a class with constant term +-1 (the rest is nilpotent)."""
    c0 = y.coeff("1")
    nil = y * c0 - ChowClass.one(y.space)  # y = c0 (1 + nil) since c0 = +-1
    out = ChowClass.one(y.space)
    term = ChowClass.one(y.space)
    for _ in range(y.space.n):
        term = -(term * nil)
        out = out + term
    return out * c0


def divide(x: ChowClass, y: ChowClass) -> ChowClass:
    """Return the class ``q`` with ``q * y == x``.

    ``y`` must be homogeneous, or have constant term +-1 (total Chern classes),
    in which case it is inverted as a unit.  A homogeneous divisor is handled
    codimension by codimension, and the quotient must be unique and integral.
    """
    x._check(y)
    if not y:
        raise ChowError("division by the zero class")
    if y.coeff("1") in (1, -1):
        return x * _inverse_unit(y)
    if not y.is_homogeneous():
        raise ChowError("divisor must be homogeneous or a unit")
    space = x.space
    cy = next(iter(y.codims()))
    out: dict[str, int] = {}
    for cx in sorted(x.codims()):
        cq = cx - cy
        qbasis = space.labels_in_codim(cq)
        tbasis = space.labels_in_codim(cx)
        if not qbasis:
            raise ChowError(f"{x} is not divisible by {y}")
        cols = [[(ChowClass.basis_class(space, q) * y).coeff(t) for t in tbasis] for q in qbasis]
        sol = _solve_exact(cols, [x.coeff(t) for t in tbasis])
        if sol is None or any(v.denominator != 1 for v in sol):
            raise ChowError(f"{x} is not divisible by {y}")
        for q, v in zip(qbasis, sol):
            out[q] = int(v)
    return ChowClass(space, out)


def format_class(x: ChowClass) -> str:
    if not x.coeffs:
        return "0"
    parts = []
    for lbl, v in x.coeffs.items():
        if lbl == "1":
            body = str(abs(v))
        else:
            body = lbl if abs(v) == 1 else f"{abs(v)}*{lbl}"
        sign = "-" if v < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_class(space: QuadricSpace, text: str) -> ChowClass:
    """Parse sums of products such as ``"2*h^2 + a - h*l_3"``.

    ``h^k`` is accepted for every k (reduced through the relations).
    """
    text = text.strip()
    if not text or text == "0":
        return ChowClass.zero(space)
    total = ChowClass.zero(space)
    pos = 0
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise ChowError(f"cannot parse class at position {pos}: {text[pos:]!r}")
        sign = -1 if mt.group(1) == "-" else 1
        term = ChowClass.one(space) * sign
        for factor in mt.group(2).split("*"):
            f = factor.strip()
            if re.fullmatch(r"\d+", f):
                term = term * int(f)
            elif re.fullmatch(r"h(\^\d+)?", f):
                term = term * ChowClass.h(space, int(f[2:]) if "^" in f else 1)
            else:
                try:
                    term = term * ChowClass.basis_class(space, f)
                except (ChowError, ValueError) as exc:
                    raise ChowError(f"unknown factor {f!r}") from exc
        total = total + term
        pos = mt.end()
    return total


def chern_polynomial_twist(space: QuadricSpace, chern: Iterable[ChowClass], rank: int, t: int) -> ChowClass:
    """Total Chern class of E(t) from c_0..c_rank of E (splitting principle).

    c_k(E(t)) = sum_i binom(rank - i, k - i) c_i(E) (t h)^(k - i)
    """
    from math import comb

    cs = list(chern)
    h = ChowClass.h(space)
    total = ChowClass.zero(space)
    for k in range(rank + 1):
        for i in range(k + 1):
            if i < len(cs):
                total = total + cs[i] * (h ** (k - i)) * (comb(rank - i, k - i) * t ** (k - i))
    return total
