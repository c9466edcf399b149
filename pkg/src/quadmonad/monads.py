"""Feasibility checks for minimal-monad candidates 0 -> A -> B -> C -> 0.

Candidates carry no maps.  Every check is a necessary condition: ``fail`` is
definitive, ``pass`` only means the candidate was not excluded.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import bundles as bd
from .bundles import BundleError, BundleExpr, ChernUnavailable, parse_bundle_expr
from .chow import ChowClass, QuadricSpace, divide
from .cohomology import GradedModule, betti0, betti0j, cohomology, h0_spinor

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


class NotNormalized(ValueError):
    pass


class MinimalityError(ValueError):
    pass


@dataclass(frozen=True)
class MonadCandidate:
    space: QuadricSpace
    A: BundleExpr
    B: BundleExpr
    C: BundleExpr
    decomposable: bool = False

    def __post_init__(self):
        for name in "ABC":
            if getattr(self, name).space != self.space:
                raise BundleError(f"{name} lives on the wrong quadric")
        if not (self.A.is_free and self.C.is_free):
            raise BundleError("A and C must be sums of line bundles")
        if not self.B:
            raise BundleError("B must be nonempty")
        if self.homology_rank < 1:
            raise BundleError(f"homology rank {self.homology_rank} < 1")

    @classmethod
    def parse(cls, n: int, A: str, B: str, C: str) -> "MonadCandidate":
        space = QuadricSpace(n)
        return cls(space, parse_bundle_expr(A, space), parse_bundle_expr(B, space), parse_bundle_expr(C, space))

    @property
    def homology_rank(self) -> int:
        return bd.rank(self.B) - bd.rank(self.A) - bd.rank(self.C)

    def twisted(self, k: int) -> "MonadCandidate":
        return MonadCandidate(self.space, bd.twist(self.A, k), bd.twist(self.B, k), bd.twist(self.C, k), self.decomposable)

    def normalized(self) -> "MonadCandidate":
        """Twist so that A's lowest summand is O, or C's lowest is O(1) when A = 0."""
        if self.A:
            k = -min(self.A.line_twists())
        elif self.C:
            k = 1 - min(self.C.line_twists())
        else:
            k = 0
        return self.twisted(k) if k else self

    def sort_key(self):
        return (bd.rank(self.A), bd.rank(self.C), tuple(a.sort_key() for a in self.A),
                tuple(a.sort_key() for a in self.B), tuple(a.sort_key() for a in self.C))

    def __str__(self):
        return f"0 -> {self.A} -> {self.B} -> {self.C} -> 0"

    def to_dict(self) -> dict:
        return {"n": self.space.n, "A": str(self.A), "B": str(self.B), "C": str(self.C)}

    @classmethod
    def from_dict(cls, d: dict) -> "MonadCandidate":
        return cls.parse(d["n"], d["A"], d["B"], d["C"])


@dataclass
class CheckReport:
    candidate: str
    verdicts: dict[str, str] = field(default_factory=dict)
    reasons: dict[str, dict[str, Any]] = field(default_factory=dict)

    def add(self, name: str, verdict: str, text: str, **data):
        if verdict not in (PASS, FAIL, UNKNOWN):
            raise ValueError(verdict)
        self.verdicts[name] = verdict
        # stored in JSON-native form so reports round-trip exactly
        self.reasons[name] = json.loads(json.dumps({"text": text, **data}))

    def merge(self, other: "CheckReport") -> "CheckReport":
        for k, v in other.verdicts.items():
            self.verdicts[k] = v
            self.reasons[k] = other.reasons[k]
        return self

    @property
    def fatal(self) -> bool:
        return FAIL in self.verdicts.values()

    @property
    def unknown(self) -> bool:
        return UNKNOWN in self.verdicts.values()

    def first_failure(self) -> str | None:
        return next((k for k, v in self.verdicts.items() if v == FAIL), None)

    def to_dict(self) -> dict:
        return {"candidate": self.candidate, "verdicts": dict(self.verdicts),
                "reasons": {k: self.reasons[k] for k in self.verdicts}, "fatal": self.fatal}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(d["candidate"], dict(d["verdicts"]), {k: dict(v) for k, v in d["reasons"].items()})


# --- Theorem conditions -------------------------------------------------------
def _h_wedge(expr: BundleExpr, i: int) -> GradedModule:
    return cohomology(bd.wedge2(expr)).row(i)


def _betti_conditions(report: CheckReport, prefix: str, wedge_row: GradedModule, free: BundleExpr, label: str):
    """H^1_*(wedge^2 X) != 0 and the Betti inequalities against H^0_*(S_2 F)."""
    target = cohomology(bd.sym2(free)).row(0)
    if wedge_row.is_unknown:
        for name in ("nonzero", "betti0", "betti0j"):
            report.add(f"{prefix}_{name}", UNKNOWN, f"H^1_*({label}) is not tabulated")
        return
    report.add(f"{prefix}_nonzero", PASS if not wedge_row.is_zero else FAIL,
               f"H^1_*({label}) = {wedge_row.describe()}")
    b_have, b_need = betti0(wedge_row), betti0(target)
    report.add(f"{prefix}_betti0", PASS if b_have >= b_need else FAIL,
               f"beta_0 = {b_have} against {b_need} generators of H^0_*(S_2)", have=b_have, need=b_need)
    degrees = sorted(set(target.gens) | {d for d, _ in wedge_row.parts})
    short = [j for j in degrees if betti0j(wedge_row, j) < betti0j(target, j)]
    report.add(f"{prefix}_betti0j", FAIL if short else PASS,
               "graded Betti numbers too small in degrees " + str(short) if short else "graded Betti numbers suffice",
               degrees=short)


def theorem_conditions(space: QuadricSpace, A: BundleExpr, B: BundleExpr, C: BundleExpr, candidate: str = "") -> CheckReport:
    report = CheckReport(candidate or f"0 -> {A} -> {B} -> {C} -> 0")
    if C:
        _betti_conditions(report, "cond1", _h_wedge(B, 1), C, "wedge^2 B")
    else:
        for name in ("nonzero", "betti0", "betti0j"):
            report.add(f"cond1_{name}", PASS, "vacuous: C = 0")
    Bv = bd.dual(B)
    if A:
        _betti_conditions(report, "cond2", _h_wedge(Bv, 1), bd.dual(A), "wedge^2 B^v")
    else:
        for name in ("nonzero", "betti0", "betti0j"):
            report.add(f"cond2_{name}", PASS, "vacuous: A = 0")
    h2, h2v = _h_wedge(B, 2), _h_wedge(Bv, 2)
    if h2.is_unknown or h2v.is_unknown:
        report.add("cond3", UNKNOWN, "H^2_* of wedge^2 B or wedge^2 B^v is not tabulated")
    else:
        ok = h2.is_zero and h2v.is_zero
        report.add("cond3", PASS if ok else FAIL,
                   f"H^2_*(wedge^2 B) = {h2.describe()}, H^2_*(wedge^2 B^v) = {h2v.describe()}")
    return report


def check_theorem_conditions(m: MonadCandidate) -> CheckReport:
    return theorem_conditions(m.space, m.A, m.B, m.C, str(m))


# --- structural checks --------------------------------------------------------
def check_minimality(m: MonadCandidate) -> CheckReport:
    report = CheckReport(str(m))
    b = set(m.B.line_twists())
    clash_c = sorted(b & set(m.C.line_twists()))
    clash_a = sorted(b & set(m.A.line_twists()))
    if clash_c or clash_a:
        report.add("minimality", FAIL, "a degree-0 component between equal line bundles could be an isomorphism",
                   A_B=clash_a, B_C=clash_c)
    else:
        report.add("minimality", PASS, "no equal line bundles between neighbouring terms")
    return report


def kernel_top_chern_test(m: MonadCandidate) -> CheckReport:
    """A nowhere-vanishing section of K = ker(B -> C) forces c_rank(K)(K) = 0."""
    if bd.rank(m.A) != 1 or m.A.line_twists() != [0]:
        raise NotNormalized("kernel test needs A = O")
    report = CheckReport(str(m))
    cK = divide(bd.total_chern(m.B), bd.total_chern(m.C))
    r = bd.rank(m.B) - bd.rank(m.C)
    if r > m.space.n:
        report.add("kernel_top_chern", PASS, f"rank K = {r} exceeds dim {m.space.n}", rank=r)
        return report
    top = cK.part(r)
    coeffs = dict(top.coeffs)
    report.add("kernel_top_chern", FAIL if top else PASS, f"c_{r}(K) = {top}", rank=r, coeffs=coeffs,
               kernel_chern=str(cK))
    return report


def _atom_section_loci(space: QuadricSpace, atom: bd.Atom) -> tuple[bool, int | None]:
    """(can be nowhere vanishing, smallest dimension of a nonempty zero locus).

    None for the dimension means the atom has no nonzero section that is
    allowed (no sections, or only a scalar excluded by minimality).
    """
    n = space.n
    if atom.is_line:
        if atom.twist <= 0:
            return False, None
        return False, n - 1
    if atom.is_spinor:
        if h0_spinor(n, atom.twist) == 0:
            return False, None
        r = bd.atom_rank(space, atom)
        try:
            top = bd.atom_chern(space, atom).part(r) if r <= n else None
        except ChernUnavailable:
            # without Chern data a nowhere-vanishing section is not excluded
            return True, n - r
        return (top is None or not top), max(n - r, 0)
    raise BundleError(f"no section rules for {atom}")


def _sections_report(m: MonadCandidate, name: str) -> CheckReport:
    report = CheckReport(str(m))
    n = m.space.n
    loci = []
    for atom in m.B:
        nowhere, dim = _atom_section_loci(m.space, atom)
        if nowhere:
            report.add(name, PASS, f"{atom} may carry a nowhere-vanishing section")
            return report
        if dim is not None:
            loci.append((str(atom), dim))
    if not loci:
        report.add(name, FAIL, "B has no admissible nonzero section", loci=[])
        return report
    dims = sorted(d for _, d in loci)
    # zero loci of dimensions p, q with p + q > n always meet on Q_n
    if len(dims) >= 2 and dims[0] + dims[1] <= n:
        report.add(name, PASS, "zero loci may be disjoint", loci=loci)
    else:
        report.add(name, FAIL, "every section of B vanishes somewhere", loci=loci)
    return report


def check_injectivity_feasible(m: MonadCandidate) -> CheckReport:
    """Can O -> B be a bundle injection?  Needs a nowhere-vanishing section."""
    if not m.A:
        report = CheckReport(str(m))
        report.add("injectivity", PASS, "vacuous: A = 0")
        return report
    if bd.rank(m.A) != 1 or m.A.line_twists() != [0]:
        raise NotNormalized("injectivity check needs A = O")
    report = _sections_report(m, "injectivity")
    try:
        report.merge(kernel_top_chern_test(m))
    except ChernUnavailable:
        report.add("kernel_top_chern", UNKNOWN, "Chern data unavailable")
    return report


def dualize(m: MonadCandidate) -> MonadCandidate:
    out = MonadCandidate(m.space, bd.dual(m.C), bd.dual(m.B), bd.dual(m.A), m.decomposable)
    return out.normalized()


def check_surjectivity_feasible(m: MonadCandidate) -> CheckReport:
    """B -> O(d) surjective iff the dual O(-d) -> B^v is an injection."""
    report = CheckReport(str(m))
    if not m.C:
        report.add("surjectivity", PASS, "vacuous: C = 0")
        return report
    if bd.rank(m.C) != 1:
        raise NotNormalized("surjectivity check needs C = O(d)")
    d = m.C.line_twists()[0]
    # dual twisted by d: A' = O
    dm = MonadCandidate(m.space, bd.twist(bd.dual(m.C), d), bd.twist(bd.dual(m.B), d), bd.twist(bd.dual(m.A), d))
    inner = check_injectivity_feasible(dm)
    spinor_twists = [(str(a.kind), a.twist) for a in dm.B if a.is_spinor]
    for k, v in inner.verdicts.items():
        name = "surjectivity" if k == "injectivity" else f"surjectivity_{k}"
        report.add(name, v, f"dual monad {dm}: " + inner.reasons[k]["text"], dual_spinor_twists=spinor_twists)
    return report


def homology_invariants(m: MonadCandidate) -> tuple[int, ChowClass]:
    chern = divide(bd.total_chern(m.B), bd.total_chern(m.A) * bd.total_chern(m.C))
    return m.homology_rank, chern


def restrict_monad(m: MonadCandidate) -> MonadCandidate:
    if m.space.n < 5:
        raise BundleError("monads are only restricted from Q_n with n >= 5")
    return MonadCandidate(QuadricSpace(m.space.n - 1), bd.restrict(m.A), bd.restrict(m.B), bd.restrict(m.C), m.decomposable)


def extend_with_line_bundle(m: MonadCandidate, a: int) -> MonadCandidate:
    """Monad for E + O(a): append O(a) to B with zero maps."""
    if a in m.A.line_twists() or a in m.C.line_twists():
        raise MinimalityError(f"O({a}) collides with a summand of A or C")
    return MonadCandidate(m.space, m.A, m.B + BundleExpr(m.space, [bd.line(a)]), m.C, True)


def run_all_checks(m: MonadCandidate) -> CheckReport:
    """Every check that applies to ``m`` in pipeline order."""
    report = check_theorem_conditions(m)
    report.merge(check_minimality(m))
    for check in (check_injectivity_feasible, check_surjectivity_feasible):
        try:
            report.merge(check(m))
        except NotNormalized as exc:
            name = "injectivity" if check is check_injectivity_feasible else "surjectivity"
            report.add(name, UNKNOWN, str(exc))
        except BundleError as exc:
            report.add("sections", UNKNOWN, str(exc))
    return report
