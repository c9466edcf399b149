"""Bounded search for minimal monads of rank-2 and rank-3 bundles without
inner cohomology on Q_4 ... Q_8.

Candidates are generated in families: the free terms A and C, the spinor part
of B, and a number of line-bundle slots in B.  The theorem conditions only see
intermediate cohomology of wedge^2 B, to which line summands contribute
nothing, so a family failing them is rejected without expanding its line
completions (they are counted instead).
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterator

from . import bundles as bd
from .bundles import MINUS, ODD, PLUS, BundleExpr, ChernUnavailable
from .chow import ChowClass, QuadricSpace
from .cohomology import CohomologyTable, _h0_tensor, h0_spinor, les_propagate
from .monads import (
    FAIL,
    PASS,
    UNKNOWN,
    CheckReport,
    MonadCandidate,
    check_injectivity_feasible,
    check_minimality,
    check_surjectivity_feasible,
    restrict_monad,
)
from .monads import _betti_conditions
from .monads import _h_wedge as _h_wedge_uncached

_h_wedge = lru_cache(maxsize=None)(_h_wedge_uncached)

RESTRICTION_AXIOM = "restriction of a minimal monad for E to a hyperplane section is a minimal monad for E|Q_{n-1}"
RANK2_AXIOM = "rank-2 bundles without inner cohomology on Q_n, n >= 6, split"
SAMPLE_LIMIT = 50
PIPELINE = ("cond3", "cond1", "cond2", "restriction", "minimality", "injectivity", "surjectivity", "core",
            "rank2_splitting")


@dataclass(frozen=True)
class SearchConfig:
    n: int
    homology_rank: int
    twist_bound: int = 5
    multiplicity_bound: int = 3
    free_rank_bound: int = 2
    spinors_enabled: bool = True

    def __post_init__(self):
        if self.twist_bound < 1 or self.multiplicity_bound < 1 or self.free_rank_bound < 1:
            raise ValueError("search bounds must be positive")

    @property
    def space(self) -> QuadricSpace:
        return QuadricSpace(self.n)

    @property
    def twists(self) -> range:
        return range(-self.twist_bound, self.twist_bound + 1)

    def to_dict(self) -> dict:
        return {"n": self.n, "rank": self.homology_rank, "twist_bound": self.twist_bound,
                "multiplicity_bound": self.multiplicity_bound, "free_rank_bound": self.free_rank_bound,
                "spinors_enabled": self.spinors_enabled}


# --- expected lists -----------------------------------------------------------
@dataclass(frozen=True)
class ExpectedMonad:
    label: str
    A: str
    B: str
    C: str
    homology: str
    parametric: bool = False

    def exprs(self, space):
        return tuple(bd.parse_bundle_expr(x, space) for x in (self.A, self.B, self.C))

    def describe(self) -> str:
        b = f"{self.B} + O(a)" if self.parametric else self.B
        return f"{self.label}: 0 -> {self.A or '0'} -> {b} -> {self.C or '0'} -> 0  (homology {self.homology})"


_EXPECTED = {
    (4, 2): [ExpectedMonad("Z4", "O", "S'(1) + S''(1)", "O(1)", "Z_4")],
    (5, 2): [ExpectedMonad("Z5", "O", "S(1)", "O(1)", "Z_5")],
    (4, 3): [
        ExpectedMonad("(1)", "", "S'(1) + S''(1)", "O(1)", "G_4"),
        ExpectedMonad("(2)", "O", "S'(1) + S''(1)", "", "P_4"),
        ExpectedMonad("(5)", "O", "S'(1) + S''(1)", "O(1)", "Z_4 + O(a)", True),
    ],
    (5, 3): [
        ExpectedMonad("(3)", "", "S(1)", "O(1)", "G_5"),
        ExpectedMonad("(4)", "O", "S(1)", "", "P_5"),
        ExpectedMonad("(5')", "O", "S(1)", "O(1)", "Z_5 + O(a)", True),
    ],
    (6, 3): [
        ExpectedMonad("(6)", "O", "S'(1)", "", "P'_6"),
        ExpectedMonad("(7)", "O", "S''(1)", "", "P''_6"),
        ExpectedMonad("(8)", "", "S'(1)", "O(1)", "G'_6"),
        ExpectedMonad("(9)", "", "S''(1)", "O(1)", "G''_6"),
    ],
}


def expected_results(space: QuadricSpace | int, rank: int) -> list[ExpectedMonad]:
    n = space.n if isinstance(space, QuadricSpace) else space
    if not 4 <= n <= 8 or rank not in (2, 3):
        raise ValueError(f"no ground truth for n={n}, rank={rank}")
    return list(_EXPECTED.get((n, rank), []))


# --- results ------------------------------------------------------------------
@dataclass(frozen=True)
class Survivor:
    """A surviving candidate, or a family B = core + O(a) over ``a_values``."""

    candidate: MonadCandidate
    a_values: tuple[int, ...] | None = None
    status: str = "unresolved"
    matched: str | None = None
    unknown_checks: tuple[str, ...] = ()

    @property
    def parametric(self) -> bool:
        return self.a_values is not None

    def instances(self) -> list[MonadCandidate]:
        if not self.parametric:
            return [self.candidate]
        m = self.candidate
        return [MonadCandidate(m.space, m.A, m.B + BundleExpr(m.space, [bd.line(a)]), m.C, True) for a in self.a_values]

    def describe(self) -> str:
        m = self.candidate
        if not self.parametric:
            return str(m)
        return f"0 -> {m.A} -> {m.B} + O(a) -> {m.C} -> 0"

    def to_dict(self) -> dict:
        d = {"monad": self.describe(), "status": self.status, "matched_sequence": self.matched}
        d.update({k: v for k, v in self.candidate.to_dict().items()})
        if self.parametric:
            d["a_values"] = list(self.a_values)
            d["constraint"] = "a free; map components on O(a) zero; a must differ from twists of A and C"
        if self.unknown_checks:
            d["unknown_checks"] = list(self.unknown_checks)
        return d


@dataclass(frozen=True)
class Rejection:
    family: str
    condition: str
    count: int

    def to_dict(self):
        return {"family": self.family, "condition": self.condition, "count": self.count}


@dataclass
class ClassificationResult:
    config: SearchConfig
    survivors: list[Survivor]
    rejected_count: int
    rejections_by_condition: dict[str, int]
    sample_rejections: list[Rejection]
    expected: list[ExpectedMonad]
    assumptions: list[str] = field(default_factory=list)
    decomposable: dict = field(default_factory=dict)

    @property
    def space(self) -> QuadricSpace:
        return self.config.space

    def instances(self) -> set[MonadCandidate]:
        return {m for s in self.survivors for m in s.instances()}

    def matched_labels(self) -> set[str]:
        return {s.matched for s in self.survivors if s.matched}

    def matches_expected(self) -> bool:
        return (all(s.status == "exists" for s in self.survivors)
                and self.matched_labels() == {e.label for e in self.expected})

    def to_dict(self, trace: bool = False) -> dict:
        d = {
            "space": str(self.space),
            "rank": self.config.homology_rank,
            "config": self.config.to_dict(),
            "survivors": [s.to_dict() for s in self.survivors],
            "expected": [e.describe() for e in self.expected],
            "matches_expected": self.matches_expected(),
            "rejected_count": self.rejected_count,
            "rejections_by_condition": dict(self.rejections_by_condition),
            "sample_rejections": [r.to_dict() for r in self.sample_rejections],
            "assumptions": list(self.assumptions),
        }
        if not trace:
            d["sample_rejections"] = d["sample_rejections"][:10]
        return d


# --- enumeration ----------------------------------------------------------------
def _multisets(items, k: int, maxmult: int) -> Iterator[tuple]:
    for combo in itertools.combinations_with_replacement(items, k):
        if not combo or max(Counter(combo).values()) <= maxmult:
            yield combo


@lru_cache(maxsize=None)
def count_multisets(ntypes: int, k: int, maxmult: int) -> int:
    """Multisets of size k over ntypes types, each type used at most maxmult times."""
    if k == 0:
        return 1
    if ntypes == 0:
        return 0
    return sum(count_multisets(ntypes - 1, k - j, maxmult) for j in range(min(k, maxmult) + 1))


def _free_parts(cfg: SearchConfig) -> list[tuple[BundleExpr, BundleExpr]]:
    space, T, F, mb = cfg.space, cfg.twist_bound, cfg.free_rank_bound, cfg.multiplicity_bound
    lines = lambda ts: BundleExpr(space, [bd.line(t) for t in ts])
    out = []
    for kc in range(1, F + 1):
        for cs in _multisets(range(1, T + 1), kc, mb):
            if min(cs) == 1:
                out.append((lines(()), lines(cs)))
    for ka in range(1, F + 1):
        for as_ in _multisets(range(0, T + 1), ka, mb):
            if min(as_) != 0:
                continue
            for kc in range(0, F + 1):
                for cs in _multisets(cfg.twists, kc, mb):
                    out.append((lines(as_), lines(cs)))
    return out


def _spinor_parts(cfg: SearchConfig, max_rank: int) -> list[BundleExpr]:
    space = cfg.space
    if not cfg.spinors_enabled:
        return [BundleExpr.empty(space)]
    kinds = (PLUS, MINUS) if space.even else (ODD,)
    atoms = [bd.spinor(k, t) for k in kinds for t in cfg.twists]
    r = bd.spinor_rank(space)
    out = []
    for k in range(0, max_rank // r + 1):
        out.extend(BundleExpr(space, combo) for combo in _multisets(atoms, k, cfg.multiplicity_bound))
    return out


def _families(cfg: SearchConfig):
    """(A, spinor part, C, number of line slots) in canonical order."""
    frees = _free_parts(cfg)
    max_rank = cfg.homology_rank + 2 * cfg.free_rank_bound
    for S in _spinor_parts(cfg, max_rank):
        rs = bd.rank(S)
        for A, C in frees:
            k = cfg.homology_rank + bd.rank(A) + bd.rank(C) - rs
            if k < 0 or (k == 0 and not S):
                continue
            yield A, S, C, k


def _line_completions(cfg: SearchConfig, k: int) -> Iterator[tuple[int, ...]]:
    return _multisets(cfg.twists, k, cfg.multiplicity_bound)


def enumerate_candidates(cfg: SearchConfig) -> Iterator[MonadCandidate]:
    """Every normalized candidate within the bounds (no pruning)."""
    space = cfg.space
    for A, S, C, k in _families(cfg):
        for ts in _line_completions(cfg, k):
            yield MonadCandidate(space, A, S + BundleExpr(space, [bd.line(t) for t in ts]), C)


# --- staged checks --------------------------------------------------------------
@lru_cache(maxsize=None)
def _cond3(S: BundleExpr) -> tuple[str, str]:
    h2, h2v = _h_wedge(S, 2), _h_wedge(_dual(S), 2)
    if h2.is_unknown or h2v.is_unknown:
        return UNKNOWN, "H^2_* of wedge^2 B is not tabulated"
    if h2.is_zero and h2v.is_zero:
        return PASS, ""
    return FAIL, f"H^2_*(wedge^2 B) = {h2.describe()}, H^2_*(wedge^2 B^v) = {h2v.describe()}"


def _cond_betti(prefix: str, S: BundleExpr, free: BundleExpr) -> tuple[str, str]:
    """Combined verdict for condition 1 (B, C) or 2 (B^v, A^v) on the spinor part."""
    if not free:
        return PASS, "vacuous"
    if prefix == "cond1":
        return _betti_verdict(prefix, _h_wedge(S, 1), free)
    return _betti_verdict(prefix, _h_wedge(_dual(S), 1), _dual(free))


@lru_cache(maxsize=None)
def _betti_verdict(prefix: str, row, free: BundleExpr) -> tuple[str, str]:
    report = CheckReport("")
    _betti_conditions(report, prefix, row, free, "")
    first = report.first_failure()
    if first:
        return FAIL, first
    return (UNKNOWN if report.unknown else PASS), prefix


_restrict = lru_cache(maxsize=None)(bd.restrict)
_dual = lru_cache(maxsize=None)(bd.dual)


def _verdict(report: CheckReport) -> tuple[str, str | None]:
    first = report.first_failure()
    if first:
        return FAIL, first
    return (UNKNOWN, None) if report.unknown else (PASS, None)


class _Tally:
    def __init__(self, samples: int):
        self.total = 0
        self.by_condition: dict[str, int] = {}
        self.samples: list[Rejection] = []
        self.limit = samples

    def reject(self, family, condition: str, count: int = 1):
        """``family`` is a string or a zero-argument callable producing one."""
        if count <= 0:
            return
        self.total += count
        self.by_condition[condition] = self.by_condition.get(condition, 0) + count
        if len(self.samples) < self.limit:
            self.samples.append(Rejection(family() if callable(family) else family, condition, count))


def _family_label(A, S, C, k) -> str:
    b = str(S) if S else ""
    slots = f"{k} line bundle{'s' if k != 1 else ''}"
    b = f"{b} + {slots}" if b else slots
    return f"0 -> {A} -> {b} -> {C} -> 0"


def _decomposable_line(m: MonadCandidate, lower: set[MonadCandidate]) -> int | None:
    """Twist a with m = (monad of rank r-1 in ``lower``) + O(a), if any."""
    for a in sorted(set(m.B.line_twists())):
        rest = m.B.counter()
        rest[bd.line(a)] -= 1
        B = BundleExpr(m.space, rest)
        if not B:
            continue
        try:
            core = MonadCandidate(m.space, m.A, B, m.C)
        except bd.BundleError:
            continue
        if core in lower:
            return a
    return None


def _lower_rank_instances(cfg: SearchConfig) -> set[MonadCandidate]:
    if cfg.homology_rank <= 2:
        # a rank-1 bundle without inner cohomology is a line bundle
        return set()
    return classify(replace(cfg, homology_rank=cfg.homology_rank - 1)).instances()


def _stage2(cfg: SearchConfig, m: MonadCandidate, tally: _Tally,
            prev_decomp: dict | None, unknowns: list[str]) -> bool:
    """Checks on one materialized candidate after the family stage."""
    checks = [("minimality", check_minimality)]
    if bd.rank(m.A) <= 1:
        checks.append(("injectivity", check_injectivity_feasible))
    if bd.rank(m.C) <= 1:
        checks.append(("surjectivity", check_surjectivity_feasible))
    for name, check in checks:
        try:
            verdict, which = _verdict(check(m))
        except ChernUnavailable:
            verdict, which = UNKNOWN, None
        if verdict == FAIL:
            tally.reject(str(m), which)
            return False
        if verdict == UNKNOWN:
            unknowns.append(name)
    if prev_decomp is not None:
        a = prev_decomp.get(restrict_monad(m).normalized())
        if a is not None and _decomposable_line(m, _lower_rank_instances(cfg)) != a:
            tally.reject(str(m), "core")
            return False
    if cfg.homology_rank == 2 and cfg.n >= 6:
        tally.reject(str(m), "rank2_splitting")
        return False
    return True


def _group(cfg: SearchConfig, cands: list[MonadCandidate], expected: list[ExpectedMonad], unknown_map) -> list[Survivor]:
    space = cfg.space
    groups: dict = {}
    for m in cands:
        lines = m.B.line_twists()
        if len(lines) == 1:
            key = (m.A, m.B.non_lines(), m.C)
            groups.setdefault(key, []).append(m)
        else:
            groups[("single", m)] = [m]
    out = []
    for key, members in groups.items():
        if key[0] == "single" or len(members) == 1:
            for m in members:
                out.append(Survivor(m, None, unknown_checks=tuple(unknown_map.get(m, ()))))
        else:
            A, core, C = key
            avals = tuple(sorted(m.B.line_twists()[0] for m in members))
            unk = sorted({u for m in members for u in unknown_map.get(m, ())})
            out.append(Survivor(MonadCandidate(space, A, core, C), avals, unknown_checks=tuple(unk)))
    matched = []
    for s in out:
        label = None
        for e in expected:
            A, B, C = e.exprs(space)
            m = s.candidate
            if e.parametric == s.parametric and (m.A, m.B, m.C) == (A, B, C):
                label = e.label
        matched.append(replace(s, status="exists" if label else "unresolved", matched=label))
    return sorted(matched, key=lambda s: (s.matched is None, s.matched or "", s.candidate.sort_key()))


def _free_parts_by_c(cfg: SearchConfig) -> list[tuple[BundleExpr, list[BundleExpr], Counter]]:
    """Group (A, C) by C; the Counter maps rank A + rank C to the number of A."""
    grouped: dict[BundleExpr, list[BundleExpr]] = {}
    for A, C in _free_parts(cfg):
        grouped.setdefault(C, []).append(A)
    return [(C, As, Counter(bd.rank(A) + bd.rank(C) for A in As)) for C, As in grouped.items()]


def _completions(cfg: SearchConfig, k: int) -> int:
    return count_multisets(len(cfg.twists), k, cfg.multiplicity_bound) if k >= 0 else 0


def _bulk_count(cfg: SearchConfig, spinor_rank: int, hist: Counter) -> int:
    base = cfg.homology_rank - spinor_rank
    return sum(n * _completions(cfg, base + j) for j, n in hist.items())


def _expand_family(cfg, A, S, C, k, index, prev_decomp, tally, unknown):
    """Materialize line completions of a family that passed the theorem conditions."""
    space = cfg.space
    label = lambda: _family_label(A, S, C, k)  # noqa: E731 - built only if sampled
    total = _completions(cfg, k)
    if index is not None:
        key = (_restrict(A), _restrict(S), _restrict(C))
        completions = sorted(ts for ts in index.get(key, ()) if len(ts) == k
                             and all(t in cfg.twists for t in ts)
                             and max(Counter(ts).values() or [0]) <= cfg.multiplicity_bound)
        tally.reject(label, "restriction", total - len(completions))
    else:
        completions = _line_completions(cfg, k)
    out = []
    for ts in completions:
        m = MonadCandidate(space, A, S + BundleExpr(space, [bd.line(t) for t in ts]), C)
        unk = list(unknown)
        if _stage2(cfg, m, tally, prev_decomp, unk):
            out.append((m, unk))
    return out


@lru_cache(maxsize=None)
def classify(cfg: SearchConfig) -> ClassificationResult:
    """Run the pruning pipeline for ``cfg``."""
    space = cfg.space
    tally = _Tally(SAMPLE_LIMIT)
    expected = expected_results(space, cfg.homology_rank)
    assumptions = []
    index = prev_decomp = None
    if cfg.n >= 5:
        prev = classify(replace(cfg, n=cfg.n - 1))
        assumptions.append(RESTRICTION_AXIOM)
        assumptions.extend(a for a in prev.assumptions if a not in assumptions)
        index = {}
        for m in prev.instances():
            key = (m.A, m.B.non_lines(), m.C)
            index.setdefault(key, set()).add(tuple(m.B.line_twists()))
        prev_decomp = prev.decomposable
    if cfg.homology_rank == 2 and cfg.n >= 6:
        assumptions.append(RANK2_AXIOM)

    survivors: list[MonadCandidate] = []
    unknown_map: dict[MonadCandidate, list[str]] = {}
    by_c = _free_parts_by_c(cfg)
    all_hist = sum((h for _, _, h in by_c), Counter())
    r = cfg.homology_rank
    for S in _spinor_parts(cfg, r + 2 * cfg.free_rank_bound):
        rs = bd.rank(S)
        v3, why3 = _cond3(S)
        if v3 == FAIL:
            tally.reject(lambda: f"spinor part {S or 'empty'}", "cond3", _bulk_count(cfg, rs, all_hist))
            continue
        for C, As, hist in by_c:
            v1, why1 = _cond_betti("cond1", S, C)
            if v1 == FAIL:
                tally.reject(lambda: f"spinor part {S or 'empty'}, C = {C}", why1, _bulk_count(cfg, rs, hist))
                continue
            for A in As:
                k = r + bd.rank(A) + bd.rank(C) - rs
                if k < 0 or (k == 0 and not S):
                    continue
                v2, why2 = _cond_betti("cond2", S, A)
                if v2 == FAIL:
                    tally.reject(lambda: _family_label(A, S, C, k), why2, _completions(cfg, k))
                    continue
                unknown = [nm for nm, v in (("cond3", v3), ("cond1", v1), ("cond2", v2)) if v == UNKNOWN]
                found = _expand_family(cfg, A, S, C, k, index, prev_decomp, tally, unknown)
                for m, unk in found:
                    survivors.append(m)
                    unknown_map[m] = unk

    lower = _lower_rank_instances(cfg)
    decomposable = {}
    for m in survivors:
        a = _decomposable_line(m, lower)
        if a is not None:
            decomposable[m] = a
    grouped = _group(cfg, survivors, expected, unknown_map)
    return ClassificationResult(cfg, grouped, tally.total, tally.by_condition, tally.samples, expected,
                                assumptions, decomposable)


def classify_rank3(cfg: SearchConfig) -> ClassificationResult:
    if cfg.homology_rank != 3:
        raise ValueError("classify_rank3 needs homology_rank = 3")
    return classify(cfg)


def classify_rank2(cfg: SearchConfig) -> ClassificationResult:
    if cfg.homology_rank != 2:
        raise ValueError("classify_rank2 needs homology_rank = 2")
    return classify(cfg)


# --- rank >= 4 --------------------------------------------------------------------
@dataclass(frozen=True)
class CokernelDescriptor:
    rank: int
    chern: ChowClass
    inner_vanishing: bool
    generic_injective: bool
    table: CohomologyTable

    def to_dict(self) -> dict:
        return {"rank": self.rank, "chern": str(self.chern), "inner_vanishing": self.inner_vanishing,
                "generic_injective": self.generic_injective}


def _globally_generated(atom: bd.Atom) -> bool:
    return atom.twist >= (0 if atom.is_line else 1)


def counterexample_rank4(h: BundleExpr, window=(-8, 8)) -> CokernelDescriptor:
    """Generic cokernel of O^{r-4} -> h for an ACM bundle h of rank r > 4 on Q_4.

    ``inner_vanishing`` is the LES verdict H^2_* = 0 (it only needs the map to be
    injective as a sheaf map). ``generic_injective`` records whether h is globally
    generated, which makes a generic map injective on every fibre, so the cokernel
    is a vector bundle.
    """
    space = h.space
    if space.n != 4:
        raise ValueError("counterexample_rank4 is stated on Q_4")
    if any(a.kind in (bd.TENSOR, bd.WEDGE) for a in h.atoms()):
        raise ValueError(f"{h} is not a sum of ACM atoms")
    r = bd.rank(h)
    if r <= 4:
        raise ValueError(f"need rank > 4, got {r}")
    chern = bd.total_chern(h)  # c(O^{r-4}) = 1
    free = CohomologyTable(space, BundleExpr(space, [bd.line(0)] * (r - 4)), (), window)
    mid = CohomologyTable(space, h, (), window)
    coker = CohomologyTable.derived(space, {}, window, "coker")
    _, _, coker = les_propagate(free, mid, coker)
    inner = all(coker.dim(i, t) == 0 for i in range(2, space.n - 1) for t in coker.twists())
    injective = all(_globally_generated(a) for a in h.atoms())
    return CokernelDescriptor(4, chern, inner, injective, coker)


def clear_caches() -> None:
    """Drop memoized search results (used for cold-start timing)."""
    for f in (classify, _cond3, _betti_verdict, _restrict, _dual, _h_wedge, count_multisets, h0_spinor, _h0_tensor):
        f.cache_clear()
