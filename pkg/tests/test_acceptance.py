"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the summary lines are printed
at the end of the session) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import sys
import time

import pytest
import sympy

from quadmonad import bundles as bd
from quadmonad.bundles import parse_bundle_expr
from quadmonad.chow import ChowClass, QuadricSpace, degree, divide
from quadmonad.classify import SearchConfig, classify, clear_caches, counterexample_rank4, expected_results
from quadmonad.cli import main as cli_main
from quadmonad.cohomology import betti0, cohomology
from quadmonad.monads import FAIL, PASS, MonadCandidate, check_theorem_conditions, dualize, restrict_monad, run_all_checks
from quadmonad.oracles import z4_tables


def criterion_1():
    t0 = time.perf_counter()
    for n in range(4, 8):
        space = QuadricSpace(n)
        assert degree(ChowClass.h(space, n)) == 2
        basis = [ChowClass.basis_class(space, lbl) for lbl in space.basis]
        one = ChowClass.one(space)
        for x in basis:
            assert x * one == x
        for x, y in itertools.product(basis, repeat=2):
            assert x * y == y * x
            for c, d in itertools.product(range(-2, 3), repeat=2):
                assert (c * x + d * y) * y == c * (x * y) + d * (y * y)
                assert (c * x) * (d * y) == (c * d) * (x * y)
        for x, y, z in itertools.product(basis, repeat=3):
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
    dt = time.perf_counter() - t0
    assert dt < 1.0, f"{dt:.2f}s"
    return f"degree(h^n) = 2 on Q_4..Q_7, axioms on basis boxes [-2,2], {dt:.2f}s"


def criterion_2():
    c = bd.total_chern(parse_bundle_expr("S'(1)+S''(1)", 4))
    c4 = degree(c.part(4))
    assert c4 == 0 and c.part(4) == ChowClass.zero(QuadricSpace(4))
    return f"degree c_4 = {c4}"


def criterion_3():
    q4 = QuadricSpace(4)
    b_ = sympy.symbols("b")
    quotient_form = 2 * (1 + b_ + b_**2) * (b_ + b_**2) / (1 + b_)
    assert sympy.simplify(quotient_form - 2 * b_ * (1 + b_ + b_**2)) == 0
    l3 = ChowClass.basis_class(q4, "l_3")
    for b in range(-3, 7):
        cb = bd.total_chern(parse_bundle_expr(f"S'({1 + b})+S''({1 + b})", 4))
        cc = bd.total_chern(parse_bundle_expr(f"O({1 + b})", 4))
        c3 = divide(cb, cc).part(3)
        assert c3 == 2 * b * (1 + b + b * b) * l3
        assert (c3 == ChowClass.zero(q4)) == (b == 0)
    return "c_3(G_4(b)) = 2b(1+b+b^2) l_3 for b in [-3,6], zero only at b = 0"


def criterion_4():
    m5 = MonadCandidate.parse(4, "O", "S'(1)+S''(1)+O(3)", "O(1)")
    rep = run_all_checks(m5)
    assert not rep.fatal and not rep.unknown
    split = MonadCandidate.parse(4, "O", "O(1)+O(1)+O(2)", "O(3)")
    assert check_theorem_conditions(split).verdicts["cond1_nonzero"] == FAIL
    doubled = MonadCandidate.parse(4, "O", "S'(1)+S'(1)+S''(1)", "O(1)")
    assert check_theorem_conditions(doubled).verdicts["cond3"] == FAIL
    pair = bd.BundleExpr(QuadricSpace(4), [bd.tensor_pair(bd.spinor(bd.PLUS, 0), bd.spinor(bd.MINUS, 0))])
    b0 = betti0(cohomology(pair).row(1))
    assert b0 == 1
    return f"(5) passes, split B fails cond 1, doubled S' fails cond 3, beta_0 = {b0}"


def criterion_5():
    survivors, solutions = set(), set()
    for b, c, d in itertools.product(range(-4, 5), repeat=3):
        m = MonadCandidate.parse(4, "O", f"O(7)+S'({1 + b})+S''({1 + c})", f"O({d})")
        if check_theorem_conditions(m).verdicts["cond1_betti0j"] == PASS:
            survivors.add((b, c, d))
        if 2 + b + c == 2 * d:
            solutions.add((b, c, d))
    assert survivors == solutions
    return f"{len(survivors)} of 729 triples survive, exactly the solutions of 2+b+c = 2d"


GOLDEN3 = {4: {"(1)", "(2)", "(5)"}, 5: {"(3)", "(4)", "(5')"}, 6: {"(6)", "(7)", "(8)", "(9)"}, 7: set(), 8: set()}
GOLDEN2 = {4: {"Z4"}, 5: {"Z5"}, 6: set(), 7: set(), 8: set()}


def _golden(rank, golden, budget, bounds=(3, 5)):
    clear_caches()
    t0 = time.perf_counter()
    for T in bounds:
        for n in range(4, 9):
            res = classify(SearchConfig(n, rank, T))
            assert res.matched_labels() == golden[n], (n, T, res.matched_labels())
            assert all(s.status == "exists" for s in res.survivors), (n, T)
    dt = time.perf_counter() - t0
    assert dt < budget, f"{dt:.2f}s"
    return dt


def criterion_6():
    dt = _golden(3, GOLDEN3, 10.0)
    return f"rank 3 lists on Q_4..Q_8 for T = 3, 5 in {dt:.2f}s (cold)"


def criterion_7():
    dt = _golden(2, GOLDEN2, 5.0)
    return f"rank 2 lists on Q_4..Q_8 for T = 3, 5 in {dt:.2f}s (cold)"


def criterion_8():
    _, z = z4_tables((-6, 6))
    h1 = {t: z.dim(1, t) for t in range(-6, 7)}
    assert h1 == {t: (1 if t == -1 else 0) for t in range(-6, 7)}
    return "h^1(Z_4(-1)) = 1, zero at the other twists in [-6,6]"


def criterion_9():
    pairs = []
    for rank, n in [(2, 4), (2, 5), (3, 4), (3, 5), (3, 6)]:
        space = QuadricSpace(n)
        T = 5
        res = classify(SearchConfig(n, rank, T))
        inst = res.instances()
        keys = {(m.A, m.B, m.C) for m in inst}
        for m in inst:
            d = dualize(m)
            if all(abs(t) <= T for t in d.B.line_twists()):
                assert (d.A, d.B, d.C) in keys, (n, str(m))
        if n >= 5:
            low = classify(SearchConfig(n - 1, rank, T)).instances()
            for m in inst:
                assert restrict_monad(m).normalized() in low, str(m)
        for e in expected_results(space, rank):
            if e.parametric:
                continue
            A, B, C = e.exprs(space)
            d = dualize(MonadCandidate(space, A, B, C))
            partner = next(x.label for x in expected_results(space, rank)
                           if not x.parametric and x.exprs(space) == (d.A, d.B, d.C))
            pairs.append(f"{e.label}<->{partner}")
    for want in ("(1)<->(2)", "(3)<->(4)", "(6)<->(9)", "(7)<->(8)", "Z4<->Z4", "Z5<->Z5"):
        assert want in pairs, want
    return "survivors closed under duality and restriction; " + ", ".join(sorted(set(pairs)))


def criterion_10(capsys=None):
    clear_caches()
    t0 = time.perf_counter()
    for n in range(4, 9):
        for rank in (2, 3):
            code = cli_main(["classify", "--n", str(n), "--rank", str(rank), "--disable-spinors", "--format", "json"])
            assert code == 0, (n, rank)
            assert not classify(SearchConfig(n, rank, 5, spinors_enabled=False)).survivors
    dt = time.perf_counter() - t0
    assert dt < 5.0, f"{dt:.2f}s"
    return f"no survivors without spinors on Q_4..Q_8, ranks 2 and 3, {dt:.2f}s"


def criterion_11():
    d = counterexample_rank4(parse_bundle_expr("S'+S''+O(1)", 4))
    assert d.rank == 4 and d.inner_vanishing
    return f"rank {d.rank}, H^2_* of the cokernel vanishes, c = {d.chern}"


CRITERIA = [
    (1, "Chow ring consistency", criterion_1),
    (2, "c_4(S'(1)+S''(1)) = 0", criterion_2),
    (3, "c_3(G_4(b)) by division", criterion_3),
    (4, "theorem conditions checker", criterion_4),
    (5, "graded Betti refinement 2+b+c = 2d", criterion_5),
    (6, "rank 3 classification lists", criterion_6),
    (7, "rank 2 classification lists", criterion_7),
    (8, "H^1 of Z_4 by exact sequences", criterion_8),
    (9, "duality and restriction closure", criterion_9),
    (10, "no survivors without spinors", criterion_10),
    (11, "rank 4 cokernel without inner cohomology", criterion_11),
]


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, record_property, capsys):
    record_property("acceptance", f"{num}. {title}")
    try:
        detail = fn()
    except Exception:
        with capsys.disabled():
            print(f"\nACCEPTANCE {num:>2} FAIL  {title}")
        raise
    with capsys.disabled():
        print(f"\nACCEPTANCE {num:>2} PASS  {title}: {detail}")


if __name__ == "__main__":
    failures = 0
    for num, title, fn in CRITERIA:
        try:
            print(f"ACCEPTANCE {num:>2} PASS  {title}: {fn()}")
        except Exception as exc:  # report and keep going
            failures += 1
            print(f"ACCEPTANCE {num:>2} FAIL  {title}: {exc!r}")
    sys.exit(1 if failures else 0)
