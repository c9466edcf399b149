import json

import pytest

from quadmonad import bundles as bd
from quadmonad.chow import ChowClass, QuadricSpace, divide
from quadmonad.monads import (
    FAIL,
    PASS,
    CheckReport,
    MinimalityError,
    MonadCandidate,
    NotNormalized,
    check_injectivity_feasible,
    check_minimality,
    check_surjectivity_feasible,
    check_theorem_conditions,
    dualize,
    extend_with_line_bundle,
    homology_invariants,
    kernel_top_chern_test,
    restrict_monad,
    run_all_checks,
)


def monad5(a, b=0, n=4):
    spin = f"S'({1 + b})+S''({1 + b})" if n == 4 else f"S({1 + b})"
    return MonadCandidate.parse(n, "O", f"O({a})+{spin}", f"O({1 + b})")


def test_monad5_passes_everything():
    rep = run_all_checks(monad5(3))
    assert not rep.fatal and not rep.unknown
    assert set(rep.verdicts) >= {"cond1_nonzero", "cond2_betti0j", "cond3", "minimality", "injectivity", "surjectivity"}


def test_split_b_fails_condition1():
    m = MonadCandidate.parse(4, "O", "O(1)+O(1)+O(2)", "O(3)")
    rep = check_theorem_conditions(m)
    assert rep.verdicts["cond1_nonzero"] == FAIL


def test_doubled_spinor_fails_condition3():
    m = MonadCandidate.parse(4, "O", "S'(1)+S'(1)+S''(1)", "O(1)")
    assert check_theorem_conditions(m).verdicts["cond3"] == FAIL


def test_conditions_swap_under_duality():
    m = MonadCandidate.parse(4, "", "S'(1)+S''(1)", "O(1)")
    d = dualize(m)
    assert str(d) == "0 -> O(0) -> S'(1) + S''(1) -> 0 -> 0"
    r1, r2 = check_theorem_conditions(m), check_theorem_conditions(d)
    for key in ("nonzero", "betti0", "betti0j"):
        assert r1.verdicts[f"cond1_{key}"] == r2.verdicts[f"cond2_{key}"]
        assert r1.verdicts[f"cond2_{key}"] == r2.verdicts[f"cond1_{key}"]
    assert dualize(d) == m


def test_q5_duality():
    m = MonadCandidate.parse(5, "", "S(1)", "O(1)")
    assert str(dualize(m)) == "0 -> O(0) -> S(1) -> 0 -> 0"


def test_minimality():
    assert check_minimality(MonadCandidate.parse(4, "O", "O+S'(1)+S''(1)", "O(1)")).fatal
    assert check_minimality(MonadCandidate.parse(4, "O", "O(1)+S'(1)+S''(1)", "O(1)")).fatal
    assert not check_minimality(monad5(2)).fatal


@pytest.mark.parametrize("b", range(-3, 7))
def test_kernel_top_chern_scan(b):
    rep = kernel_top_chern_test(monad5(1, b))
    assert (rep.verdicts["kernel_top_chern"] == PASS) == (b == 0)


def test_kernel_top_chern_values():
    rep = kernel_top_chern_test(monad5(1, 2))
    assert rep.reasons["kernel_top_chern"]["coeffs"] == {"pt": 28}


def test_kernel_top_chern_needs_free_a():
    with pytest.raises(NotNormalized):
        kernel_top_chern_test(MonadCandidate.parse(4, "", "S'(1)+S''(1)", "O(1)"))


def test_injectivity_positivity():
    # O(-1) has no sections; two spinor sections on Q_4 can still miss each other
    assert check_injectivity_feasible(MonadCandidate.parse(4, "O", "S'(1)+S''(1)+O(-1)", "O(1)")).verdicts[
        "injectivity"] == PASS
    bad = MonadCandidate.parse(4, "O", "S'+S''+O(2)", "O(1)")
    assert check_injectivity_feasible(bad).fatal


def test_surjectivity_uses_dual():
    rep = check_surjectivity_feasible(monad5(3))
    assert rep.verdicts["surjectivity"] == PASS
    # spinor twist 1 + b with b = 1 against C = O(1): d - b = 0 < 1
    bad = MonadCandidate.parse(4, "O", "S'(2)+S''(2)+O(3)", "O(1)")
    assert check_injectivity_feasible(bad).verdicts["injectivity"] == PASS
    assert check_surjectivity_feasible(bad).verdicts["surjectivity"] == FAIL


def test_homology_invariants():
    r, c = homology_invariants(MonadCandidate.parse(4, "O", "S'(1)+S''(1)", "O(1)"))
    q4 = QuadricSpace(4)
    assert r == 2
    assert c.part(1) == ChowClass.h(q4)


def test_restrict_q5_to_q4():
    m = monad5(2, n=5)
    assert restrict_monad(m) == monad5(2)
    with pytest.raises(bd.BundleError):
        restrict_monad(monad5(2))


def test_restrict_q6():
    m = MonadCandidate.parse(6, "O", "S'(1)", "")
    assert str(restrict_monad(m).B) == "S(1)"


def test_extend_with_line_bundle():
    z4 = MonadCandidate.parse(4, "O", "S'(1)+S''(1)", "O(1)")
    ext = extend_with_line_bundle(z4, 3)
    assert ext.decomposable and ext.homology_rank == z4.homology_rank + 1
    assert ext.B == monad5(3).B
    with pytest.raises(MinimalityError):
        extend_with_line_bundle(z4, 0)


def test_normalization_and_twist():
    m = MonadCandidate.parse(4, "O(2)", "S'(3)+S''(3)", "O(3)")
    assert m.normalized() == MonadCandidate.parse(4, "O", "S'(1)+S''(1)", "O(1)")
    c = MonadCandidate.parse(4, "", "S'(2)+S''(2)", "O(2)")
    assert c.normalized() == MonadCandidate.parse(4, "", "S'(1)+S''(1)", "O(1)")


def test_report_json_roundtrip():
    rep = run_all_checks(monad5(2))
    text = rep.to_json()
    back = CheckReport.from_dict(json.loads(text))
    assert back.to_dict() == rep.to_dict()
    assert list(json.loads(text)) == ["candidate", "verdicts", "reasons", "fatal"]


def test_candidate_dict_roundtrip():
    m = monad5(-2)
    assert MonadCandidate.from_dict(m.to_dict()) == m


def test_g4_third_chern_by_division():
    q4 = QuadricSpace(4)
    for b in range(-3, 7):
        B = bd.total_chern(bd.parse_bundle_expr(f"S'({1 + b})+S''({1 + b})", 4))
        C = bd.total_chern(bd.parse_bundle_expr(f"O({1 + b})", 4))
        c3 = divide(B, C).part(3)
        assert c3 == 2 * b * (1 + b + b * b) * ChowClass.basis_class(q4, "l_3")
