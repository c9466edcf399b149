import pytest

from quadmonad import bundles as bd
from quadmonad.classify import (
    SearchConfig,
    classify,
    classify_rank2,
    classify_rank3,
    count_multisets,
    counterexample_rank4,
    enumerate_candidates,
    expected_results,
)
from quadmonad.monads import dualize, restrict_monad

GOLDEN3 = {4: {"(1)", "(2)", "(5)"}, 5: {"(3)", "(4)", "(5')"}, 6: {"(6)", "(7)", "(8)", "(9)"}, 7: set(), 8: set()}
GOLDEN2 = {4: {"Z4"}, 5: {"Z5"}, 6: set(), 7: set(), 8: set()}


@pytest.mark.parametrize("n", range(4, 9))
def test_rank3_golden(n):
    res = classify_rank3(SearchConfig(n, 3, 3))
    assert res.matched_labels() == GOLDEN3[n]
    assert res.matches_expected()


@pytest.mark.parametrize("n", range(4, 9))
def test_rank2_golden(n):
    res = classify_rank2(SearchConfig(n, 2, 3))
    assert res.matched_labels() == GOLDEN2[n]
    assert res.matches_expected()


def test_rank_guards():
    with pytest.raises(ValueError):
        classify_rank3(SearchConfig(4, 2))
    with pytest.raises(ValueError):
        classify_rank2(SearchConfig(4, 3))
    with pytest.raises(ValueError):
        SearchConfig(4, 3, twist_bound=0)
    with pytest.raises(ValueError):
        expected_results(9, 3)


def test_parametric_family_range():
    res = classify(SearchConfig(4, 3, 4))
    fam = next(s for s in res.survivors if s.parametric)
    assert fam.matched == "(5)"
    # a = 0 and a = 1 collide with A = O and C = O(1)
    assert fam.a_values == (-4, -3, -2, -1, 2, 3, 4)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_stable_in_twist_bound(n):
    shapes = []
    for T in (3, 4, 5, 6):
        res = classify(SearchConfig(n, 3, T))
        shapes.append(sorted((s.matched, s.describe()) for s in res.survivors))
    assert all(s == shapes[0] for s in shapes)


@pytest.mark.parametrize("n,r", [(4, 2), (4, 3), (5, 2)])
def test_rejections_account_for_every_candidate(n, r):
    cfg = SearchConfig(n, r, 2, multiplicity_bound=2, free_rank_bound=1)
    res = classify(cfg)
    total = sum(1 for _ in enumerate_candidates(cfg))
    assert res.rejected_count + len(res.instances()) == total
    assert sum(res.rejections_by_condition.values()) == res.rejected_count


def test_count_multisets():
    assert count_multisets(3, 2, 3) == 6
    assert count_multisets(3, 3, 1) == 1
    assert count_multisets(2, 5, 2) == 0


@pytest.mark.parametrize("n", range(4, 9))
@pytest.mark.parametrize("r", [2, 3])
def test_disabled_spinors_give_nothing(n, r):
    assert not classify(SearchConfig(n, r, 3, spinors_enabled=False)).survivors


@pytest.mark.parametrize("n", [4, 5, 6])
def test_duality_closure(n):
    T = 3
    inst = classify(SearchConfig(n, 3, T)).instances()
    keys = {(m.A, m.B, m.C) for m in inst}
    for m in inst:
        d = dualize(m)
        # the O(a) parameter maps to 1 - a and may leave the searched box
        if all(abs(t) <= T for t in d.B.line_twists()):
            assert (d.A, d.B, d.C) in keys


@pytest.mark.parametrize("n", [5, 6])
def test_restriction_closure(n):
    low = classify(SearchConfig(n - 1, 3, 3)).instances()
    for m in classify(SearchConfig(n, 3, 3)).instances():
        assert restrict_monad(m).normalized() in low


def test_q6_decomposable_core_rejected():
    res = classify(SearchConfig(6, 3, 3))
    assert res.rejections_by_condition.get("core", 0) > 0
    assert all(not s.parametric for s in res.survivors)


def test_assumptions_reported():
    assert classify(SearchConfig(4, 3, 3)).assumptions == []
    assert any("restriction" in a for a in classify(SearchConfig(5, 3, 3)).assumptions)
    assert any("split" in a for a in classify(SearchConfig(6, 2, 3)).assumptions)


def test_result_serializes():
    d = classify(SearchConfig(4, 3, 3)).to_dict()
    assert d["matches_expected"] is True
    assert {s["matched_sequence"] for s in d["survivors"]} == GOLDEN3[4]
    assert len(d["sample_rejections"]) <= 10


def test_counterexample_rank4():
    h = bd.parse_bundle_expr("S'+S''+O(1)", 4)
    d = counterexample_rank4(h)
    assert d.rank == 4 and d.inner_vanishing
    assert d.chern == bd.total_chern(h)
    with pytest.raises(ValueError):
        counterexample_rank4(bd.parse_bundle_expr("S'(1)+S''(1)", 4))
    with pytest.raises(ValueError):
        counterexample_rank4(bd.parse_bundle_expr("S(1)+O", 5))


def test_counterexample_generic_injectivity_flag():
    assert counterexample_rank4(bd.parse_bundle_expr("S'(1)+S''(1)+O(1)", 4)).generic_injective
    assert not counterexample_rank4(bd.parse_bundle_expr("S'+S''+O(1)", 4)).generic_injective
