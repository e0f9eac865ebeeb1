import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packtriple.conditions import (
    CHECKERS,
    THEOREMS,
    Cor8Outcome,
    HypothesisReport,
    Prediction,
    check_all,
    check_be,
    check_cor8,
    check_edge_sum_lemma7,
    check_ss_product,
    detect_be_bad_pair,
    lemma7_bound,
)
from packtriple.core import Graph, build_triple, empty_triple, relabel_triple, transpose
from packtriple.generators import (
    _union,
    be_bad_pair,
    be_bad_pair_triple,
    complete,
    complete_bipartite,
    cycle,
    independent,
    kk_exception,
    matching,
    sharpness_family,
    star,
)
from packtriple.solver import brute_force_pack

from conftest import triples


def test_ss_product_examples():
    r = check_ss_product(kk_exception("bipartite", 6))
    assert r.hypothesis_holds and r.exception == "kk_bipartite"
    assert r.predicted is Prediction.EXCEPTION_NO_PACK and r.strict is False
    r = check_ss_product(empty_triple(4))
    assert r.predicted is Prediction.MUST_PACK and r.strict
    r = check_ss_product(kk_exception("clique", 6))
    assert r.exception == "kk_clique" and r.predicted is Prediction.EXCEPTION_NO_PACK


def test_ss_product_exact_half():
    # n odd: 2*(1*1 + 1) = 4 <= 5 holds, while 2*(1*2 + 1) = 6 > 5 does not
    t = build_triple(5, [(0, 1)], [(0, 1)], [(0, 0)])
    assert check_ss_product(t).hypothesis_holds
    t = build_triple(5, [(0, 1)], [(0, 1), (1, 2)], [(0, 0)])
    assert not check_ss_product(t).hypothesis_holds


def test_ss_product_exception_either_order():
    t = build_triple(6, complete_bipartite(3, 3).edges(), matching(3).edges())
    assert check_ss_product(t).exception == "kk_bipartite"


def test_ss_product_clique_beyond_hypothesis_still_flags():
    g2 = _union(complete(5), independent(3))
    t = build_triple(8, matching(4).edges(), g2.edges() + [(4, 5)])
    r = check_ss_product(t)
    assert not r.hypothesis_holds and r.exception == "kk_clique"
    assert r.predicted is Prediction.EXCEPTION_NO_PACK
    assert brute_force_pack(t) is None


def test_ss_product_drop_exceptions_hook():
    r = check_ss_product(kk_exception("bipartite", 6), drop_exceptions=True)
    assert r.exception is None and r.predicted is Prediction.MUST_PACK


def test_lemma7_examples():
    assert check_edge_sum_lemma7(empty_triple(2)).predicted is Prediction.MUST_PACK
    t = build_triple(4, [(0, 1)], [(1, 2)], [(0, 0), (3, 3)])
    assert t.edge_sum == 4 == lemma7_bound(4)
    assert check_edge_sum_lemma7(t).predicted is Prediction.MUST_PACK
    t = build_triple(6, star(5).edges(), matching(3).edges())
    assert t.edge_sum == 8 and lemma7_bound(6) == 7
    assert check_edge_sum_lemma7(t).predicted is Prediction.NO_PREDICTION


def test_lemma7_degree_condition():
    t = sharpness_family("FIG2A", 7)
    assert t.edge_sum <= lemma7_bound(7)
    assert not check_edge_sum_lemma7(t).hypothesis_holds


def test_cor8_examples():
    k2 = [(0, 1)]
    r = check_cor8(build_triple(2, k2, k2))
    assert r.case is Cor8Outcome.K2_K2 and r.predicted is Prediction.EXCEPTION_NO_PACK
    r = check_cor8(sharpness_family("FIG2A", 3))
    assert r.case is Cor8Outcome.FULL_YELLOW_VERTEX
    r = check_cor8(empty_triple(5))
    assert r.case is Cor8Outcome.PACKS and r.predicted is Prediction.MUST_PACK
    assert not check_cor8(sharpness_family("FIG2C", 4)).hypothesis_holds
    with pytest.raises(ValueError):
        check_cor8(empty_triple(1))


def test_cor8_full_yellow_on_side_two():
    t = build_triple(3, yellow=[(u, 1) for u in range(3)])
    assert check_cor8(t).case is Cor8Outcome.FULL_YELLOW_VERTEX


def test_detect_bad_pair_examples():
    assert detect_be_bad_pair(*be_bad_pair(1)) == 1
    a, b = be_bad_pair(1)
    assert detect_be_bad_pair(b, a) == 1
    g1 = _union(independent(4), complete(4))
    g2 = _union(complete(2), complete(3), complete(3))
    assert detect_be_bad_pair(g1, g2) == 6
    assert detect_be_bad_pair(matching(2), matching(2)) is None


@pytest.mark.parametrize("i", range(1, 8))
def test_detect_every_bad_pair_relabelled(i):
    a, b = be_bad_pair(i)
    p = list(reversed(range(a.n)))
    assert detect_be_bad_pair(b.relabel(p), a) == i


def test_be_examples():
    r = check_be(be_bad_pair_triple(4))
    assert r.exception == "be_bad_pair_4" and r.predicted is Prediction.EXCEPTION_NO_PACK
    assert check_be(sharpness_family("FIG2B", 4)).predicted is Prediction.NO_PREDICTION
    assert check_be(empty_triple(4)).predicted is Prediction.MUST_PACK


def test_be_with_no_yellow_room_matches_white_statement():
    # a bad pair plus one yellow edge leaves the hypothesis entirely
    t = build_triple(4, *[g.edges() for g in be_bad_pair(1)], [(0, 0)])
    r = check_be(t)
    assert not r.hypothesis_holds and r.predicted is Prediction.NO_PREDICTION


def test_report_invariants():
    with pytest.raises(AssertionError):
        HypothesisReport("be", False, None, Prediction.MUST_PACK)
    with pytest.raises(AssertionError):
        HypothesisReport("be", True, None, Prediction.EXCEPTION_NO_PACK)


def test_report_lines_and_order():
    lines = [r.line() for r in check_all(empty_triple(4))]
    assert lines == [
        "ss_product hypothesis=yes exception=- predicted=must_pack strict=yes",
        "lemma7 hypothesis=yes exception=- predicted=must_pack",
        "cor8 hypothesis=yes exception=- predicted=must_pack case=packs",
        "be hypothesis=yes exception=- predicted=must_pack",
    ]
    assert check_all(empty_triple(1))[2] is None


def _reports(t):
    return [CHECKERS[name](t) for name in THEOREMS if not (name == "cor8" and t.n < 2)]


@settings(max_examples=200)
@given(triples(max_n=6), st.data())
def test_checkers_invariant_under_symmetry(t, data):
    base = _reports(t)
    assert _reports(transpose(t)) == base
    sigma = data.draw(st.permutations(range(t.n)))
    tau = data.draw(st.permutations(range(t.n)))
    assert _reports(relabel_triple(t, sigma, tau)) == base


@settings(max_examples=300, deadline=None)
@given(triples(min_n=5, max_n=6, max_yellow=6))
def test_checkers_sound_against_oracle(t):
    packs = brute_force_pack(t) is not None
    for rep in _reports(t):
        if rep.predicted is Prediction.MUST_PACK:
            assert packs, rep
        elif rep.predicted is Prediction.EXCEPTION_NO_PACK:
            assert not packs, rep


def test_checkers_sound_on_sparse_n5_sample():
    # the random strategy rarely hits hypotheses at n = 5, so sweep small edge sets directly
    graphs = [Graph.from_edges(5, e) for k in range(3) for e in itertools.combinations(
        list(itertools.combinations(range(5), 2)), k)]
    for g1 in graphs[::3]:
        for g2 in graphs[::5]:
            t = build_triple(5, g1.edges(), g2.edges(), [(0, 0), (1, 2)])
            packs = brute_force_pack(t) is not None
            for rep in _reports(t):
                if rep.predicted is Prediction.MUST_PACK:
                    assert packs
                elif rep.predicted is Prediction.EXCEPTION_NO_PACK:
                    assert not packs


def test_cycle_and_matching_under_product_bound():
    t = build_triple(6, matching(3).edges(), cycle(6).edges())
    r = check_ss_product(t)
    assert r.strict and r.predicted is Prediction.MUST_PACK
