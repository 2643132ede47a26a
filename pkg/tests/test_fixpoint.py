from __future__ import annotations

import pytest

from rankfix.corpus import hf_corpus
from rankfix.fixpoint import (ALEPH0, INITIAL, TERMINAL, ChainError, Fin,
                              NoStabilizationWithinBudget, PolyFunctor, StabilizedAt,
                              bounded_universe, card_eval, card_universe, lambek_check,
                              parse_functor, rank_universe, run_chain, susp_tower_corpus,
                              trunc_universe)
from rankfix.ordinals import LAMBDA, OMEGA, Ordinal, omega_times, succ
from rankfix.rank import member
from rankfix.skeleton import EMPTY_ENV, construct
from rankfix.syntax import parse_schedule


def test_rank_chain_never_stabilises_below_lambda():
    u = rank_universe()
    report = run_chain(u, parse_schedule("0..w*2"))
    assert isinstance(report.verdict, NoStabilizationWithinBudget)
    assert len(report.verdict.witnesses) == len(report.visited)
    for theta, w in report.verdict.witnesses:
        assert w == construct(theta)[1]
        assert member(EMPTY_ENV, w, succ(theta)) and not member(EMPTY_ENV, w, theta)


def test_rank_chain_stabilises_at_lambda():
    u = rank_universe()
    report = run_chain(u, parse_schedule("0..w*2, LAMBDA"))
    assert report.verdict.index is LAMBDA
    assert lambek_check(u, report)


def test_lambek_check_needs_stabilisation():
    u = rank_universe()
    with pytest.raises(ValueError):
        lambek_check(u, run_chain(u, parse_schedule("0..3")))


def test_chain_schedule_errors():
    u = rank_universe()
    with pytest.raises(ChainError):
        run_chain(u, [Ordinal.of(1)])
    with pytest.raises(ChainError):
        run_chain(u, [Ordinal.of(0), Ordinal.of(2)])
    with pytest.raises(ChainError):
        run_chain(trunc_universe(), [Ordinal.of(0)], INITIAL)


def test_bounded_chain_stabilises_at_omega():
    u = bounded_universe(susp_tower_corpus(51) + hf_corpus(5, 100))
    report = run_chain(u, parse_schedule("0..w+1", 50))
    assert report.verdict.index == OMEGA
    assert lambek_check(u, report)
    for n in range(51):
        v = u.stage_equal(u.at(Ordinal.of(n)), u.step(u.at(Ordinal.of(n))))
        assert v.witness == construct(Ordinal.of(n))[1]


def test_bounded_stage_omega_matches_its_successor():
    u = bounded_universe(susp_tower_corpus(30) + hf_corpus(6, 200))
    assert u.stage_equal(u.at(OMEGA), u.step(u.at(OMEGA))).equal


@pytest.mark.parametrize("spec, index, value", [
    ("X", Ordinal.of(0), Fin(0)), ("3", Ordinal.of(1), Fin(3)), ("0", Ordinal.of(0), Fin(0)),
    ("1 + X", OMEGA, ALEPH0), ("1 + X^2", OMEGA, ALEPH0), ("2*X + 1", OMEGA, ALEPH0),
])
def test_card_chains(spec, index, value):
    u = card_universe(parse_functor(spec))
    report = run_chain(u, parse_schedule("0..w+1", 8))
    assert isinstance(report.verdict, StabilizedAt)
    assert report.verdict.index == index and report.verdict.value == str(value)
    assert lambek_check(u, report)


def test_card_terminal_chain():
    u = card_universe(parse_functor("1 + X"))
    with pytest.raises(ChainError):
        run_chain(u, parse_schedule("0..w", 4), TERMINAL)
    u = card_universe(parse_functor("X^2"))
    report = run_chain(u, parse_schedule("0..w", 4), TERMINAL)
    assert report.verdict.index == Ordinal.of(0) and report.verdict.value == "1"


def test_functor_parsing():
    assert parse_functor("1 + X^2") == PolyFunctor((1, 0, 1))
    assert parse_functor("2*X + X + 4") == PolyFunctor((4, 3))
    assert str(parse_functor("3*X^2+1")) == "1 + 3*X^2"
    assert card_eval(PolyFunctor((1, 0, 1)), Fin(3)) == Fin(10)
    assert card_eval(PolyFunctor((1, 1)), ALEPH0) == ALEPH0
    assert card_eval(PolyFunctor((2,)), ALEPH0) == Fin(2)
    with pytest.raises(ValueError):
        parse_functor("Y + 1")


def test_trunc_tower():
    u = trunc_universe()
    report = run_chain(u, parse_schedule("0..w", 8), TERMINAL)
    assert report.verdict.index == OMEGA and report.verdict.value == "Cat_w"
    assert report.visited[0][1] == "Cat_(-2,0)"
    assert lambek_check(u, report)


def test_report_json_shape():
    u = rank_universe()
    data = run_chain(u, parse_schedule("0..2")).to_json(u)
    assert data["verdict"]["kind"] == "no_stabilization"
    assert [w["stage"] for w in data["verdict"]["witnesses"]] == ["0", "1", "2"]
    assert data["verdict"]["witnesses"][1]["witness"] == "susp(empty)"


def test_rank_universe_over_corpus_above_construct_range():
    # beyond w^2 the witness comes from the corpus instead of construct
    u = rank_universe([construct(omega_times(3))])
    assert u.stage_equal(omega_times(3), succ(omega_times(3))).witness == construct(omega_times(3))[1]
