from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from rankfix.corpus import GenConfig, env_corpus, mixed_corpus
from rankfix.noetherian import certify
from rankfix.ordinals import LAMBDA, OMEGA, Ordinal, omega_times, parse_ordinal, succ
from rankfix.rank import member, rank_of
from rankfix.skeleton import (EMPTY, IllegalCycle, Node, Ref, SkeletonEnv, Susp,
                              UnresolvedReference, construct)
from rankfix.syntax import (ScheduleError, SkeletonSyntaxError, expand_range, parse_expr,
                            parse_file, parse_schedule, print_env, print_expr)


def test_single_def():
    env = parse_file("def a = susp(empty); main = a;")
    assert env.defs == {"a": Susp(EMPTY)} and env.main == "a"


def test_cyclic_def_loads(cyclic_env):
    assert cyclic_env.defs["X"] == Node(("x",), ((("x", "x"), Ref("X")),))


def test_illegal_cycle_names_definition():
    with pytest.raises(IllegalCycle) as info:
        parse_file("def Y = coprod(Y, empty);")
    assert "Y" in str(info.value)


def test_unresolved_reference():
    with pytest.raises(UnresolvedReference):
        parse_file("def a = susp(b);")


def test_comments_and_empty_coprod():
    env = parse_file("# header\ndef a = coprod(); # trailing\n")
    assert rank_of(env, env.main_expr()).ordinal == Ordinal.of(0)


@pytest.mark.parametrize("text, line, col", [
    ("def a = susp(empty)\nmain = a;", 2, 1),
    ("def a = susp(empty;", 1, 19),
    ("def a = cat { objects: [x]; hom(x, y) = point; };", 1, 32),
    ("def a = point;\ndef a = empty;", 2, 5),
    ("def a = $;", 1, 9),
    ("def point = empty;", 1, 5),
])
def test_syntax_errors_have_positions(text, line, col):
    with pytest.raises(SkeletonSyntaxError) as info:
        parse_file(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_print_expr():
    assert print_expr(Susp(EMPTY)) == "susp(empty)"
    assert parse_expr("susp(empty)") == Susp(EMPTY)
    with pytest.raises(UnresolvedReference):
        parse_expr("susp(Q)", SkeletonEnv())


def test_round_trip_witness_and_cycle(cyclic_env):
    env, e = construct(omega_times(2, 1))
    named = SkeletonEnv({"C": e}, "C")
    again = parse_file(print_env(named))
    assert again.defs == named.defs
    assert rank_of(again, Ref("C")) == rank_of(env, e)
    again = parse_file(print_env(cyclic_env))
    assert again.defs == cyclic_env.defs


def _evaluations(env):
    e = env.main_expr()
    return (str(rank_of(env, e)), type(certify(env, e)).__name__,
            [member(env, e, t) for t in (Ordinal.of(2), OMEGA, LAMBDA)])


def test_round_trip_preserves_evaluation():
    for env, _ in mixed_corpus(31, 500):
        again = parse_file(print_env(env))
        assert again.defs == env.defs
        assert _evaluations(again) == _evaluations(env)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.floats(0, 0.7), st.integers(1, 4))
def test_round_trip_property(seed, p, depth):
    for env, _ in env_corpus(seed, 2, GenConfig(p_cycle=p, max_depth=depth)):
        assert parse_file(print_env(env)) == env


def test_schedule_ranges():
    assert parse_schedule("0..3") == [Ordinal.of(k) for k in range(4)]
    s = parse_schedule("0..w*2", horizon=4)
    assert s == ([Ordinal.of(k) for k in range(5)] + [omega_times(1, k) for k in range(5)]
                 + [omega_times(2)])
    assert parse_schedule("0..w+1, LAMBDA", horizon=2)[-3:] == [OMEGA, succ(OMEGA), LAMBDA]
    assert expand_range(OMEGA, OMEGA, 3) == [OMEGA]


@pytest.mark.parametrize("text", ["", "3,2", "0..x", "0..LAMBDA", "0..w^2", "1,,2"])
def test_schedule_errors(text):
    with pytest.raises(ScheduleError):
        parse_schedule(text)


def test_schedule_reaches_every_limit_below_bound():
    s = parse_schedule("0..w*5+2", horizon=3)
    limits = [x for x in s if x.terms and x.terms[-1][0] != Ordinal()]
    assert limits == [omega_times(k) for k in range(1, 6)]
    assert parse_ordinal("w*5+2") == s[-1]
