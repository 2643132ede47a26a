from __future__ import annotations

import itertools

import pytest

from rankfix.corpus import GenConfig, env_corpus
from rankfix.ordinals import Ordinal, omega_times, parse_ordinal
from rankfix.skeleton import (EMPTY, EMPTY_ENV, POINT, Coprod, IllegalCycle, Node, OmegaSusp,
                              Ref, SkeletonEnv, SkeletonError, Susp, UnresolvedReference,
                              UnsupportedOrdinal, construct, has_object, hom_of, hom_pairs,
                              is_hereditarily_finite, is_point_like, iter_objects, object_count,
                              pair_homs, suspend)

D = Node(("a", "b"), ((("a", "b"), POINT),))


def test_node_validation():
    with pytest.raises(SkeletonError):
        Node(())
    with pytest.raises(SkeletonError):
        Node(("a", "a"))
    with pytest.raises(SkeletonError):
        Node(("a",), ((("a", "z"), POINT),))
    with pytest.raises(SkeletonError):
        Node(("a",), ((("a", "a"), POINT), (("a", "a"), EMPTY)))


def test_node_missing_hom_is_empty():
    assert D.hom("b", "a") == EMPTY


def test_env_rejects_unresolved_and_component_cycles():
    with pytest.raises(UnresolvedReference):
        SkeletonEnv({"A": Susp(Ref("B"))})
    with pytest.raises(IllegalCycle) as info:
        SkeletonEnv({"Y": Coprod((Ref("Y"), EMPTY))})
    assert info.value.name == "Y"
    with pytest.raises(IllegalCycle):
        SkeletonEnv({"A": OmegaSusp(Ref("B")), "B": Coprod((Ref("A"),))})


def test_env_accepts_hom_position_cycles():
    SkeletonEnv({"X": Node(("x",), ((("x", "x"), Ref("X")),))})
    SkeletonEnv({"S": Susp(Ref("S"))})
    # mixed: the cycle passes a component position but also a hom position
    SkeletonEnv({"A": Coprod((Ref("B"),)), "B": Susp(Ref("A"))})


def test_suspension_convention():
    s = Susp(D)
    assert hom_of(EMPTY_ENV, s, "bot", "top") == D
    assert hom_of(EMPTY_ENV, s, "bot", "bot") == POINT
    assert hom_of(EMPTY_ENV, s, "top", "top") == POINT
    assert hom_of(EMPTY_ENV, s, "top", "bot") == EMPTY
    with pytest.raises(KeyError):
        hom_of(EMPTY_ENV, s, "bot", "nope")


def test_coprod_homs():
    c = Coprod((D, POINT))
    assert list(iter_objects(EMPTY_ENV, c)) == ["0:a", "0:b", "1:*"]
    assert hom_of(EMPTY_ENV, c, "0:a", "0:b") == POINT
    assert hom_of(EMPTY_ENV, c, "0:a", "1:*") == EMPTY
    assert hom_of(EMPTY_ENV, c, "1:*", "1:*") == POINT


def test_omegasusp_objects_and_homs():
    o = OmegaSusp(D)
    assert object_count(EMPTY_ENV, o) is None
    first = list(itertools.islice(iter_objects(EMPTY_ENV, o), 6))
    assert first == ["0:a", "0:b", "1:bot", "1:top", "2:bot", "2:top"]
    assert hom_of(EMPTY_ENV, o, "3:bot", "3:top") == suspend(D, 2)
    assert hom_of(EMPTY_ENV, o, "1:bot", "1:top") == D
    assert hom_of(EMPTY_ENV, o, "1:bot", "2:top") == EMPTY
    assert has_object(EMPTY_ENV, o, "17:top") and not has_object(EMPTY_ENV, o, "17:mid")


def test_point_likeness():
    assert is_point_like(EMPTY_ENV, POINT)
    assert is_point_like(EMPTY_ENV, Node(("x",), ((("x", "x"), POINT),)))
    assert is_point_like(EMPTY_ENV, Coprod((POINT, EMPTY)))
    assert not is_point_like(EMPTY_ENV, EMPTY)
    assert not is_point_like(EMPTY_ENV, Node(("x",)))
    assert not is_point_like(EMPTY_ENV, Susp(EMPTY))


def test_cyclic_single_object_is_not_point_like(cyclic_env):
    assert not is_point_like(cyclic_env, Ref("X"))


def _brute_homs(env, e):
    objs = list(iter_objects(env, e))
    return sorted((repr(env.resolve(hom_of(env, e, a, b))) for a in objs for b in objs))


def test_hom_pairs_matches_enumeration_when_finite():
    corpus = env_corpus(3, 300, GenConfig(allow_omega=False))
    for env, e in corpus:
        fam = hom_pairs(env, env.resolve(e))
        assert not fam.linear_families
        got = sorted(repr(env.resolve(h)) for h in fam.finite_homs)
        assert got == _brute_homs(env, e)


def test_pair_homs_agree_with_hom_of():
    for env, e in env_corpus(4, 300):
        for a, b, h in pair_homs(env, e):
            assert env.resolve(hom_of(env, e, a, b)) == env.resolve(h)


def test_hereditary_finiteness():
    assert is_hereditarily_finite(EMPTY_ENV, Susp(D))
    assert not is_hereditarily_finite(EMPTY_ENV, Susp(OmegaSusp(EMPTY)))


@pytest.mark.parametrize("text, expected", [
    ("0", EMPTY), ("3", suspend(EMPTY, 3)), ("w", OmegaSusp(EMPTY)),
    ("w*2+1", Susp(OmegaSusp(OmegaSusp(EMPTY)))),
])
def test_construct_shape(text, expected):
    assert construct(parse_ordinal(text)) == (EMPTY_ENV, expected)


def test_construct_rejects_large_ordinals():
    with pytest.raises(UnsupportedOrdinal):
        construct(parse_ordinal("w^2"))
    construct(omega_times(40, 3))
    construct(Ordinal.of(0))
