from __future__ import annotations

from rankfix.corpus import GenConfig, env_corpus, mixed_corpus
from rankfix.noetherian import (Certified, CounterTower, build_pair_graph, certify,
                                homs_for_closure, replay_tower)
from rankfix.rank import Lasso, NoSmallRank, Step, rank_of
from rankfix.skeleton import EMPTY, EMPTY_ENV, POINT, OmegaSusp, Ref, Susp, construct
from rankfix.ordinals import omega_times
from rankfix.syntax import parse_file


def test_cyclic_pair_graph(cyclic_env):
    g = build_pair_graph(cyclic_env, Ref("X"))
    assert len(g.vertices) == 1
    edges = g.out_edges(g.root)
    assert [(e.pair, e.target == g.root, e.decreasing) for e in edges] == [(("x", "x"), True, False)]


def test_cyclic_counter_tower(cyclic_env):
    v = certify(cyclic_env, Ref("X"))
    assert v == CounterTower(Lasso((), (Step("X", ("x", "x")),)))
    assert replay_tower(cyclic_env, Ref("X"), v.tower, 100)


def test_well_founded_certified():
    assert certify(EMPTY_ENV, POINT) == Certified()
    assert certify(EMPTY_ENV, Susp(EMPTY)) == Certified()
    env, e = construct(omega_times(3, 2))
    assert certify(env, e) == Certified()


def test_omegasusp_self_loop_is_decreasing():
    # the family susp^m(d) points to itself one level down; not a tower
    assert certify(EMPTY_ENV, OmegaSusp(OmegaSusp(EMPTY))) == Certified()


def test_replay_rejects_bad_towers():
    bad = Lasso((), (Step("susp(empty)", ("bot", "top")),))
    out = replay_tower(EMPTY_ENV, Susp(EMPTY), bad, 2)
    assert not out and out.failed_at == 1
    assert not replay_tower(EMPTY_ENV, POINT, Lasso((), (Step("point", ("*", "*")),)), 1)
    assert not replay_tower(EMPTY_ENV, POINT, Lasso((), (Step("point", ("x", "x")),)), 1)
    assert not replay_tower(EMPTY_ENV, POINT, Lasso((), ()), 1)


def test_tower_with_stem():
    env = parse_file("""
        def X = cat { objects: [x]; hom(x, x) = X; };
        def S = susp(coprod(empty, X));
        main = S;
    """)
    v = certify(env, Ref("S"))
    assert isinstance(v, CounterTower)
    assert len(v.tower.stem) >= 1
    assert replay_tower(env, Ref("S"), v.tower, 50)


def test_certify_agrees_with_rank():
    for env, e in mixed_corpus(21, 600):
        v = certify(env, e)
        assert isinstance(v, Certified) != isinstance(rank_of(env, e), NoSmallRank)
        if isinstance(v, CounterTower):
            assert replay_tower(env, e, v.tower, 10 * len(v.tower))


def test_towers_in_omega_components_replay():
    corpus = env_corpus(22, 300, GenConfig(p_cycle=0.6, weights={
        "point": 1, "empty": 1, "node": 3, "susp": 2, "coprod": 1, "omegasusp": 3, "ref": 4}))
    found = 0
    for env, e in corpus:
        v = certify(env, e)
        if isinstance(v, CounterTower):
            found += 1
            assert replay_tower(env, e, v.tower, 10 * len(v.tower))
    assert found > 20


def test_local_characterisation():
    for env, e in mixed_corpus(23, 400):
        whole = isinstance(certify(env, e), Certified)
        parts = all(isinstance(certify(env, h), Certified) for h in homs_for_closure(env, e))
        assert whole == parts
