"""Property suites run by ``rankfix check``.

Each suite takes a seed and a case count and returns a list of :class:`Check`
results; a suite passes when every check passes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .corpus import GenConfig, env_corpus, hf_corpus, mixed_corpus, ordinal_corpus
from .fixpoint import (ALEPH0, TERMINAL, Fin, NoStabilizationWithinBudget, StabilizedAt,
                       bounded_universe, card_universe, lambek_check, parse_functor, rank_universe,
                       run_chain, susp_tower_corpus, trunc_universe)
from .noetherian import Certified, CounterTower, certify, homs_for_closure, replay_tower
from .ordinals import (LAMBDA, OMEGA, Ordinal, add, cmp, omega_times, parse_ordinal,
                       print_ordinal, succ)
from .rank import (Bottom, NoSmallRank, Of, RankEvaluator, member, member_via_homs, rank_of,
                   rank_plus_one)
from .skeleton import Susp, construct, hom_pairs, print_env
from .syntax import parse_file, parse_schedule


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _count(name: str, failures: list[str], total: int) -> Check:
    detail = f"{total - len(failures)}/{total} ok"
    if failures:
        detail += "; first failure: " + failures[0]
    return Check(name, not failures, detail)


def rank_schedule_ordinals() -> list[Ordinal]:
    return ([Ordinal.of(n) for n in range(26)]
            + [omega_times(a, b) for a in range(4) for b in range(11)])


def suite_ordinals(seed: int, cases: int) -> list[Check]:
    xs = ordinal_corpus(seed, max(cases // 5, 20))
    pairs = [(a, b) for a in xs for b in xs]
    fails = [f"{a} vs {b}" for a, b in pairs
             if cmp(a, b) != -cmp(b, a) or (cmp(a, b) == 0) != (a == b)]
    out = [_count("cmp total and antisymmetric", fails, len(pairs))]
    rng = random.Random(seed)
    triples = [(rng.choice(xs), rng.choice(xs), rng.choice(xs)) for _ in range(cases)]
    fails = [f"{a}, {b}, {c}" for a, b, c in triples if add(add(a, b), c) != add(a, add(b, c))]
    out.append(_count("add associative", fails, len(triples)))
    fails = [str(a) for a in xs if add(a, Ordinal()) != a or add(Ordinal(), a) != a]
    out.append(_count("zero is a two-sided unit", fails, len(xs)))
    fails = [f"{a} <= {b}, c={c}" for a, b, c in triples
             if cmp(a, b) <= 0 and cmp(add(c, a), add(c, b)) > 0]
    out.append(_count("add monotone on the right", fails, len(triples)))
    fails = [str(a) for a in xs
             if not succ(a) > a or any(a < y < succ(a) for y in xs)]
    out.append(_count("succ is the immediate successor", fails, len(xs)))
    fails = [str(a) for a in xs if parse_ordinal(print_ordinal(a)) != a]
    out.append(_count("ordinal codec round trip", fails, len(xs)))
    return out


def suite_rank_witnesses(seed: int, cases: int) -> list[Check]:
    thetas = rank_schedule_ordinals()
    fails = []
    for theta in thetas:
        env, e = construct(theta)
        r = rank_of(env, e)
        if r != Of(theta):
            fails.append(f"rank(construct({theta})) = {r}")
    out = [_count("rank(construct(theta)) = theta", fails, len(thetas))]
    corpus = env_corpus(seed, cases, GenConfig(p_cycle=0.0))
    fails = []
    for env, e in corpus:
        ev = RankEvaluator(env)
        expected = Of(max(rank_plus_one(ev.rank(e)), Ordinal.of(1)))
        got = ev.rank(Susp(e))
        if got != expected:
            fails.append(f"{got} != {expected} for\n{print_env(env)}")
    out.append(_count("suspension law", fails, len(corpus)))
    return out


def successor_stages() -> list[Ordinal]:
    return [Ordinal.of(n) for n in range(1, 13)] + [succ(OMEGA), succ(omega_times(2))]


def suite_stage_recursion(seed: int, cases: int) -> list[Check]:
    corpus = mixed_corpus(seed, cases)
    stages = successor_stages()
    fails = []
    for env, e in corpus:
        ev = RankEvaluator(env)
        for theta in stages:
            if member(env, e, theta, ev) != member_via_homs(env, e, theta, ev):
                fails.append(f"stage {theta}:\n{print_env(env)}")
    return [_count("member agrees with member_via_homs", fails, len(corpus) * len(stages))]


def suite_finite_rank(seed: int, cases: int) -> list[Check]:
    corpus = hf_corpus(seed, cases)
    fails = []
    for env, e in corpus:
        ev = RankEvaluator(env)
        r = ev.rank(e)
        if isinstance(r, Bottom):
            continue
        homs = hom_pairs(env, env.resolve(e)).finite_homs
        bound = max((rank_plus_one(ev.rank(h)) for h in homs), default=Ordinal())
        if not isinstance(r, Of) or not r.ordinal.is_finite or cmp(r.ordinal, bound) > 0:
            fails.append(f"rank {r}, hom bound {bound}:\n{print_env(env)}")
    return [_count("finite homs, finitely many objects => finite rank", fails, len(corpus))]


def suite_noetherian(seed: int, cases: int) -> list[Check]:
    corpus = mixed_corpus(seed, cases)
    disagree, replay_fail, local_fail = [], [], []
    for env, e in corpus:
        r = rank_of(env, e)
        verdict = certify(env, e)
        if isinstance(r, NoSmallRank) != isinstance(verdict, CounterTower):
            disagree.append(print_env(env))
        for witness in ([verdict.tower] if isinstance(verdict, CounterTower) else []) + \
                       ([r.cycle] if isinstance(r, NoSmallRank) else []):
            outcome = replay_tower(env, e, witness, 10 * len(witness))
            if not outcome:
                replay_fail.append(f"{outcome.reason}:\n{print_env(env)}")
        local = all(isinstance(certify(env, h), Certified) for h in homs_for_closure(env, e))
        if local != isinstance(verdict, Certified):
            local_fail.append(print_env(env))
    return [
        _count("certify agrees with small rank", disagree, len(corpus)),
        _count("every counter-tower replays for 10 periods", replay_fail, len(corpus)),
        _count("Noetherian iff locally Noetherian", local_fail, len(corpus)),
    ]


def suite_rank_chain(seed: int, cases: int, horizon: int = 16) -> list[Check]:
    u = rank_universe()
    report = run_chain(u, parse_schedule("0..w*2", horizon))
    out = [Check("rank chain does not stabilise up to w*2",
                 isinstance(report.verdict, NoStabilizationWithinBudget),
                 f"verdict {type(report.verdict).__name__}")]
    fails = []
    if isinstance(report.verdict, NoStabilizationWithinBudget):
        for theta, w in report.verdict.witnesses:
            env = construct(Ordinal())[0]
            if not (member(env, w, succ(theta)) and not member(env, w, theta)):
                fails.append(f"stage {theta}")
        total = len(report.verdict.witnesses)
        visited = len(report.visited)
        if total != visited:
            fails.append(f"{visited} stages but {total} witnesses")
    else:
        total = 0
    out.append(_count("membership-separating witness at every stage", fails, total))
    return out


def suite_bounded_chain(seed: int, cases: int, horizon: int = 50) -> list[Check]:
    corpus = susp_tower_corpus(horizon + 1) + hf_corpus(seed, min(cases, 200))
    u = bounded_universe(corpus)
    report = run_chain(u, parse_schedule("0..w+1", horizon))
    out = []
    stab = isinstance(report.verdict, StabilizedAt) and report.verdict.index == OMEGA
    out.append(Check("bounded chain stabilises exactly at w", stab, str(report.verdict)[:200]))
    # the chain stops at w, so the finite stages' witnesses are recomputed here
    fails = []
    for n in range(horizon + 1):
        v = u.stage_equal(u.at(Ordinal.of(n)), u.step(u.at(Ordinal.of(n))))
        expected = construct(Ordinal.of(n))[1]
        if v.equal or v.witness != expected:
            fails.append(f"stage {n}: {v}")
    out.append(_count("susp^n(empty) separates stage n from n+1", fails, horizon + 1))
    out.append(Check("w and w+1 agree over the corpus",
                     u.stage_equal(u.at(OMEGA), u.step(u.at(OMEGA))).equal))
    out.append(Check("lambek check at w", stab and lambek_check(u, report)))
    return out


def suite_closure(seed: int, cases: int, horizon: int = 16) -> list[Check]:
    corpus = mixed_corpus(seed, cases)
    fails = []
    for env, e in corpus:
        whole = isinstance(certify(env, e), Certified)
        homs = all(isinstance(certify(env, h), Certified) for h in homs_for_closure(env, e))
        if whole != homs:
            fails.append(print_env(env))
    out = [_count("Noetherian closed under enrichment (corpus form)", fails, len(corpus))]
    u = rank_universe()
    report = run_chain(u, parse_schedule("0..w*2,LAMBDA", horizon))
    ok = isinstance(report.verdict, StabilizedAt) and report.verdict.index is LAMBDA
    out.append(Check("rank chain stabilises at LAMBDA", ok, str(report.verdict)))
    out.append(Check("lambek check at LAMBDA", ok and lambek_check(u, report)))
    return out


def suite_classical(seed: int, cases: int) -> list[Check]:
    schedule = parse_schedule("0..w+1", 8)
    expected = {"X": (Ordinal(), Fin(0)), "3": (Ordinal.of(1), Fin(3)),
                "1 + X": (OMEGA, ALEPH0), "1 + X^2": (OMEGA, ALEPH0)}
    out = []
    for spec, (index, value) in expected.items():
        u = card_universe(parse_functor(spec))
        report = run_chain(u, schedule)
        v = report.verdict
        ok = (isinstance(v, StabilizedAt) and v.index == index and v.value == str(value)
              and lambek_check(u, report))
        out.append(Check(f"F = {spec} stabilises at {index} with {value}", ok, str(v)))
    u = trunc_universe()
    report = run_chain(u, parse_schedule("0..w", 8), TERMINAL)
    v = report.verdict
    ok = isinstance(v, StabilizedAt) and v.index == OMEGA and v.value == "Cat_w"
    out.append(Check("truncation tower stabilises at w with Cat_w", ok, str(v)))
    return out


def _evaluations(env, e):
    ev = RankEvaluator(env)
    r = ev.rank(e)
    return (str(r), isinstance(certify(env, e), Certified),
            tuple(member(env, e, t, ev) for t in (Ordinal.of(1), Ordinal.of(3), OMEGA, LAMBDA)))


def suite_roundtrip(seed: int, cases: int) -> list[Check]:
    xs = ordinal_corpus(seed, cases)
    fails = [str(a) for a in xs if parse_ordinal(print_ordinal(a)) != a]
    out = [_count("ordinal parse(print(x)) = x", fails, len(xs))]
    corpus = mixed_corpus(seed, cases)
    fails = []
    for env, e in corpus:
        again = parse_file(print_env(env))
        if again.defs != env.defs or again.main != env.main:
            fails.append("structure changed:\n" + print_env(env))
        elif _evaluations(again, again.main_expr()) != _evaluations(env, e):
            fails.append("evaluation changed:\n" + print_env(env))
    out.append(_count("skeleton parse(print(env)) preserves evaluation", fails, len(corpus)))
    return out


SUITES: dict[str, Callable[[int, int], list[Check]]] = {
    "ordinals": suite_ordinals,
    "roundtrip": suite_roundtrip,
    "lemma2.3": suite_stage_recursion,
    "lemma2.4": suite_rank_witnesses,
    "lemma3.1": suite_finite_rank,
    "lemma3.4": suite_noetherian,
    "prop2.5": suite_rank_chain,
    "prop3.2": suite_bounded_chain,
    "thm3.7": suite_closure,
    "classical": suite_classical,
}

DEFAULT_CASES = {"ordinals": 500, "roundtrip": 500, "lemma2.3": 500, "lemma2.4": 1000,
                 "lemma3.1": 1000, "lemma3.4": 1000, "prop2.5": 0, "prop3.2": 200,
                 "thm3.7": 1000, "classical": 0}


def run_suite(name: str, seed: int = 0, cases: int | None = None) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        count = DEFAULT_CASES[n] if cases is None else cases
        out += [Check(f"{n}: {c.name}", c.passed, c.detail) for c in SUITES[n](seed, count)]
    return out
