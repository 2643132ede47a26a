"""Rank of a skeleton by transfinite structural recursion, and stage membership.

``rank C`` is Bottom when C is the point, otherwise the supremum over homs H of
``rank H + 1`` (with Bottom contributing 0).  A hom-position cycle of
non-point-like skeletons means there is no small rank at all.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ordinals import (LAMBDA, ZERO, LinearFamily, Ordinal, OrdinalExt, cmp, is_successor,
                       pred, succ, sup_finite, sup_linear)
from .skeleton import (SkeletonEnv, SkeletonExpr, hom_pairs, is_hereditarily_finite,
                       is_point_like, locus, pair_homs)


@dataclass(frozen=True)
class Step:
    locus: str
    pair: tuple[str, str]


@dataclass(frozen=True)
class Lasso:
    """An eventually periodic sequence of steps: ``stem`` then ``cycle`` forever."""

    stem: tuple[Step, ...]
    cycle: tuple[Step, ...]

    def __len__(self):
        return len(self.stem) + len(self.cycle)

    def unroll(self, n: int) -> list[Step]:
        steps = list(self.stem[:n])
        while len(steps) < n:
            steps.extend(self.cycle[:n - len(steps)])
        return steps

    def to_json(self) -> dict:
        def enc(steps):
            return [{"def": s.locus, "pair": list(s.pair)} for s in steps]
        return {"stem": enc(self.stem), "cycle": enc(self.cycle)}

    @classmethod
    def from_json(cls, data: dict) -> Lasso:
        def dec(items):
            return tuple(Step(item["def"], tuple(item["pair"])) for item in items)
        return cls(dec(data.get("stem", [])), dec(data["cycle"]))


CycleWitness = Lasso


@dataclass(frozen=True)
class Bottom:
    def __str__(self):
        return "BOTTOM"


@dataclass(frozen=True)
class Of:
    ordinal: Ordinal

    def __str__(self):
        return str(self.ordinal)


@dataclass(frozen=True)
class NoSmallRank:
    cycle: CycleWitness

    def __str__(self):
        return "NO_SMALL_RANK"


Rank = Union[Bottom, Of, NoSmallRank]
BOTTOM = Bottom()


def rank_plus_one(r: Rank) -> Ordinal:
    match r:
        case Bottom():
            return ZERO
        case Of(theta):
            return succ(theta)
    raise ValueError("a skeleton without small rank contributes no ordinal")


class RankEvaluator:
    """Memoised rank evaluation over one environment.

    Keys are resolved expressions; since every hom is a subterm of the
    environment (or point/empty), the recursion visits finitely many keys and
    re-entering one that is still in progress is exactly a hom-position cycle.
    """

    def __init__(self, env: SkeletonEnv):
        self.env = env
        # None marks "no small rank"; witnesses are built on demand
        self._memo: dict[SkeletonExpr, Rank | None] = {}
        self._witnesses: dict[SkeletonExpr, NoSmallRank] = {}
        self._active: set[SkeletonExpr] = set()

    def rank(self, e: SkeletonExpr) -> Rank:
        e = self.env.resolve(e)
        r = self._verdict(e)
        if r is not None:
            return r
        if e not in self._witnesses:
            self._witnesses[e] = NoSmallRank(self._witness(e))
        return self._witnesses[e]

    def _verdict(self, e: SkeletonExpr) -> Rank | None:
        if e in self._memo:
            return self._memo[e]
        if e in self._active:
            return None
        if is_point_like(self.env, e):
            self._memo[e] = BOTTOM
            return BOTTOM
        self._active.add(e)
        try:
            fam = hom_pairs(self.env, e)
            contributions = []
            ok = True
            for h in fam.finite_homs:
                r = self._verdict(self.env.resolve(h))
                if r is None:
                    ok = False
                else:
                    contributions.append(rank_plus_one(r))
            for inner in fam.linear_families:
                r = self._verdict(self.env.resolve(inner))
                if r is None:
                    ok = False
                else:
                    contributions.append(sup_linear(LinearFamily(rank_plus_one(r))))
        finally:
            self._active.discard(e)
        result = Of(sup_finite(contributions)) if ok else None
        self._memo[e] = result
        return result

    def has_small_rank(self, e: SkeletonExpr) -> bool:
        return self._verdict(self.env.resolve(e)) is not None

    def _witness(self, e: SkeletonExpr) -> Lasso:
        """Walk from ``e`` along homs without small rank until an expression repeats."""
        steps: list[Step] = []
        seen: dict[SkeletonExpr, int] = {}
        cur = self.env.resolve(e)
        while cur not in seen:
            seen[cur] = len(steps)
            for a, b, h in pair_homs(self.env, cur):
                h = self.env.resolve(h)
                if not self.has_small_rank(h):
                    steps.append(Step(locus(self.env, cur), (a, b)))
                    cur = h
                    break
            else:
                raise AssertionError(f"no cyclic hom below {locus(self.env, cur)}")
        start = seen[cur]
        return Lasso(tuple(steps[:start]), tuple(steps[start:]))


def rank_of(env: SkeletonEnv, e: SkeletonExpr, evaluator: RankEvaluator | None = None) -> Rank:
    ev = evaluator if evaluator is not None else RankEvaluator(env)
    return ev.rank(e)


def _below(r: Rank, theta: OrdinalExt) -> bool:
    match r:
        case Bottom():
            return True
        case Of(rho):
            return cmp(rho, theta) < 0
    return False


def member(env: SkeletonEnv, e: SkeletonExpr, theta: OrdinalExt,
           evaluator: RankEvaluator | None = None) -> bool:
    """Whether ``e`` lies in the stage of skeletons of rank below ``theta``."""
    return _below(rank_of(env, e, evaluator), theta)


def member_via_homs(env: SkeletonEnv, e: SkeletonExpr, theta: Ordinal,
                    evaluator: RankEvaluator | None = None) -> bool:
    """Stage membership at a successor stage, decided one level down on the homs."""
    if theta is LAMBDA or not is_successor(theta):
        raise ValueError(f"member_via_homs needs a successor stage, got {theta}")
    ev = evaluator if evaluator is not None else RankEvaluator(env)
    below = pred(theta)
    fam = hom_pairs(env, env.resolve(e))
    if not all(member(env, h, below, ev) for h in fam.finite_homs):
        return False
    for inner in fam.linear_families:
        r = ev.rank(inner)
        if isinstance(r, NoSmallRank):
            return False
        if cmp(sup_linear(LinearFamily(rank_plus_one(r))), below) > 0:
            return False
    return True


def bounded_member(env: SkeletonEnv, e: SkeletonExpr, theta: OrdinalExt,
                   evaluator: RankEvaluator | None = None) -> bool:
    """Membership in the stage restricted to finitely many cells in every dimension."""
    return is_hereditarily_finite(env, e) and member(env, e, theta, evaluator)
