"""A generic Adamek chain engine over abstract stage universes.

A universe supplies a start stage, the endofunctor step, a limit rule and a
stage comparison.  :func:`run_chain` walks an explicit ascending schedule of
ordinal indices and stops at the first stage fixed by the step.
"""
from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, Sequence, Union

from .ordinals import (LAMBDA, ZERO, Ordinal, OrdinalExt, cmp, is_limit, pred, print_ordinal,
                       split_below_omega_squared, succ)
from .rank import RankEvaluator, bounded_member, member
from .skeleton import (EMPTY_ENV, SkeletonEnv, SkeletonExpr, construct, hom_pairs, object_count,
                       print_expr)

INITIAL = "initial"
TERMINAL = "terminal"


class ChainError(Exception):
    pass


@dataclass(frozen=True)
class Verdict:
    kind: str  # "equal" | "distinct" | "undecided"
    witness: Any = None
    note: str = ""

    @property
    def equal(self) -> bool:
        return self.kind == "equal"


EQUAL = Verdict("equal")


def distinct(witness) -> Verdict:
    return Verdict("distinct", witness)


class StageUniverse(ABC):
    name = "abstract"
    directions: tuple[str, ...] = (INITIAL,)

    @abstractmethod
    def start(self, direction: str): ...

    @abstractmethod
    def step(self, stage): ...

    @abstractmethod
    def limit(self, index: OrdinalExt, visited: Sequence[tuple[OrdinalExt, Any]]): ...

    @abstractmethod
    def stage_equal(self, a, b) -> Verdict: ...

    @abstractmethod
    def describe(self, stage) -> str: ...

    def witness_json(self, witness) -> Any:
        return str(witness)


@dataclass(frozen=True)
class StabilizedAt:
    index: OrdinalExt
    lambek: bool
    value: str


@dataclass(frozen=True)
class NoStabilizationWithinBudget:
    witnesses: tuple[tuple[OrdinalExt, Any], ...]


@dataclass
class FixpointReport:
    universe: str
    direction: str
    visited: list[tuple[OrdinalExt, str]]
    verdict: Union[StabilizedAt, NoStabilizationWithinBudget]
    stages: list[tuple[OrdinalExt, Any]] = field(default_factory=list, repr=False)

    @property
    def stabilized(self) -> bool:
        return isinstance(self.verdict, StabilizedAt)

    def to_json(self, u: StageUniverse) -> dict:
        out = {
            "universe": self.universe,
            "direction": self.direction,
            "visited": [{"stage": print_ordinal(i), "value": d} for i, d in self.visited],
        }
        if isinstance(self.verdict, StabilizedAt):
            out["verdict"] = {"kind": "stabilized", "at": print_ordinal(self.verdict.index),
                              "lambek": self.verdict.lambek, "value": self.verdict.value}
        else:
            out["verdict"] = {"kind": "no_stabilization",
                              "witnesses": [{"stage": print_ordinal(i), "witness": u.witness_json(w)}
                                            for i, w in self.verdict.witnesses]}
        return out


def _fixed(u: StageUniverse, stage, index) -> Verdict:
    v = u.stage_equal(stage, u.step(stage))
    if v.kind == "undecided":
        raise ChainError(f"cannot compare stage {print_ordinal(index)} with its successor: {v.note}")
    return v


def run_chain(u: StageUniverse, schedule: Iterable[OrdinalExt], direction: str = INITIAL
              ) -> FixpointReport:
    if direction not in u.directions:
        raise ChainError(f"the {u.name} universe has no {direction} chain")
    stages: list[tuple[OrdinalExt, Any]] = []
    witnesses = []
    for index in schedule:
        if stages and cmp(index, stages[-1][0]) <= 0:
            raise ChainError("schedule must be strictly ascending")
        if not stages:
            if cmp(index, ZERO) != 0:
                raise ChainError("a chain starts at stage 0")
            stage = u.start(direction)
        elif index is LAMBDA or is_limit(index):
            stage = u.limit(index, stages)
        else:
            before = pred(index)
            if cmp(stages[-1][0], before) != 0:
                raise ChainError(f"stage {print_ordinal(index)} needs stage {print_ordinal(before)}"
                                 " in the schedule")
            stage = u.step(stages[-1][1])
        stages.append((index, stage))
        v = _fixed(u, stage, index)
        if v.equal:
            verdict = StabilizedAt(index, _fixed(u, stage, index).equal, u.describe(stage))
            return FixpointReport(u.name, direction, [(i, u.describe(s)) for i, s in stages],
                                  verdict, stages)
        witnesses.append((index, v.witness))
    return FixpointReport(u.name, direction, [(i, u.describe(s)) for i, s in stages],
                          NoStabilizationWithinBudget(tuple(witnesses)), stages)


def lambek_check(u: StageUniverse, report: FixpointReport) -> bool:
    """Re-verify that the reported stabilisation stage is fixed by the step."""
    if not isinstance(report.verdict, StabilizedAt):
        raise ValueError("lambek_check needs a stabilised report")
    index, stage = report.stages[-1]
    return cmp(index, report.verdict.index) == 0 and u.stage_equal(stage, u.step(stage)).equal


# -- the rank-stage universe ---------------------------------------------------


class RankUniverse(StageUniverse):
    """Stages are ordinals theta standing for the skeletons of rank below theta."""

    name = "rank"

    def __init__(self, corpus: Sequence[tuple[SkeletonEnv, SkeletonExpr]] = ()):
        self.corpus = [(env, e, RankEvaluator(env)) for env, e in corpus]

    def start(self, direction):
        return ZERO

    def step(self, stage):
        return LAMBDA if stage is LAMBDA else succ(stage)

    def limit(self, index, visited):
        return index

    def stage_equal(self, a, b) -> Verdict:
        if cmp(a, b) == 0:
            return EQUAL
        lo = a if cmp(a, b) < 0 else b
        if lo is not LAMBDA and split_below_omega_squared(lo) is not None:
            return distinct(construct(lo)[1])
        for env, e, ev in self.corpus:
            if member(env, e, a, ev) != member(env, e, b, ev):
                return distinct(e)
        return EQUAL

    def describe(self, stage) -> str:
        return f"Cat_{{<{print_ordinal(stage)}}}"

    def witness_json(self, witness):
        return print_expr(witness)


def rank_universe(corpus: Sequence[tuple[SkeletonEnv, SkeletonExpr]] = ()) -> RankUniverse:
    return RankUniverse(corpus)


# -- the bounded universe: finitely many cells in every dimension ----------------


class BoundedStage:
    """A stage given by a membership predicate, cached per expression."""

    def __init__(self, index: OrdinalExt, test: Callable[[SkeletonEnv, SkeletonExpr], bool]):
        self.index = index
        self._test = test
        self._cache: dict[tuple[int, SkeletonExpr], bool] = {}

    def contains(self, env: SkeletonEnv, e: SkeletonExpr) -> bool:
        key = (id(env), e)
        if key not in self._cache:
            self._cache[key] = self._test(env, e)
        return self._cache[key]


class BoundedUniverse(StageUniverse):
    name = "bounded"

    def __init__(self, corpus: Sequence[tuple[SkeletonEnv, SkeletonExpr]]):
        self.corpus = list(corpus)
        self._evaluators: dict[int, RankEvaluator] = {}

    def _ev(self, env: SkeletonEnv) -> RankEvaluator:
        if id(env) not in self._evaluators:
            self._evaluators[id(env)] = RankEvaluator(env)
        return self._evaluators[id(env)]

    def at(self, index: OrdinalExt) -> BoundedStage:
        return BoundedStage(index, lambda env, e: bounded_member(env, e, index, self._ev(env)))

    def start(self, direction):
        return self.at(ZERO)

    def step(self, stage: BoundedStage) -> BoundedStage:
        def test(env, e):
            if object_count(env, e) is None:
                return False
            fam = hom_pairs(env, env.resolve(e))
            if fam.linear_families:
                return False
            return all(stage.contains(env, h) for h in fam.finite_homs)
        index = LAMBDA if stage.index is LAMBDA else succ(stage.index)
        return BoundedStage(index, test)

    def limit(self, index, visited):
        return self.at(index)

    def stage_equal(self, a: BoundedStage, b: BoundedStage) -> Verdict:
        for env, e in self.corpus:
            if a.contains(env, e) != b.contains(env, e):
                return distinct(e)
        return EQUAL

    def describe(self, stage: BoundedStage) -> str:
        return f"Cat^{{<w}}_{{<{print_ordinal(stage.index)}}}"

    def witness_json(self, witness):
        return print_expr(witness)


def bounded_universe(corpus: Sequence[tuple[SkeletonEnv, SkeletonExpr]]) -> BoundedUniverse:
    return BoundedUniverse(corpus)


def susp_tower_corpus(n: int) -> list[tuple[SkeletonEnv, SkeletonExpr]]:
    """``susp^k(empty)`` for k = 0..n, the separating family of the bounded chain."""
    return [construct(Ordinal.of(k)) for k in range(n + 1)]


# -- cardinalities and polynomial functors -----------------------------------------


@dataclass(frozen=True)
class Fin:
    n: int

    def __str__(self):
        if self.n.bit_length() > 128:
            return f"~2^{self.n.bit_length() - 1}"
        return str(self.n)


@dataclass(frozen=True)
class Aleph0:
    def __str__(self):
        return "aleph0"


ALEPH0 = Aleph0()
Card = Union[Fin, Aleph0]


def card_add(a: Card, b: Card) -> Card:
    if isinstance(a, Fin) and isinstance(b, Fin):
        return Fin(a.n + b.n)
    return ALEPH0


def card_mul(a: Card, b: Card) -> Card:
    if isinstance(a, Fin) and isinstance(b, Fin):
        return Fin(a.n * b.n)
    if a == Fin(0) or b == Fin(0):
        return Fin(0)
    return ALEPH0


def card_pow(a: Card, k: int) -> Card:
    if k == 0:
        return Fin(1)
    if isinstance(a, Fin):
        return Fin(a.n ** k)
    return ALEPH0


@dataclass(frozen=True)
class PolyFunctor:
    """``X -> c0 + c1*X + ... + cd*X^d``."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients or any(c < 0 for c in self.coefficients):
            raise ValueError("coefficients must be a non-empty list of naturals")

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            x = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            parts.append(str(c) if not x else (x if c == 1 else f"{c}*{x}"))
        return " + ".join(parts) or "0"


_POLY_TERM = re.compile(r"^(?:(\d+)|(?:(\d+)\s*\*\s*)?X(?:\s*\^\s*(\d+))?)$")


def parse_functor(text: str) -> PolyFunctor:
    coeffs: dict[int, int] = {}
    for raw in text.split("+"):
        m = _POLY_TERM.match(raw.strip())
        if m is None:
            raise ValueError(f"bad functor term {raw.strip()!r}")
        const, coeff, power = m.groups()
        if const is not None:
            coeffs[0] = coeffs.get(0, 0) + int(const)
        else:
            k = int(power) if power is not None else 1
            coeffs[k] = coeffs.get(k, 0) + (int(coeff) if coeff is not None else 1)
    degree = max(coeffs)
    return PolyFunctor(tuple(coeffs.get(k, 0) for k in range(degree + 1)))


def card_eval(f: PolyFunctor, x: Card) -> Card:
    total: Card = Fin(0)
    for k, c in enumerate(f.coefficients):
        total = card_add(total, card_mul(Fin(c), card_pow(x, k)))
    return total


class CardUniverse(StageUniverse):
    """Cardinality shadow of the initial-algebra and terminal-coalgebra chains."""

    name = "card"
    directions = (INITIAL, TERMINAL)

    def __init__(self, functor: PolyFunctor):
        self.functor = functor
        self.direction = INITIAL

    def start(self, direction):
        self.direction = direction
        return Fin(0) if direction == INITIAL else Fin(1)

    max_bits = 1 << 20

    def step(self, stage: Card) -> Card:
        if isinstance(stage, Fin) and stage.n.bit_length() > self.max_bits:
            raise ChainError(f"finite stage exceeds 2^{self.max_bits}; use a smaller --horizon")
        return card_eval(self.functor, stage)

    def limit(self, index, visited):
        values = [v for _, v in visited]
        increasing = len(values) >= 2 and all(
            isinstance(a, Fin) and isinstance(b, Fin) and a.n < b.n
            for a, b in zip(values, values[1:]))
        if increasing:
            if self.direction == TERMINAL:
                raise ChainError("limit of a strictly increasing terminal chain exceeds the "
                                 "cardinals modelled here (no exponentials)")
            return ALEPH0
        if any(isinstance(v, Aleph0) for v in values):
            return ALEPH0
        return Fin(max(v.n for v in values))

    def stage_equal(self, a: Card, b: Card) -> Verdict:
        return EQUAL if a == b else distinct((a, b))

    def describe(self, stage: Card) -> str:
        return str(stage)

    def witness_json(self, witness):
        return [str(witness[0]), str(witness[1])]


def card_universe(functor: PolyFunctor) -> CardUniverse:
    return CardUniverse(functor)


# -- truncation tower: terminal coalgebra chain ----------------------------------

CAT_OMEGA = "Cat_w"


class TruncUniverse(StageUniverse):
    """Stages n >= -2 stand for Cat_(n, n+2); the limit of the tower is Cat_w."""

    name = "trunc"
    directions = (TERMINAL,)

    def start(self, direction):
        return -2

    def step(self, stage):
        return CAT_OMEGA if stage == CAT_OMEGA else stage + 1

    def limit(self, index, visited):
        return CAT_OMEGA

    def stage_equal(self, a, b) -> Verdict:
        return EQUAL if a == b else distinct((a, b))

    def describe(self, stage) -> str:
        return CAT_OMEGA if stage == CAT_OMEGA else f"Cat_({stage},{stage + 2})"

    def witness_json(self, witness):
        return [self.describe(witness[0]), self.describe(witness[1])]


def trunc_universe() -> TruncUniverse:
    return TruncUniverse()
