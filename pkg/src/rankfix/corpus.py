"""Seeded random generators for ordinals and skeleton environments."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ordinals import Ordinal
from .skeleton import (EMPTY, POINT, Coprod, Node, OmegaSusp, Ref, SkeletonEnv, SkeletonExpr,
                       Susp)

DEFAULT_WEIGHTS = {"point": 2, "empty": 2, "node": 3, "susp": 3, "coprod": 2, "omegasusp": 1,
                   "ref": 3}


@dataclass
class GenConfig:
    max_depth: int = 3
    n_defs: int = 3
    p_cycle: float = 0.0
    allow_omega: bool = True
    max_objects: int = 3
    max_components: int = 3
    p_hom_entry: float = 0.6
    weights: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))


def random_ordinal(rng: random.Random, depth: int = 2, max_terms: int = 3,
                   max_coeff: int = 5) -> Ordinal:
    if depth <= 0:
        return Ordinal.of(rng.randint(0, max_coeff))
    exps = {random_ordinal(rng, depth - 1, max_terms, max_coeff)
            for _ in range(rng.randint(0, max_terms))}
    terms = tuple((e, rng.randint(1, max_coeff)) for e in sorted(exps, reverse=True))
    return Ordinal(terms)


def ordinal_corpus(seed: int, n: int, depth: int = 2) -> list[Ordinal]:
    rng = random.Random(seed)
    return [random_ordinal(rng, rng.randint(0, depth)) for _ in range(n)]


class _ExprGen:
    def __init__(self, rng: random.Random, cfg: GenConfig, names: list[str], index: int):
        self.rng = rng
        self.cfg = cfg
        self.earlier = names[:index]
        self.everything = names

    def _ref_target(self, hom_position: bool):
        pool = self.earlier
        if hom_position and self.rng.random() < self.cfg.p_cycle:
            pool = self.everything
        return self.rng.choice(pool) if pool else None

    def expr(self, depth: int, hom_position: bool) -> SkeletonExpr:
        kinds = dict(self.cfg.weights)
        if not self.cfg.allow_omega:
            kinds.pop("omegasusp", None)
        if depth <= 0:
            kinds = {k: w for k, w in kinds.items() if k in ("point", "empty", "ref")}
        kind = self.rng.choices(list(kinds), weights=list(kinds.values()))[0]
        if kind == "ref":
            target = self._ref_target(hom_position)
            if target is None:
                kind = self.rng.choice(["point", "empty"])
            else:
                return Ref(target)
        match kind:
            case "point":
                return POINT
            case "empty":
                return EMPTY
            case "susp":
                return Susp(self.expr(depth - 1, True))
            case "omegasusp":
                return OmegaSusp(self.expr(depth - 1, False))
            case "coprod":
                n = self.rng.randint(1, self.cfg.max_components)
                return Coprod(tuple(self.expr(depth - 1, False) for _ in range(n)))
            case "node":
                objects = ("a", "b", "c", "d", "e")[:self.rng.randint(1, self.cfg.max_objects)]
                homs = tuple(((x, y), self.expr(depth - 1, True))
                             for x in objects for y in objects
                             if self.rng.random() < self.cfg.p_hom_entry)
                return Node(objects, homs)
        raise AssertionError(kind)


def random_env(rng: random.Random, cfg: GenConfig) -> SkeletonEnv:
    """Definitions D0..Dk; component references only point backwards, hom
    references may point anywhere with probability ``p_cycle``."""
    names = [f"D{i}" for i in range(cfg.n_defs)]
    defs = {}
    for i, name in enumerate(names):
        defs[name] = _ExprGen(rng, cfg, names, i).expr(cfg.max_depth, False)
    return SkeletonEnv(defs, names[-1])


def env_corpus(seed: int, n: int, cfg: GenConfig | None = None
               ) -> list[tuple[SkeletonEnv, SkeletonExpr]]:
    cfg = cfg or GenConfig()
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        env = random_env(rng, cfg)
        out.append((env, env.main_expr()))
    return out


def mixed_corpus(seed: int, n: int, p_cycles=(0.0, 0.2, 0.5), **kw
                 ) -> list[tuple[SkeletonEnv, SkeletonExpr]]:
    """``n`` environments split evenly across the given cycle-injection rates."""
    out = []
    for k, p in enumerate(p_cycles):
        share = n // len(p_cycles) + (1 if k < n % len(p_cycles) else 0)
        out += env_corpus(seed * 1000 + k, share, GenConfig(p_cycle=p, **kw))
    return out


def hf_corpus(seed: int, n: int, **kw) -> list[tuple[SkeletonEnv, SkeletonExpr]]:
    """Hereditarily finite, cycle-free environments."""
    return env_corpus(seed, n, GenConfig(p_cycle=0.0, allow_omega=False, **kw))


__all__ = ["GenConfig", "random_ordinal", "ordinal_corpus", "random_env", "env_corpus",
           "mixed_corpus", "hf_corpus"]
