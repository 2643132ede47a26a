"""Parallel morphism towers and the Noetherian property, decided on the pair graph.

This module never consults the rank evaluator: it searches the graph whose
vertices are skeletons reachable through hom positions and whose edges are
object pairs, looking for a cycle of non-point-like, inhabited vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .rank import Lasso, Step
from .skeleton import (EMPTY, POINT, SkeletonEnv, SkeletonExpr, SuspFamily, has_objects, hom_of,
                       hom_pairs, is_point_like, locus, pair_homs, print_expr)

Tower = Lasso
Vertex = Union[SkeletonExpr, SuspFamily]


@dataclass(frozen=True)
class Edge:
    source: Vertex
    pair: tuple[str, str]
    target: Vertex
    decreasing: bool = False


@dataclass
class PairGraph:
    root: Vertex
    vertices: list[Vertex] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)

    def out_edges(self, v: Vertex) -> list[Edge]:
        return [e for e in self.edges if e.source == v]


@dataclass(frozen=True)
class Certified:
    pass


@dataclass(frozen=True)
class CounterTower:
    tower: Tower


NoetherianResult = Union[Certified, CounterTower]


def _vertex_edges(env: SkeletonEnv, v: Vertex) -> list[Edge]:
    if isinstance(v, SuspFamily):
        # susp^m(d), m >= 1: the (bot, top) hom is susp^(m-1)(d)
        return [Edge(v, ("bot", "top"), v, decreasing=True),
                Edge(v, ("bot", "top"), env.resolve(v.inner)),
                Edge(v, ("bot", "bot"), POINT),
                Edge(v, ("top", "top"), POINT),
                Edge(v, ("top", "bot"), EMPTY)]
    if is_point_like(env, v) or not has_objects(env, v):
        return []
    out = []
    for a, b, h in pair_homs(env, v, family=True):
        target = h if isinstance(h, SuspFamily) else env.resolve(h)
        out.append(Edge(v, (a, b), target))
    return out


def build_pair_graph(env: SkeletonEnv, e: SkeletonExpr) -> PairGraph:
    root = env.resolve(e)
    graph = PairGraph(root)
    seen = {root}
    queue = [root]
    while queue:
        v = queue.pop(0)
        graph.vertices.append(v)
        for edge in _vertex_edges(env, v):
            graph.edges.append(edge)
            if edge.target not in seen:
                seen.add(edge.target)
                queue.append(edge.target)
    return graph


def vertex_label(env: SkeletonEnv, v: Vertex) -> str:
    if isinstance(v, SuspFamily):
        return f"susp+({print_expr(v.inner)})"
    return locus(env, v)


def find_lasso(env: SkeletonEnv, graph: PairGraph) -> Tower | None:
    """Depth-first search for a reachable cycle that uses no decreasing edge."""
    succ: dict[Vertex, list[Edge]] = {}
    for edge in graph.edges:
        if not edge.decreasing:
            succ.setdefault(edge.source, []).append(edge)
    colour: dict[Vertex, int] = {graph.root: 1}
    path: list[Edge] = []
    stack = [(graph.root, iter(succ.get(graph.root, ())))]
    while stack:
        v, it = stack[-1]
        edge = next(it, None)
        if edge is None:
            colour[v] = 2
            stack.pop()
            if path:
                path.pop()
            continue
        t = edge.target
        if colour.get(t) == 1:
            path.append(edge)
            start = next(i for i, p in enumerate(path) if p.source == t)
            steps = [Step(vertex_label(env, p.source), p.pair) for p in path]
            return Lasso(tuple(steps[:start]), tuple(steps[start:]))
        if t not in colour:
            colour[t] = 1
            path.append(edge)
            stack.append((t, iter(succ.get(t, ()))))
    return None


def certify(env: SkeletonEnv, e: SkeletonExpr) -> NoetherianResult:
    tower = find_lasso(env, build_pair_graph(env, e))
    return Certified() if tower is None else CounterTower(tower)


@dataclass(frozen=True)
class ReplayOutcome:
    ok: bool
    failed_at: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _resolve_label(env: SkeletonEnv, label: str) -> SkeletonExpr:
    if label in env.defs:
        return env.resolve(env.defs[label])
    from .syntax import parse_expr
    return env.resolve(parse_expr(label, env))


def replay_tower(env: SkeletonEnv, e: SkeletonExpr, t: Tower, steps: int) -> ReplayOutcome:
    """Unroll ``t`` from ``e`` for ``steps`` steps and check it is a genuine tower
    that never lands in a point-like hom."""
    if not t.cycle:
        return ReplayOutcome(False, 0, "empty cycle")
    current = env.resolve(e)
    unrolled = t.unroll(steps + 1)
    for i in range(steps):
        step = unrolled[i]
        try:
            expected = _resolve_label(env, step.locus)
        except Exception as exc:
            return ReplayOutcome(False, i, f"unreadable locus {step.locus!r}: {exc}")
        if expected != current:
            return ReplayOutcome(False, i, f"vertex {step.locus!r} is not the current hom")
        try:
            nxt = env.resolve(hom_of(env, current, *step.pair))
        except KeyError:
            return ReplayOutcome(False, i, f"pair {step.pair} is not a pair of objects")
        if is_point_like(env, nxt):
            return ReplayOutcome(False, i, f"hom of {step.pair} is point-like")
        current = nxt
    # the hom reached last must be where the tower continues
    try:
        if _resolve_label(env, unrolled[steps].locus) != current:
            return ReplayOutcome(False, steps, "tower does not continue at the reached hom")
    except Exception as exc:
        return ReplayOutcome(False, steps, str(exc))
    return ReplayOutcome(True)


def homs_for_closure(env: SkeletonEnv, e: SkeletonExpr) -> list[SkeletonExpr]:
    """One representative of every hom of ``e``: the listed homs, and for each
    omegasusp family its base ``d`` (every ``susp^n(d)`` is Noetherian iff ``d`` is)."""
    fam = hom_pairs(env, env.resolve(e))
    return list(fam.finite_homs) + list(fam.linear_families)
