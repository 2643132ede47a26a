"""Finitely presented, possibly cyclic skeletons of higher categories.

A skeleton is a set of objects together with, for every ordered pair of
objects, another skeleton serving as the hom.  Expressions are immutable and
hashable; named definitions live in a :class:`SkeletonEnv` and may refer to
each other (and to themselves) through hom positions.

Object naming is structural so that any object can be addressed by a string:

* ``point``: ``*``
* ``susp(d)``: ``bot``, ``top``
* ``coprod(c0, c1, ...)``: ``i:o`` for object ``o`` of component ``i``
* ``omegasusp(d)``: ``0:o`` for objects of ``d``; ``n:bot``, ``n:top`` for the
  n-th suspension, n >= 1
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterator, Optional, Union

from .ordinals import Ordinal, split_below_omega_squared


class SkeletonError(Exception):
    pass


class UnresolvedReference(SkeletonError):
    def __init__(self, name: str):
        super().__init__(f"unresolved reference {name!r}")
        self.name = name


class IllegalCycle(SkeletonError):
    def __init__(self, name: str):
        super().__init__(
            f"definition {name!r} refers to itself through component positions only; "
            "cycles must pass through a hom position")
        self.name = name


class UnsupportedOrdinal(SkeletonError):
    pass


@dataclass(frozen=True)
class Point:
    pass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Node:
    objects: tuple[str, ...]
    homs: tuple[tuple[tuple[str, str], "SkeletonExpr"], ...] = ()

    def __post_init__(self):
        if not self.objects:
            raise SkeletonError("a cat node needs at least one object")
        if len(set(self.objects)) != len(self.objects):
            raise SkeletonError(f"duplicate objects in {self.objects}")
        seen = set()
        for (a, b), _ in self.homs:
            if a not in self.objects or b not in self.objects:
                raise SkeletonError(f"hom({a},{b}) names an undeclared object")
            if (a, b) in seen:
                raise SkeletonError(f"hom({a},{b}) given twice")
            seen.add((a, b))

    def hom(self, a: str, b: str) -> SkeletonExpr:
        for pair, e in self.homs:
            if pair == (a, b):
                return e
        return EMPTY


@dataclass(frozen=True)
class Susp:
    inner: "SkeletonExpr"


@dataclass(frozen=True)
class Coprod:
    components: tuple["SkeletonExpr", ...]


@dataclass(frozen=True)
class OmegaSusp:
    inner: "SkeletonExpr"


@dataclass(frozen=True)
class Ref:
    name: str


SkeletonExpr = Union[Point, Empty, Node, Susp, Coprod, OmegaSusp, Ref]

POINT = Point()
EMPTY = Empty()


def suspend(e: SkeletonExpr, times: int = 1) -> SkeletonExpr:
    for _ in range(times):
        e = Susp(e)
    return e


# -- environments -----------------------------------------------------------


def _refs(e: SkeletonExpr, through_homs: bool) -> Iterator[str]:
    """Names referenced by ``e``; with ``through_homs=False`` hom positions are skipped."""
    match e:
        case Ref(name):
            yield name
        case Node(_, homs):
            if through_homs:
                for _, h in homs:
                    yield from _refs(h, through_homs)
        case Susp(inner):
            if through_homs:
                yield from _refs(inner, through_homs)
        case Coprod(cs):
            for c in cs:
                yield from _refs(c, through_homs)
        case OmegaSusp(inner):
            yield from _refs(inner, through_homs)


@dataclass
class SkeletonEnv:
    defs: dict[str, SkeletonExpr] = field(default_factory=dict)
    main: Optional[str] = None

    def __post_init__(self):
        self.validate()
        self._names: dict[SkeletonExpr, str] = {}
        for name, body in self.defs.items():
            self._names.setdefault(self.resolve(body), name)

    def validate(self):
        for name, body in self.defs.items():
            for ref in _refs(body, through_homs=True):
                if ref not in self.defs:
                    raise UnresolvedReference(ref)
        if self.main is not None and self.main not in self.defs:
            raise UnresolvedReference(self.main)
        # component-position graph must be acyclic
        graph = {name: set(_refs(body, through_homs=False)) for name, body in self.defs.items()}
        state: dict[str, int] = {}
        for root in graph:
            if root in state:
                continue
            stack = [(root, iter(sorted(graph[root])))]
            state[root] = 1
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    state[node] = 2
                    stack.pop()
                elif state.get(nxt) == 1:
                    raise IllegalCycle(nxt)
                elif nxt not in state:
                    state[nxt] = 1
                    stack.append((nxt, iter(sorted(graph[nxt]))))

    def resolve(self, e: SkeletonExpr) -> SkeletonExpr:
        while isinstance(e, Ref):
            if e.name not in self.defs:
                raise UnresolvedReference(e.name)
            e = self.defs[e.name]
        return e

    def main_expr(self) -> SkeletonExpr:
        if self.main is None:
            if not self.defs:
                raise SkeletonError("environment has no definitions")
            return Ref(next(reversed(self.defs)))
        return Ref(self.main)

    def name_of(self, e: SkeletonExpr) -> Optional[str]:
        """The first definition whose body is ``e`` (after resolution), if any."""
        return self._names.get(self.resolve(e))


EMPTY_ENV = SkeletonEnv()


def check_refs(env: SkeletonEnv, e: SkeletonExpr) -> None:
    for name in _refs(e, through_homs=True):
        if name not in env.defs:
            raise UnresolvedReference(name)


def locus(env: SkeletonEnv, e: SkeletonExpr) -> str:
    """A stable label for an expression: its definition name or its printed form."""
    name = env.name_of(e)
    return name if name is not None else print_expr(env.resolve(e))


# -- structural queries -----------------------------------------------------


def has_objects(env: SkeletonEnv, e: SkeletonExpr, _active=None) -> bool:
    active = set() if _active is None else _active
    match e:
        case Point() | Node() | Susp() | OmegaSusp():
            return True
        case Empty():
            return False
        case Coprod(cs):
            return any(has_objects(env, c, active) for c in cs)
        case Ref(name):
            if name in active:
                return False
            active.add(name)
            try:
                return has_objects(env, env.resolve(e), active)
            finally:
                active.discard(name)
    raise TypeError(f"not a skeleton expression: {e!r}")


def is_point_like(env: SkeletonEnv, e: SkeletonExpr) -> bool:
    """Least-fixed-point test for equivalence with the terminal category.

    The relevant dependencies form a single chain (a node depends only on its
    endo-hom, a coproduct only on its one inhabited component), so a chain
    that revisits an expression can never be point-like.
    """
    seen = set()
    while True:
        e = env.resolve(e)
        if e in seen:
            return False
        seen.add(e)
        match e:
            case Point():
                return True
            case Node(objects, _):
                if len(objects) != 1:
                    return False
                e = e.hom(objects[0], objects[0])
            case Coprod(cs):
                inhabited = [c for c in cs if has_objects(env, c)]
                if len(inhabited) != 1:
                    return False
                e = inhabited[0]
            case _:
                return False


def object_count(env: SkeletonEnv, e: SkeletonExpr) -> Optional[int]:
    """Number of objects, or None when there are infinitely many."""
    match env.resolve(e):
        case Point():
            return 1
        case Empty():
            return 0
        case Node(objects, _):
            return len(objects)
        case Susp():
            return 2
        case OmegaSusp():
            return None
        case Coprod(cs):
            total = 0
            for c in cs:
                n = object_count(env, c)
                if n is None:
                    return None
                total += n
            return total


def iter_objects(env: SkeletonEnv, e: SkeletonExpr) -> Iterator[str]:
    """All object names; infinite for anything containing an omegasusp component."""
    match env.resolve(e):
        case Point():
            yield "*"
        case Node(objects, _):
            yield from objects
        case Susp():
            yield from ("bot", "top")
        case Coprod(cs):
            for i, c in enumerate(cs):
                for o in iter_objects(env, c):
                    yield f"{i}:{o}"
        case OmegaSusp(inner):
            for o in iter_objects(env, inner):
                yield f"0:{o}"
            for n in count(1):
                yield f"{n}:bot"
                yield f"{n}:top"


def _split(obj: str) -> tuple[int, str]:
    head, sep, rest = obj.partition(":")
    if not sep or not head.isdigit():
        raise KeyError(obj)
    return int(head), rest


def has_object(env: SkeletonEnv, e: SkeletonExpr, obj: str) -> bool:
    match env.resolve(e):
        case Point():
            return obj == "*"
        case Empty():
            return False
        case Node(objects, _):
            return obj in objects
        case Susp():
            return obj in ("bot", "top")
        case Coprod(cs):
            try:
                i, rest = _split(obj)
            except KeyError:
                return False
            return i < len(cs) and has_object(env, cs[i], rest)
        case OmegaSusp(inner):
            try:
                n, rest = _split(obj)
            except KeyError:
                return False
            if n == 0:
                return has_object(env, inner, rest)
            return rest in ("bot", "top")
    return False


def hom_of(env: SkeletonEnv, e: SkeletonExpr, a: str, b: str) -> SkeletonExpr:
    """The hom skeleton between two named objects; KeyError if either is absent."""
    e = env.resolve(e)
    if not (has_object(env, e, a) and has_object(env, e, b)):
        raise KeyError((a, b))
    match e:
        case Point():
            return POINT
        case Node():
            return e.hom(a, b)
        case Susp(inner):
            return _susp_hom(inner, a, b)
        case Coprod(cs):
            (i, ra), (j, rb) = _split(a), _split(b)
            return hom_of(env, cs[i], ra, rb) if i == j else EMPTY
        case OmegaSusp(inner):
            (n, ra), (m, rb) = _split(a), _split(b)
            if n != m:
                return EMPTY
            if n == 0:
                return hom_of(env, inner, ra, rb)
            return _susp_hom(suspend(inner, n - 1), ra, rb)
    raise KeyError((a, b))


def _susp_hom(inner: SkeletonExpr, a: str, b: str) -> SkeletonExpr:
    if a == "bot" and b == "top":
        return inner
    return POINT if a == b else EMPTY


@dataclass(frozen=True)
class SuspFamily:
    """Graph-only marker for the family of homs susp^m(inner), m >= 1."""

    inner: SkeletonExpr


def _susp_pairs(inner, prefix=""):
    bot, top = prefix + "bot", prefix + "top"
    return [(bot, top, inner), (bot, bot, POINT), (top, top, POINT), (top, bot, EMPTY)]


def pair_homs(env: SkeletonEnv, e: SkeletonExpr, family: bool = False
              ) -> list[tuple[str, str, Union[SkeletonExpr, SuspFamily]]]:
    """Representative ``(a, b, hom)`` triples covering every kind of hom of ``e``.

    Exhaustive when ``e`` has finitely many objects.  For an omegasusp only
    components 0, 1 and 2 are listed, plus one cross pair; deeper components
    repeat component 2 up to suspension depth.  With ``family=True`` the
    component-2 hom is reported as a :class:`SuspFamily` instead of ``susp(d)``.
    """
    match env.resolve(e):
        case Point():
            return [("*", "*", POINT)]
        case Empty():
            return []
        case Node(objects, _) as node:
            return [(a, b, node.hom(a, b)) for a in objects for b in objects]
        case Susp(inner):
            return _susp_pairs(inner)
        case Coprod(cs):
            out = []
            for i, c in enumerate(cs):
                out += [(f"{i}:{a}", f"{i}:{b}", h) for a, b, h in pair_homs(env, c, family)]
            if object_count(env, e) is not None:
                objs = [(i, o) for i, c in enumerate(cs) for o in iter_objects(env, c)]
                out += [(f"{i}:{a}", f"{j}:{b}", EMPTY)
                        for i, a in objs for j, b in objs if i != j]
            else:
                firsts = [(i, next(iter_objects(env, c))) for i, c in enumerate(cs)
                          if has_objects(env, c)]
                out += [(f"{i}:{a}", f"{j}:{b}", EMPTY)
                        for i, a in firsts for j, b in firsts if i != j]
            return out
        case OmegaSusp(inner):
            out = [(f"0:{a}", f"0:{b}", h) for a, b, h in pair_homs(env, inner, family)]
            out += _susp_pairs(inner, "1:")
            deeper = SuspFamily(inner) if family else Susp(inner)
            out += [("2:bot", "2:top", deeper), ("2:bot", "2:bot", POINT),
                    ("2:top", "2:top", POINT), ("2:top", "2:bot", EMPTY),
                    ("1:bot", "2:bot", EMPTY)]
            return out
    raise TypeError(f"not a skeleton expression: {e!r}")


@dataclass(frozen=True)
class HomFamily:
    """Hom skeletons of an expression: finitely many listed ones plus families
    ``{susp^n(inner) : n >= 0}`` coming from omegasusp components."""

    finite_homs: tuple[SkeletonExpr, ...] = ()
    linear_families: tuple[SkeletonExpr, ...] = ()

    def __add__(self, other: HomFamily) -> HomFamily:
        return HomFamily(self.finite_homs + other.finite_homs,
                         self.linear_families + other.linear_families)

    def __bool__(self):
        return bool(self.finite_homs or self.linear_families)


def hom_pairs(env: SkeletonEnv, e: SkeletonExpr) -> HomFamily:
    match e:
        case Ref():
            raise TypeError("hom_pairs expects a resolved expression")
        case Point():
            return HomFamily((POINT,))
        case Empty():
            return HomFamily()
        case Node(objects, _):
            return HomFamily(tuple(e.hom(a, b) for a in objects for b in objects))
        case Susp(inner):
            return HomFamily((inner, POINT, POINT, EMPTY))
        case Coprod(cs):
            fam = HomFamily()
            counts = []
            for c in cs:
                fam = fam + hom_pairs(env, env.resolve(c))
                counts.append(object_count(env, c))
            inhabited = [n for n in counts if n != 0]
            if len(inhabited) >= 2:
                if None in inhabited:
                    cross = 1
                else:
                    cross = sum(inhabited) ** 2 - sum(n * n for n in inhabited)
                fam = fam + HomFamily((EMPTY,) * cross)
            return fam
        case OmegaSusp(inner):
            return (hom_pairs(env, env.resolve(inner))
                    + HomFamily((POINT, EMPTY), (inner,))
                    + HomFamily((EMPTY,)))
    raise TypeError(f"not a skeleton expression: {e!r}")


def reachable_exprs(env: SkeletonEnv, e: SkeletonExpr) -> Iterator[SkeletonExpr]:
    """Every subexpression reachable through hom or component positions, once each."""
    seen = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        yield x
        match x:
            case Ref(name):
                stack.append(env.defs[name])
            case Node(_, homs):
                stack.extend(h for _, h in homs)
            case Susp(inner) | OmegaSusp(inner):
                stack.append(inner)
            case Coprod(cs):
                stack.extend(cs)


def is_hereditarily_finite(env: SkeletonEnv, e: SkeletonExpr) -> bool:
    return not any(isinstance(x, OmegaSusp) for x in reachable_exprs(env, e))


# -- witnesses of prescribed rank ---------------------------------------------


def construct(theta: Ordinal) -> tuple[SkeletonEnv, SkeletonExpr]:
    """A skeleton of rank exactly ``theta`` for ``theta < w^2``.

    ``w*a + b`` is realised as ``susp^b(omegasusp^a(empty))``.
    """
    decomposed = split_below_omega_squared(theta)
    if decomposed is None:
        raise UnsupportedOrdinal(
            f"construct supports ordinals below w^2 only, got {theta}")
    a, b = decomposed
    e: SkeletonExpr = EMPTY
    for _ in range(a):
        e = OmegaSusp(e)
    return EMPTY_ENV, suspend(e, b)


# -- printing ---------------------------------------------------------------


def print_expr(e: SkeletonExpr) -> str:
    match e:
        case Point():
            return "point"
        case Empty():
            return "empty"
        case Ref(name):
            return name
        case Susp(inner):
            return f"susp({print_expr(inner)})"
        case OmegaSusp(inner):
            return f"omegasusp({print_expr(inner)})"
        case Coprod(cs):
            return f"coprod({', '.join(print_expr(c) for c in cs)})"
        case Node(objects, homs):
            body = [f"objects: [{', '.join(objects)}];"]
            body += [f"hom({a}, {b}) = {print_expr(h)};" for (a, b), h in homs]
            return "cat { " + " ".join(body) + " }"
    raise TypeError(f"not a skeleton expression: {e!r}")


def print_env(env: SkeletonEnv) -> str:
    lines = [f"def {name} = {print_expr(body)};" for name, body in env.defs.items()]
    if env.main is not None:
        lines.append(f"main = {env.main};")
    return "\n".join(lines) + "\n"
