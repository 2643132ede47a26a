"""Text formats: skeleton files and stage schedules.

Skeleton files::

    file := def* ("main" "=" IDENT ";")?
    def  := "def" IDENT "=" expr ";"
    expr := "point" | "empty" | "susp" "(" expr ")" | "omegasusp" "(" expr ")"
          | "coprod" "(" expr ("," expr)* ")"
          | "cat" "{" "objects" ":" "[" IDENT ("," IDENT)* "]" ";"
                ("hom" "(" IDENT "," IDENT ")" "=" expr ";")* "}"
          | IDENT

``#`` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .ordinals import (LAMBDA, OMEGA, Ordinal, OrdinalExt, OrdinalSyntaxError, add, cmp,
                       parse_ordinal_ext, succ)
from .skeleton import (EMPTY, POINT, Coprod, Node, OmegaSusp, Ref, SkeletonEnv, SkeletonExpr,
                       Susp, check_refs, print_env, print_expr)

__all__ = ["parse_file", "parse_expr", "print_expr", "print_env", "parse_schedule",
           "SkeletonSyntaxError"]

KEYWORDS = {"def", "main", "point", "empty", "susp", "omegasusp", "coprod", "cat", "objects", "hom"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<int>\d+)
  | (?P<punct>[=;(),{}\[\]:])
""", re.VERBOSE)


class SkeletonSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SkeletonSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise SkeletonSyntaxError(message, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")

    def ident(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.error(f"expected a name, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    def file(self) -> tuple[dict[str, SkeletonExpr], Optional[str]]:
        defs: dict[str, SkeletonExpr] = {}
        main = None
        while self.tok.kind != "eof":
            if self.accept("def"):
                name_tok = self.tok
                name = self.ident()
                if name in defs:
                    self.error(f"{name!r} defined twice", name_tok)
                self.expect("=")
                defs[name] = self.expr()
                self.expect(";")
            elif self.accept("main"):
                if main is not None:
                    self.error("main given twice")
                self.expect("=")
                main = self.ident()
                self.expect(";")
            else:
                self.error(f"expected 'def' or 'main', found {self.tok.text!r}")
        return defs, main

    def expr(self) -> SkeletonExpr:
        tok = self.tok
        if self.accept("point"):
            return POINT
        if self.accept("empty"):
            return EMPTY
        if self.accept("susp"):
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Susp(inner)
        if self.accept("omegasusp"):
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return OmegaSusp(inner)
        if self.accept("coprod"):
            self.expect("(")
            parts = []
            if not self.accept(")"):
                parts.append(self.expr())
                while self.accept(","):
                    parts.append(self.expr())
                self.expect(")")
            return Coprod(tuple(parts))
        if self.accept("cat"):
            return self.node()
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.i += 1
            return Ref(tok.text)
        self.error(f"expected an expression, found {tok.text or 'end of input'!r}")

    def node(self) -> Node:
        start = self.tok
        self.expect("{")
        self.expect("objects")
        self.expect(":")
        self.expect("[")
        objects = [self.ident()]
        while self.accept(","):
            objects.append(self.ident())
        self.expect("]")
        self.expect(";")
        if len(set(objects)) != len(objects):
            self.error("duplicate object names", start)
        homs = []
        seen = set()
        while self.accept("hom"):
            pair_tok = self.tok
            self.expect("(")
            a = self.ident()
            self.expect(",")
            b = self.ident()
            self.expect(")")
            if a not in objects or b not in objects:
                self.error(f"hom({a},{b}) names an undeclared object", pair_tok)
            if (a, b) in seen:
                self.error(f"hom({a},{b}) given twice", pair_tok)
            seen.add((a, b))
            self.expect("=")
            homs.append(((a, b), self.expr()))
            self.expect(";")
        self.expect("}")
        return Node(tuple(objects), tuple(homs))


def parse_file(text: str) -> SkeletonEnv:
    defs, main = _Parser(text).file()
    return SkeletonEnv(defs, main)


def parse_expr(text: str, env: Optional[SkeletonEnv] = None) -> SkeletonExpr:
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r} after expression")
    if env is not None:
        check_refs(env, e)
    return e


# -- schedules ----------------------------------------------------------------
#
#   schedule := item ("," item)*
#   item     := ordinal | "LAMBDA" | ordinal ".." ordinal
#
# A range a..b visits a, a+1, ..., up to `horizon` successor steps in each
# block, then jumps to the next limit ordinal, stopping at b.


class ScheduleError(ValueError):
    pass


def _next_limit(a: Ordinal) -> Ordinal:
    # drop the finite tail, then add w
    terms = a.terms[:-1] if a.terms and not a.terms[-1][0] else a.terms
    return add(Ordinal(terms), OMEGA)


def expand_range(lo: Ordinal, hi: Ordinal, horizon: int, max_stages: int = 100_000) -> list[Ordinal]:
    out = []
    block_start = lo
    cur = lo
    while cmp(cur, hi) <= 0:
        out.append(cur)
        if len(out) > max_stages:
            raise ScheduleError(f"range {lo}..{hi} exceeds {max_stages} stages")
        nxt = succ(cur)
        if cmp(nxt, add(block_start, Ordinal.of(horizon))) > 0:
            nxt = _next_limit(cur)
            block_start = nxt
        cur = nxt
    return out


def parse_schedule(text: str, horizon: int = 16) -> list[OrdinalExt]:
    stages: list[OrdinalExt] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ScheduleError("empty schedule item")
        try:
            if ".." in item:
                lo_text, hi_text = item.split("..", 1)
                lo, hi = parse_ordinal_ext(lo_text), parse_ordinal_ext(hi_text)
                if lo is LAMBDA or hi is LAMBDA:
                    raise ScheduleError("LAMBDA cannot bound a range")
                stages.extend(expand_range(lo, hi, horizon))
            else:
                stages.append(parse_ordinal_ext(item))
        except OrdinalSyntaxError as exc:
            raise ScheduleError(f"bad schedule item {item!r}: {exc}") from exc
    for a, b in zip(stages, stages[1:]):
        if cmp(a, b) >= 0:
            raise ScheduleError(f"schedule must be strictly ascending: {a} then {b}")
    return stages
