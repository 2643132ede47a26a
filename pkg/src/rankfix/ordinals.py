"""Ordinals below epsilon_0 in Cantor normal form, plus a symbolic top element.

An :class:`Ordinal` is a descending sum ``w^e1*c1 + ... + w^ek*ck`` whose
exponents are themselves ordinals.  ``LAMBDA`` sits above every ordinal and
supports comparison only; it never takes part in arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Optional, Union


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.message = message
        self.pos = pos


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    # ((exponent, coefficient), ...) with strictly decreasing exponents
    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal) or not isinstance(coeff, int) or coeff < 1:
                raise ValueError(f"bad CNF term {(exp, coeff)!r}")
            if prev is not None and not exp < prev:
                raise ValueError("CNF exponents must strictly decrease")
            prev = exp

    @classmethod
    def of(cls, n: int) -> Ordinal:
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((ZERO, n),)) if n else ZERO

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other is LAMBDA:
            return True
        return _cmp_cnf(self, other) < 0

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self == Ordinal.of(other)
        if isinstance(other, Ordinal):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        other = _coerce(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        if isinstance(other, int):
            return add(Ordinal.of(other), self)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Ordinal({print_ordinal(self)!r})"

    def __str__(self):
        return print_ordinal(self)

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def finite_value(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0


class _Lambda:
    """The large ordinal of all small ordinals. Comparable, never arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "LAMBDA"

    __str__ = __repr__

    def __reduce__(self):
        return (_Lambda, ())


ZERO = Ordinal()
LAMBDA = _Lambda()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))

OrdinalExt = Union[Ordinal, _Lambda]


def _coerce(x):
    if isinstance(x, (Ordinal, _Lambda)):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.of(x)
    return NotImplemented


def _cmp_cnf(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp_cnf(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def cmp(a, b) -> int:
    """Three-way comparison on ordinals, ints and LAMBDA: -1, 0 or 1."""
    a, b = _coerce(a), _coerce(b)
    if a is NotImplemented or b is NotImplemented:
        raise TypeError("cmp expects ordinals")
    if a is LAMBDA or b is LAMBDA:
        return (a is LAMBDA) - (b is LAMBDA)
    return _cmp_cnf(a, b)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum. Terms of ``a`` below the leading exponent of ``b`` are absorbed."""
    if not (isinstance(a, Ordinal) and isinstance(b, Ordinal)):
        raise TypeError("add is defined on ordinals only")
    if not b.terms:
        return a
    lead_exp, lead_coeff = b.terms[0]
    kept = []
    for exp, coeff in a.terms:
        c = _cmp_cnf(exp, lead_exp)
        if c > 0:
            kept.append((exp, coeff))
        elif c == 0:
            kept.append((exp, coeff + lead_coeff))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def succ(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and bool(a.terms[-1][0])


def is_successor(a: Ordinal) -> bool:
    return bool(a.terms) and not a.terms[-1][0]


def pred(a: Ordinal) -> Ordinal:
    if not is_successor(a):
        raise ValueError(f"{a} is not a successor ordinal")
    *head, (_, coeff) = a.terms
    if coeff == 1:
        return Ordinal(tuple(head))
    return Ordinal(tuple(head) + ((ZERO, coeff - 1),))


def omega_times(k: int, plus: int = 0) -> Ordinal:
    """``w*k + plus`` for naturals k, plus."""
    head = Ordinal(((ONE, k),)) if k else ZERO
    return add(head, Ordinal.of(plus))


def sup_finite(xs: Iterable[Ordinal]) -> Ordinal:
    best = ZERO
    for x in xs:
        if x > best:
            best = x
    return best


@dataclass(frozen=True)
class LinearFamily:
    """The family n -> base + n over the naturals."""

    base: Ordinal

    def member(self, n: int) -> Ordinal:
        return add(self.base, Ordinal.of(n))


def sup_linear(f: LinearFamily) -> Ordinal:
    return add(f.base, OMEGA)


def max_ext(a, b):
    return a if cmp(a, b) >= 0 else b


# -- text codec -------------------------------------------------------------
#
#   ordinal := "0" | term ("+" term)*
#   term    := "w" ("^" expo)? ("*" INT)? | INT
#   expo    := INT | "w" ("^" expo)? | "(" ordinal ")"
#
# Parentheses disambiguate compound exponents such as w^(w+1).


class _OrdinalParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            raise OrdinalSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def _int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise OrdinalSyntaxError("expected integer", start)
        return int(self.text[start:self.pos])

    def parse(self) -> Ordinal:
        result = self.ordinal()
        self._skip()
        if self.pos != len(self.text):
            raise OrdinalSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return result

    def ordinal(self) -> Ordinal:
        total = self.term()
        while self._peek() == "+":
            self.pos += 1
            total = add(total, self.term())
        return total

    def term(self) -> Ordinal:
        ch = self._peek()
        if ch.isdigit():
            return Ordinal.of(self._int())
        if ch != "w":
            raise OrdinalSyntaxError("expected 'w' or integer", self.pos)
        self.pos += 1
        exp = ONE
        if self._peek() == "^":
            self.pos += 1
            exp = self.expo()
        coeff = 1
        if self._peek() == "*":
            self.pos += 1
            coeff = self._int()
        return Ordinal(((exp, coeff),)) if coeff else ZERO

    def expo(self) -> Ordinal:
        ch = self._peek()
        if ch.isdigit():
            return Ordinal.of(self._int())
        if ch == "(":
            self.pos += 1
            inner = self.ordinal()
            self._expect(")")
            return inner
        if ch == "w":
            self.pos += 1
            exp = ONE
            if self._peek() == "^":
                self.pos += 1
                exp = self.expo()
            return Ordinal(((exp, 1),))
        raise OrdinalSyntaxError("expected exponent", self.pos)


def parse_ordinal(text: str) -> Ordinal:
    return _OrdinalParser(text).parse()


def parse_ordinal_ext(text: str) -> OrdinalExt:
    if text.strip() == "LAMBDA":
        return LAMBDA
    return parse_ordinal(text)


def _print_expo(e: Ordinal) -> str:
    if e.is_finite:
        return str(e.finite_value())
    if len(e.terms) == 1 and e.terms[0][1] == 1:
        return "w" if e.terms[0][0] == ONE else f"w^{_print_expo(e.terms[0][0])}"
    return f"({print_ordinal(e)})"


def print_ordinal(a: OrdinalExt) -> str:
    if a is LAMBDA:
        return "LAMBDA"
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if not exp:
            parts.append(str(coeff))
            continue
        head = "w" if exp == ONE else f"w^{_print_expo(exp)}"
        parts.append(head if coeff == 1 else f"{head}*{coeff}")
    return " + ".join(parts)


def split_below_omega_squared(a: Ordinal) -> Optional[tuple[int, int]]:
    """``(k, n)`` with ``a == w*k + n``, or None when ``a >= w^2``."""
    k = n = 0
    for exp, coeff in a.terms:
        if exp == ONE:
            k = coeff
        elif not exp:
            n = coeff
        else:
            return None
    return k, n
