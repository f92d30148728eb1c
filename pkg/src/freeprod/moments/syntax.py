"""Text syntax for words.

A word is a sequence of letters ``SIDE:expr`` with ``SIDE`` in ``L``/``R``;
whitespace is ignored.  Inside ``expr``:

* ``p3``: support projection of summand 3;
* ``e12`` or ``e(1,2)``: matrix unit of the first summand of size >= 2;
* ``u``: the Haar unitary of the diffuse summand if there is one, else the
  cyclic shift of the first summand of size >= 2;
* ``@i`` after ``e..`` or ``u`` selects summand ``i``;
* ``^k`` raises to an integer power (negative only for ``u``);
* integers, fractions ``p/q`` and ``i`` are scalars (multiples of the unit);
* ``*``, ``+``, ``-``, parentheses and ``center(expr)`` (subtract the trace).

Example: ``L:p1 R:u^2*e11*u^-2 L:center(p2)``.  Letters only combine
elements of one side; a conjugation across sides is written as three letters.
"""

from __future__ import annotations

import re

from ..algebra import TracialAlgebra
from ..errors import FreeProductError, ShapeMismatch
from ..exact import GaussianRational
from .elements import Element, FreeWord, Letter, Side, haar, matrix_unit, projection, shift, unit

__all__ = ["WordSyntaxError", "parse_word", "parse_element"]


class WordSyntaxError(FreeProductError, ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<side>[LR]):
  | (?P<center>center)\(
  | (?P<eparen>e\((?P<er>\d+),(?P<ec>\d+)\))
  | (?P<eunit>e(?P<er1>\d)(?P<ec1>\d))
  | (?P<proj>p(?P<pi>\d+))
  | (?P<u>u)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<imag>i)
  | (?P<at>@(?P<sel>\d+))
  | (?P<pow>\^(?P<exp>-?\d+))
  | (?P<op>[-+*()])
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        # lastgroup is the innermost named group; map it back to the token kind.
        for name in ("side", "center", "eparen", "eunit", "proj", "u", "num", "imag", "at", "pow", "op"):
            if m.group(name) is not None:
                out.append((name, m))
                break
    return out


class _Parser:
    def __init__(self, tokens, algebra: TracialAlgebra):
        self.toks = tokens
        self.i = 0
        self.a = algebra

    def peek(self, *kinds):
        if self.i < len(self.toks):
            kind, m = self.toks[self.i]
            if not kinds or kind in kinds:
                return kind, m
        return None

    def peek_op(self, *ops):
        t = self.peek("op")
        return t if t and t[1].group("op") in ops else None

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        if not self.peek_op(op):
            raise WordSyntaxError(f"expected {op!r}")
        self.take()

    def at_letter_end(self):
        return self.i >= len(self.toks) or self.peek("side") is not None

    def expr(self) -> Element:
        neg = False
        if self.peek_op("-", "+"):
            neg = self.take()[1].group("op") == "-"
        val = self.term()
        if neg:
            val = -val
        while self.peek_op("+", "-"):
            op = self.take()[1].group("op")
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Element:
        val = self.factor()
        while self.peek_op("*"):
            self.take()
            val = val @ self.factor()
        return val

    def _selector(self):
        if self.peek("at"):
            return int(self.take()[1].group("sel"))
        return None

    def _power(self):
        if self.peek("pow"):
            return int(self.take()[1].group("exp"))
        return None

    def factor(self) -> Element:
        t = self.peek()
        if t is None:
            raise WordSyntaxError("unexpected end of letter")
        kind, m = t
        a = self.a
        if kind == "center":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            val = inner.add_identity(-inner.trace())
        elif kind == "op" and m.group("op") == "(":
            self.take()
            val = self.expr()
            self.expect_op(")")
        elif kind == "proj":
            self.take()
            val = projection(a, int(m.group("pi")))
        elif kind in ("eparen", "eunit"):
            self.take()
            r = int(m.group("er") or m.group("er1"))
            c = int(m.group("ec") or m.group("ec1"))
            val = matrix_unit(a, r, c, self._selector())
        elif kind == "u":
            self.take()
            sel = self._selector()
            k = self._power()
            k = 1 if k is None else k
            if (sel is None and a.diffuse_index() is not None) or (sel is not None and a[sel].is_diffuse):
                return haar(a, k, sel)
            return shift(a, k, sel)
        elif kind == "num":
            self.take()
            val = unit(a).scale(GaussianRational(m.group("num")))
        elif kind == "imag":
            self.take()
            val = unit(a).scale(GaussianRational(0, 1))
        else:
            raise WordSyntaxError(f"unexpected token {m.group(0)!r}")
        k = self._power()
        if k is not None:
            if k < 0:
                raise WordSyntaxError("negative powers are only allowed for u")
            val = val.power(k)
        return val


def parse_element(text: str, algebra: TracialAlgebra) -> Element:
    """Parse a single expression (no side prefix) into an element of ``algebra``."""
    p = _Parser(_tokenize(text), algebra)
    try:
        val = p.expr()
    except (ShapeMismatch, IndexError) as exc:
        raise WordSyntaxError(str(exc)) from exc
    if p.i != len(p.toks):
        raise WordSyntaxError(f"trailing input after expression: {p.toks[p.i][1].group(0)!r}")
    return val


def parse_word(text: str, A: TracialAlgebra, B: TracialAlgebra) -> FreeWord:
    """Parse ``"L:expr R:expr ..."`` into a :class:`FreeWord` over ``(A, B)``.

    An empty string is the empty word.
    """
    toks = _tokenize(text)
    letters = []
    p = _Parser(toks, A)
    while p.i < len(toks):
        t = p.peek("side")
        if t is None:
            raise WordSyntaxError(f"expected 'L:' or 'R:' before {toks[p.i][1].group(0)!r}")
        p.take()
        side = Side(t[1].group("side"))
        p.a = A if side is Side.LEFT else B
        try:
            el = p.expr()
        except (ShapeMismatch, IndexError) as exc:
            raise WordSyntaxError(str(exc)) from exc
        if not p.at_letter_end():
            raise WordSyntaxError(f"unexpected {toks[p.i][1].group(0)!r} inside letter")
        letters.append(Letter(side, el))
    return FreeWord(letters)
