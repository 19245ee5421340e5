"""Problem files.

    field 32003
    vars x, y, z
    order lex
    ideal x^2, x*z + y^2
    subideal x, y

Statements are one per line; a line ending in a comma continues on the
next.  ``#`` starts a comment.  Expressions use + - * / ^ and parentheses;
``/`` only divides by nonzero constants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .field import DEFAULT_PRIME, PrimeField
from .graded import Presentation, validate_presentation
from .poly import MonomialOrder, PolyRing, Polynomial, parse_order


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {message}")


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),:;]))")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            if line[pos:].strip() == "":
                break
            m = _TOKEN.match(line, pos)
            if not m:
                col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
                raise ParseError(f"unexpected character {line[col - 1]!r}", lineno, col)
            kind = m.lastgroup
            start = m.start(kind)
            out.append(Token(kind, m.group(kind), lineno, start + 1))
            pos = m.end()
        out.append(Token("nl", "", lineno, len(line) + 1))
    out.append(Token("eof", "", len(text.splitlines()) + 1, 1))
    return out


@dataclass
class ProblemFile:
    field: PrimeField
    names: tuple
    order: Optional[MonomialOrder]
    ideal: list
    subideal: Optional[list] = None
    ring: PolyRing = None
    _presentation: Presentation = field(default=None, repr=False)

    def presentation(self) -> Presentation:
        if self._presentation is None:
            self._presentation = validate_presentation(self.ring, self.ideal)
        return self._presentation

    def format(self) -> str:
        lines = [f"field {self.field.p}", "vars " + ", ".join(self.names)]
        if self.order is not None:
            lines.append("order " + self.order.spec())
        lines.append("ideal " + ", ".join(str(g) for g in self.ideal))
        if self.subideal is not None:
            lines.append("subideal " + ", ".join(str(g) for g in self.subideal))
        return "\n".join(lines) + "\n"


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.ring: PolyRing | None = None
        self.fld: PrimeField | None = None

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def take(self, kind=None, text=None) -> Token:
        t = self.tok
        if (kind and t.kind != kind) or (text is not None and t.text != text):
            want = repr(text) if text is not None else kind
            got = "end of line" if t.kind == "nl" else "end of input" if t.kind == "eof" else repr(t.text)
            raise self.error(f"expected {want}, found {got}")
        self.i += 1
        return t

    def at(self, text) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def skip_newlines(self):
        while self.tok.kind == "nl":
            self.i += 1

    def comma(self) -> bool:
        if self.at(","):
            self.i += 1
            self.skip_newlines()
            return True
        return False

    def parse(self) -> ProblemFile:
        seen = {}
        order = None
        ideal, sub = None, None
        self.skip_newlines()
        while self.tok.kind != "eof":
            kw = self.take("id")
            if kw.text in seen:
                raise self.error(f"duplicate {kw.text!r} statement", kw)
            seen[kw.text] = kw
            if kw.text == "field":
                if "vars" in seen:
                    raise self.error("'field' must come before 'vars'", kw)
                num = self.take("int")
                try:
                    self.fld = PrimeField(int(num.text))
                except ValueError:
                    raise self.error(f"field characteristic {num.text} is not prime (use 0 for rationals)", num) from None
            elif kw.text == "vars":
                names = [self.take("id").text]
                while self.comma():
                    names.append(self.take("id").text)
                if len(set(names)) != len(names):
                    raise self.error("duplicate variable name", kw)
                self.ring = PolyRing(tuple(names), self.fld or PrimeField(DEFAULT_PRIME))
            elif kw.text == "order":
                order = self.parse_order()
            elif kw.text in ("ideal", "subideal"):
                if self.ring is None:
                    raise self.error(f"'{kw.text}' needs a preceding 'vars' line", kw)
                polys = [self.expr()]
                while self.comma():
                    polys.append(self.expr())
                if kw.text == "ideal":
                    ideal = polys
                else:
                    sub = polys
            else:
                raise self.error(f"unknown statement {kw.text!r}", kw)
            if self.tok.kind != "eof":
                self.take("nl")
            self.skip_newlines()
        if self.ring is None:
            raise self.error("missing 'vars' statement")
        if ideal is None:
            raise self.error("missing 'ideal' statement")
        return ProblemFile(self.ring.field, self.ring.names, order, ideal, sub, self.ring)

    def parse_order(self) -> MonomialOrder:
        start = self.take("id")
        if start.text in ("lex", "grevlex"):
            return parse_order(start.text)
        if start.text != "weight":
            raise self.error(f"unknown order {start.text!r}", start)
        self.take("op", ":")
        weights = [self.signed_int()]
        while self.at(","):
            self.i += 1
            weights.append(self.signed_int())
        tiebreak = "grevlex"
        if self.at(";"):
            self.i += 1
            tb = self.take("id")
            if tb.text not in ("lex", "grevlex"):
                raise self.error(f"unknown tie-break {tb.text!r}", tb)
            tiebreak = tb.text
        if self.ring is not None and len(weights) != self.ring.nvars:
            raise self.error(f"weight vector has {len(weights)} entries for {self.ring.nvars} variables", start)
        return MonomialOrder.weight(weights, tiebreak)

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        return sign * int(self.take("int").text)

    # expr := term (('+'|'-') term)*
    def expr(self) -> Polynomial:
        acc = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    # term := unary (('*'|'/') unary)*
    def term(self) -> Polynomial:
        acc = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise self.error("division only by a nonzero constant", op)
                acc = acc.scale(self.ring.field.inv(rhs.coefficient((0,) * self.ring.nvars)))
        return acc

    def unary(self) -> Polynomial:
        if self.at("-"):
            self.i += 1
            return -self.unary()
        if self.at("+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.at("^"):
            self.i += 1
            exp = self.take("int")
            return base ** int(exp.text)
        return base

    def atom(self) -> Polynomial:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return self.ring.const(int(t.text))
        if t.kind == "id":
            self.i += 1
            if t.text not in self.ring.names:
                raise self.error(f"unknown variable {t.text!r}", t)
            return self.ring.gen(t.text)
        if self.at("("):
            self.i += 1
            inner = self.expr()
            self.take("op", ")")
            return inner
        got = "end of line" if t.kind == "nl" else "end of input" if t.kind == "eof" else repr(t.text)
        raise self.error(f"expected a number, variable or '(', found {got}")


def parse_problem(text: str, validate: bool = True) -> ProblemFile:
    """Parse a problem file; with ``validate`` the ideal is checked to be homogeneous and proper."""
    pf = _Parser(text).parse()
    if validate:
        pf.presentation()
    return pf


def parse_polynomials(text: str, ring: PolyRing) -> list[Polynomial]:
    """Comma separated expressions over an existing ring."""
    p = _Parser(text)
    p.ring = ring
    p.skip_newlines()
    out = [p.expr()]
    while p.comma():
        out.append(p.expr())
    p.skip_newlines()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return out
