"""Polynomial expression grammar shared by the library, definition files and CLI.

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" exponent)?
    exponent:= "-"? (INT | CONST) | "(" "-"? (INT | CONST) ")"
    atom    := INT | NAME | "(" expr ")"
    NAME    := [A-Za-z_][A-Za-z0-9_]* ( "[" INT ("," INT)* "]" )?

``CONST`` is a name bound to an integer by the caller (``constants``); it
may also stand anywhere a NAME may.  Whitespace is ignored.  ``NAME`` may carry an integer index list such as
``y[-1,0,2]``, which is how stencil templates name lattice offsets.  A
negative exponent is only accepted on a unit (a monomial with coefficient
``±1`` in exchange variables).
"""
from __future__ import annotations

import re

from .core import LaurentPoly, NotDivisible, VarSpace

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(\[\s*-?\d+(\s*,\s*-?\d+)*\s*\])?")
_INT = re.compile(r"\d+")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


class UnknownVariable(ValueError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown variable {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


def normalize_name(name: str) -> str:
    """Canonical spelling of a possibly indexed name: ``y[ -1, 0]`` -> ``y[-1,0]``."""
    if "[" not in name:
        return name
    head, rest = name.split("[", 1)
    idx = [int(t) for t in rest.rstrip("]").split(",")]
    return f"{head}[{','.join(map(str, idx))}]"


class _Parser:
    def __init__(self, text: str, space: VarSpace, constants=None):
        self.text = text
        self.pos = 0
        self.space = space
        self.constants = dict(constants or {})

    def error(self, msg, pos=None):
        raise PolySyntaxError(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> LaurentPoly:
        if not self.text.strip():
            self.error("empty expression")
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.unary()
        return p

    def unary(self):
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        return self.power()

    def power(self):
        start = self.pos
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.exponent()
            try:
                return base ** e
            except NotDivisible:
                self.error("negative exponent on a non-unit", start)
        return base

    def exponent(self) -> int:
        paren = self.peek() == "("
        if paren:
            self.pos += 1
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        self.skip()
        m = _INT.match(self.text, self.pos)
        if m:
            value = int(m.group())
        else:
            m = _NAME.match(self.text, self.pos)
            if not m or m.group() not in self.constants:
                self.error("expected integer exponent")
            value = self.constants[m.group()]
        self.pos = m.end()
        if paren:
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
        return sign * value

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            p = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return p
        if not c:
            self.error("unexpected end of input")
        m = _INT.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return LaurentPoly.const(self.space, int(m.group()))
        m = _NAME.match(self.text, self.pos)
        if m:
            name = normalize_name(m.group())
            if name in self.constants:
                self.pos = m.end()
                return LaurentPoly.const(self.space, self.constants[name])
            if name not in self.space:
                raise UnknownVariable(name, self.pos)
            self.pos = m.end()
            return LaurentPoly.var(self.space, name)
        self.error(f"unexpected {c!r}")


def parse_poly(text: str, space: VarSpace, constants=None) -> LaurentPoly:
    """Parse ``text`` into a canonical LaurentPoly over ``space``.

    ``constants`` maps names to integers substituted wherever they occur.
    """
    for name in constants or {}:
        if name in space:
            raise ValueError(f"{name!r} is both a constant and a variable")
    return _Parser(text, space, constants).parse()


def scan_names(text: str) -> list[str]:
    """Variable names mentioned in ``text``, in order of first appearance."""
    seen: dict[str, None] = {}
    pos = 0
    while pos < len(text):
        m = _NAME.match(text, pos)
        if m and (pos == 0 or not (text[pos - 1].isalnum() or text[pos - 1] == "_")):
            seen.setdefault(normalize_name(m.group()), None)
            pos = m.end()
        else:
            pos += 1
    return list(seen)
