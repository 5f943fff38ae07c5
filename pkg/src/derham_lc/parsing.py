"""Polynomial and ideal expressions, and small job documents.

Expressions use integers, rationals ``a/b``, variable names, ``+ - * / ^``
and parentheses.  Division is only by non-zero constants.  An ideal is a
bracketed comma-separated list of polynomials.

A document is a sequence of lines::

    # twisted cubic
    vars x, y, z
    f = y - x^2
    P = [f, z - x^3]
    run verify thm2.6 --ideal P --seed 7

Names bound by ``name = ...`` may be used in later expressions.  Errors carry
1-based line and column numbers.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import Polynomial, VariableContext
from .groebner import Ideal

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")
RESERVED = {"vars", "run"}

Value = Union[Polynomial, Ideal]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class _Tok:
    kind: str  # int, name, op, end
    text: str
    col: int


def _tokenize(text: str, line: int) -> List[_Tok]:
    out = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", line, start)
            out.append(_Tok("op", ch, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, ctx: VariableContext, env: Dict[str, Value], line: int):
        self.ctx = ctx
        self.env = env
        self.line = line
        self.toks = _tokenize(text, line)
        self.i = 0

    def err(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok.col)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.peek()
        if t.kind != "op" or t.text != text:
            what = "end of input" if t.kind == "end" else repr(t.text)
            raise self.err(f"expected {text!r}, found {what}")
        return self.take()

    def at(self, text) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text == text

    def finish(self):
        t = self.peek()
        if t.kind != "end":
            raise self.err(f"unexpected {t.text!r}")

    # value := ideal | expr
    def value(self) -> Value:
        if self.at("["):
            return self.ideal()
        return self.expr()

    def ideal(self) -> Ideal:
        self.expect("[")
        gens = []
        if not self.at("]"):
            gens.append(self.expr())
            while self.at(","):
                self.take()
                gens.append(self.expr())
        self.expect("]")
        return Ideal(self.ctx, tuple(gens))

    def expr(self) -> Polynomial:
        p = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take()
            tok = self.peek()
            q = self.unary()
            if op.text == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise self.err("division only by a non-zero constant", tok)
                p = p * (Fraction(1) / q.coefficient((0,) * self.ctx.arity))
        return p

    def unary(self) -> Polynomial:
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.at("^"):
            self.take()
            t = self.peek()
            if t.kind != "int":
                raise self.err("exponent must be a non-negative integer")
            self.take()
            return base ** int(t.text)
        return base

    def atom(self) -> Polynomial:
        t = self.peek()
        if t.kind == "int":
            self.take()
            return self.ctx.constant(int(t.text))
        if t.kind == "name":
            self.take()
            if t.text in self.ctx.names:
                return self.ctx.var(self.ctx.index(t.text))
            if t.text in self.env:
                v = self.env[t.text]
                if isinstance(v, Ideal):
                    raise self.err(f"{t.text!r} is an ideal, a polynomial is needed here", t)
                return v
            raise self.err(f"undefined symbol {t.text!r}", t)
        if self.at("("):
            self.take()
            p = self.expr()
            self.expect(")")
            return p
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise self.err(f"expected a number, variable or '(', found {what}")


def parse_polynomial(text: str, ctx: VariableContext, env: Dict[str, Value] = None,
                     line: int = 1) -> Polynomial:
    p = _Parser(text, ctx, env or {}, line)
    out = p.expr()
    p.finish()
    return out


def parse_ideal(text: str, ctx: VariableContext, env: Dict[str, Value] = None,
                line: int = 1) -> Ideal:
    """A bracketed list, a bound ideal name, or a bare polynomial (principal ideal)."""
    env = env or {}
    name = text.strip()
    if name in env and isinstance(env[name], Ideal):
        return env[name]
    p = _Parser(text, ctx, env, line)
    v = p.value()
    p.finish()
    if isinstance(v, Polynomial):
        v = Ideal(ctx, (v,))
    return v


def infer_variables(text: str, env: Dict[str, Value] = None) -> Tuple[str, ...]:
    """Sorted identifiers of ``text`` that are not bound names."""
    env = env or {}
    names = {m.group(0) for m in re.finditer(r"[A-Za-z_][A-Za-z_0-9]*", text)}
    return tuple(sorted(names - set(env)))


def parse_variables(text: str, line: int = 1) -> Tuple[str, ...]:
    names = tuple(v.strip() for v in text.split(",") if v.strip())
    seen = set()
    for v in names:
        if not _IDENT.match(v) or v in RESERVED:
            raise ParseError(f"invalid variable name {v!r}", line, text.find(v) + 1)
        if v in seen:
            raise ParseError(f"duplicate variable name {v!r}", line, text.rfind(v) + 1)
        seen.add(v)
    return names


@dataclass
class InputDocument:
    variables: Tuple[str, ...] = ()
    definitions: Dict[str, Value] = field(default_factory=dict)
    job: Optional[List[str]] = None

    @property
    def ctx(self) -> VariableContext:
        return VariableContext(self.variables)


def parse_document(text: str) -> InputDocument:
    doc = InputDocument()
    ctx = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        head = body.split(None, 1)
        if head[0] == "vars":
            if ctx is not None:
                raise ParseError("variables declared twice", lineno, indent + 1)
            doc.variables = parse_variables(head[1] if len(head) > 1 else "", lineno)
            ctx = doc.ctx
            continue
        if head[0] == "run":
            if doc.job is not None:
                raise ParseError("more than one run line", lineno, indent + 1)
            try:
                doc.job = shlex.split(head[1] if len(head) > 1 else "")
            except ValueError as exc:
                raise ParseError(str(exc), lineno, indent + 1) from exc
            if not doc.job:
                raise ParseError("empty run line", lineno, indent + 1)
            continue
        if "=" not in body:
            raise ParseError("expected 'vars', 'run' or 'name = value'", lineno, indent + 1)
        name, rhs = body.split("=", 1)
        name = name.strip()
        if not _IDENT.match(name) or name in RESERVED:
            raise ParseError(f"invalid name {name!r}", lineno, indent + 1)
        if ctx is None:
            raise ParseError("definitions need a preceding 'vars' line", lineno, indent + 1)
        if name in doc.variables:
            raise ParseError(f"{name!r} is a variable", lineno, indent + 1)
        offset = line.index("=") + 1
        try:
            p = _Parser(rhs, ctx, doc.definitions, lineno)
            value = p.value()
            p.finish()
        except ParseError as exc:
            raise ParseError(exc.message, lineno, exc.column + offset) from None
        doc.definitions[name] = value
    if ctx is None:
        doc.variables = ()
    return doc
