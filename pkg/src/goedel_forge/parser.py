"""Recursive-descent parser for formulas, order clauses and theories.

Grammar, loosest first::

    formula := iff
    iff     := imp ("<->" imp)*          left associative
    imp     := or ("->" imp)?            right associative
    or      := and ("|" or)?             right associative
    and     := cmp ("&" and)?            right associative
    cmp     := unary (("~" | "<") unary)?
    unary   := "!" unary | "D" unary | quant | atom | const | "(" formula ")"
    quant   := ("forall" | "exists") var unary
"""

from __future__ import annotations

import re
from fractions import Fraction

from .syntax import (AND, EQ, EXISTS, FORALL, IFF, IMP, LT, OR, App, Atom,
                     Bin, Clause, Const, Delta, Literal, Not, Quant, Signature,
                     SignatureError, Theory, Var, is_literal_side)


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int = -1, text: str = ""):
        self.pos = pos
        where = f" at position {pos}" if pos >= 0 else ""
        super().__init__(f"{msg}{where}")


TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<empty>\[\])
  | (?P<op><->|->|[~<&|!(),;])
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)

KEYWORDS = {"forall", "exists", "D"}


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", pos))
    return out


def parse_value(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number {text!r}")
    return v


class _Parser:
    def __init__(self, text: str, sig: Signature | None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig if sig is not None else Signature()

    # token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, value: str) -> bool:
        kind, val, _ = self.peek()
        return kind in ("op", "ident", "empty") and val == value

    def take(self, value: str | None = None):
        tok = self.peek()
        if value is not None and tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise ParseError(msg, self.peek()[2], self.text)

    def expect_end(self):
        if self.peek()[0] != "eof":
            self.fail(f"unexpected {self.peek()[1]!r}")

    # formulas
    def formula(self):
        left = self.imp()
        while self.at("<->"):
            self.take()
            left = Bin(IFF, left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.at("->"):
            self.take()
            return Bin(IMP, left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        if self.at("|"):
            self.take()
            return Bin(OR, left, self.disj())
        return left

    def conj(self):
        left = self.cmp()
        if self.at("&"):
            self.take()
            return Bin(AND, left, self.conj())
        return left

    def cmp(self):
        left = self.unary()
        if self.at("~") or self.at("<"):
            op = EQ if self.take()[1] == "~" else LT
            right = self.unary()
            if self.at("~") or self.at("<"):
                self.fail("comparisons do not associate; add parentheses")
            return Bin(op, left, right)
        return left

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "!":
            self.take()
            return Not(self.unary())
        if kind == "ident" and val == "D":
            self.take()
            return Delta(self.unary())
        if kind == "ident" and val in (FORALL, EXISTS):
            self.take()
            vk, vname, vpos = self.take()
            if vk != "ident" or vname in KEYWORDS:
                raise ParseError("expected a variable after quantifier", vpos, self.text)
            return Quant(val, vname, self.unary())
        if kind == "op" and val == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if kind == "num":
            self.take()
            v = parse_value(val)
            if not 0 <= v <= 1:
                raise ParseError(f"truth constant {val} outside [0,1]", pos, self.text)
            return Const(v)
        if kind == "ident" and val not in KEYWORDS:
            self.take()
            args = ()
            if self.at("("):
                args = self.arglist()
            try:
                self.sig.declare_pred(val, len(args))
            except SignatureError as e:
                raise ParseError(str(e), pos, self.text)
            return Atom(val, args)
        self.fail(f"unexpected {val or 'end of input'!r}")

    def arglist(self):
        self.take("(")
        args = []
        if not self.at(")"):
            args.append(self.term())
            while self.at(","):
                self.take()
                args.append(self.term())
        self.take(")")
        return tuple(args)

    def term(self):
        kind, val, pos = self.take()
        if kind != "ident" or val in KEYWORDS:
            raise ParseError(f"expected a term, found {val!r}", pos, self.text)
        if self.at("("):
            args = self.arglist()
            try:
                self.sig.declare_func(val, len(args))
            except SignatureError as e:
                raise ParseError(str(e), pos, self.text)
            return App(val, args)
        if self.sig.is_constant_symbol(val):
            return App(val)
        if val.startswith("_"):
            raise ParseError(f"unknown reserved symbol {val!r}", pos, self.text)
        return Var(val)

    # clauses
    def clause(self):
        if self.peek()[0] == "empty":
            self.take()
            return Clause()
        lits = [self.literal()]
        while self.at("|"):
            self.take()
            lits.append(self.literal())
        return Clause(lits)

    def literal(self):
        pos = self.peek()[2]
        left = self.unary()
        if not (self.at("~") or self.at("<")):
            self.fail("expected '~' or '<' in order literal")
        rel = EQ if self.take()[1] == "~" else LT
        right = self.unary()
        for side in (left, right):
            if not is_literal_side(side):
                raise ParseError("literal sides must be atoms, constants or "
                                 "quantified atoms", pos, self.text)
        return Literal(left, rel, right)


def parse_formula(text: str, sig: Signature | None = None):
    p = _Parser(text, sig)
    f = p.formula()
    p.expect_end()
    return f


def parse_term(text: str, sig: Signature | None = None):
    p = _Parser(text, sig)
    t = p.term()
    p.expect_end()
    return t


def parse_clause(text: str, sig: Signature | None = None) -> Clause:
    p = _Parser(text, sig)
    c = p.clause()
    p.expect_end()
    return c


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_theory(text: str, sig: Signature | None = None) -> Theory:
    """One clause per line; blank lines and ``#`` comments are skipped."""
    sig = sig if sig is not None else Signature()
    clauses = []
    for n, line in enumerate(text.splitlines(), 1):
        line = _strip_comment(line)
        if not line:
            continue
        try:
            clauses.append(parse_clause(line, sig))
        except ParseError as e:
            raise ParseError(f"line {n}: {e}")
    return Theory(clauses)


def parse_formulas(text: str, sig: Signature | None = None) -> list:
    """Formulas separated by ``;`` (a trailing separator is optional)."""
    sig = sig if sig is not None else Signature()
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    out = []
    for chunk in body.split(";"):
        if chunk.strip():
            out.append(parse_formula(chunk, sig))
    return out
