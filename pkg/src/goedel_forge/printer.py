"""Concrete ASCII syntax for terms, formulas, clauses and theories."""

from __future__ import annotations

from fractions import Fraction

from .syntax import (AND, EQ, IFF, IMP, LT, OR, Atom, Bin, Clause, Const, Delta,
                     Literal, Not, Quant, Var)

SYMBOL = {AND: "&", OR: "|", IMP: "->", IFF: "<->", EQ: "~", LT: "<"}
LEVEL = {IFF: 1, IMP: 2, OR: 3, AND: 4, EQ: 5, LT: 5}
UNARY_LEVEL = 6
RIGHT_ASSOC = {IMP, AND, OR}
LEFT_ASSOC = {IFF}


def format_value(v) -> str:
    """Decimal when the value has a finite decimal expansion, else p/q."""
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    d = v.denominator
    k = 0
    while d % 2 == 0:
        d //= 2
        k += 1
    m = 0
    while d % 5 == 0:
        d //= 5
        m += 1
    if d != 1:
        return f"{v.numerator}/{v.denominator}"
    digits = max(k, m)
    text = f"{v.numerator * 10 ** digits // v.denominator:0{digits + 1}d}"
    sign = "-" if v < 0 else ""
    text = text.lstrip("-")
    return f"{sign}{text[:-digits] or '0'}.{text[-digits:]}"


def format_term(t) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        # reserved numerals print bare; other constants keep the parentheses
        return t.fn if t.fn.startswith("_") else f"{t.fn}()"
    return f"{t.fn}({','.join(format_term(a) for a in t.args)})"


def _level(f) -> int:
    return LEVEL[f.op] if isinstance(f, Bin) else UNARY_LEVEL


def format_formula(f) -> str:
    """Render with the minimal parentheses for the precedence table."""
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({','.join(format_term(a) for a in f.args)})"
    if isinstance(f, Const):
        return format_value(f.value)
    if isinstance(f, Not):
        return "!" + _wrap(f.arg, UNARY_LEVEL)
    if isinstance(f, Delta):
        return "D " + _wrap(f.arg, UNARY_LEVEL)
    if isinstance(f, Quant):
        return f"{f.q} {f.var} " + _wrap(f.body, UNARY_LEVEL)
    if isinstance(f, Bin):
        lv = LEVEL[f.op]
        left = _wrap(f.left, lv, strict=f.op not in LEFT_ASSOC)
        right = _wrap(f.right, lv, strict=f.op not in RIGHT_ASSOC)
        return f"{left} {SYMBOL[f.op]} {right}"
    if isinstance(f, Literal):
        return f"{format_formula(f.left)} {SYMBOL[f.rel]} {format_formula(f.right)}"
    raise TypeError(f"cannot format {f!r}")


def _wrap(f, level: int, strict: bool = False) -> str:
    text = format_formula(f)
    lv = _level(f)
    if lv < level or (strict and lv == level and lv != UNARY_LEVEL):
        return f"({text})"
    return text


def format_literal(lit: Literal) -> str:
    return format_formula(lit)


def format_clause(c: Clause) -> str:
    if c.is_empty:
        return "[]"
    return " | ".join(format_formula(l) for l in c)


def format_theory(s) -> str:
    return "".join(format_clause(c) + "\n" for c in s)
