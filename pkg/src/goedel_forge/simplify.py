"""Normaliser removing negation and Delta and folding truth constants.

One postorder pass: children are simplified first, then the node is rebuilt
through a smart constructor that applies the folding identities.  The
result contains no ``!`` or ``D`` and satisfies the side conditions the
clausifier relies on (see :func:`normal_form_violations`).
"""

from __future__ import annotations


from .semantics import BINARY
from .syntax import (AND, EQ, IFF, IMP, LT, OR, ONE, ZERO, Atom, Bin, Const, Delta, Not,
                     Quant, is_const)


def mk_and(a, b):
    if is_const(a, 0) or is_const(b, 0):
        return ZERO
    if is_const(a, 1):
        return b
    if is_const(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(min(a.value, b.value))
    if a == b:
        return a
    return Bin(AND, a, b)


def mk_or(a, b):
    if is_const(a, 1) or is_const(b, 1):
        return ONE
    if is_const(a, 0):
        return b
    if is_const(b, 0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(max(a.value, b.value))
    if a == b:
        return a
    return Bin(OR, a, b)


def mk_imp(a, b):
    if is_const(a, 0) or is_const(b, 1) or a == b:
        return ONE
    if is_const(a, 1):
        return b
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(BINARY[IMP](a.value, b.value))
    return Bin(IMP, a, b)


def mk_iff(a, b):
    if a == b:
        return ONE
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(BINARY[IFF](a.value, b.value))
    if is_const(a, 1):
        return b
    if is_const(b, 1):
        return a
    if is_const(a, 0):
        return mk_imp(b, ZERO)
    if is_const(b, 0):
        return mk_imp(a, ZERO)
    return Bin(IFF, a, b)


def mk_eq(a, b):
    if a == b:
        return ONE
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(BINARY[EQ](a.value, b.value))
    return Bin(EQ, a, b)


def mk_lt(a, b):
    if a == b or is_const(a, 1) or is_const(b, 0):
        return ZERO
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(BINARY[LT](a.value, b.value))
    return Bin(LT, a, b)


MAKERS = {AND: mk_and, OR: mk_or, IMP: mk_imp, IFF: mk_iff, EQ: mk_eq, LT: mk_lt}


def mk_quant(q, x, body):
    # the universe is non-empty, so a quantified constant is that constant
    if isinstance(body, Const):
        return body
    return Quant(q, x, body)


def simplify(f):
    """Goedel-equivalent normal form of ``f``."""
    if isinstance(f, (Atom, Const)):
        return f
    if isinstance(f, Not):
        return mk_imp(simplify(f.arg), ZERO)
    if isinstance(f, Delta):
        return mk_eq(simplify(f.arg), ONE)
    if isinstance(f, Bin):
        return MAKERS[f.op](simplify(f.left), simplify(f.right))
    if isinstance(f, Quant):
        return mk_quant(f.q, f.var, simplify(f.body))
    raise TypeError(f"cannot simplify {f!r}")


def _is01(f) -> bool:
    return is_const(f, 0) or is_const(f, 1)


def normal_form_violations(f) -> list:
    """Subformulas breaking the normal-form side conditions (empty if none)."""
    bad = []

    def walk(g):
        if isinstance(g, (Not, Delta)):
            bad.append(g)
            walk(g.arg)
        elif isinstance(g, Bin):
            a, b = g.left, g.right
            both = isinstance(a, Const) and isinstance(b, Const)
            if g.op in (AND, OR, IFF):
                ok = not (_is01(a) or _is01(b)) and not both
            elif g.op == IMP:
                ok = not _is01(a) and not is_const(b, 1) and not both
            elif g.op == EQ:
                ok = not both
            else:
                ok = not is_const(a, 1) and not is_const(b, 0) and not both
            if not ok:
                bad.append(g)
            walk(a)
            walk(b)
        elif isinstance(g, Quant):
            if isinstance(g.body, Const):
                bad.append(g)
            walk(g.body)

    walk(f)
    return bad
