"""Terms, formulas, order literals and clauses of first-order Goedel logic
with truth constants.

All nodes are frozen dataclasses, so they hash, compare structurally and can
be shared freely.  Truth constants are stored as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")


@dataclass(frozen=True)
class App:
    """Function application; constant symbols have no arguments."""
    fn: str
    args: tuple = ()


Term = Union[Var, App]


# ------------------------------------------------------------- formulas

AND, OR, IMP, IFF, EQ, LT = "and", "or", "imp", "iff", "eq", "lt"
BINARY_OPS = (AND, OR, IMP, IFF, EQ, LT)
FORALL, EXISTS = "forall", "exists"


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Const:
    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        if not 0 <= v <= 1:
            raise ValueError(f"truth constant {v} outside [0,1]")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class Delta:
    arg: "Formula"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Formula"
    right: "Formula"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown connective {self.op!r}")


@dataclass(frozen=True)
class Quant:
    q: str
    var: str
    body: "Formula"

    def __post_init__(self):
        if self.q not in (FORALL, EXISTS):
            raise ValueError(f"unknown quantifier {self.q!r}")


Formula = Union[Atom, Const, Not, Delta, Bin, Quant]

ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def const(v) -> Const:
    return Const(Fraction(v))


def is_const(f, value=None) -> bool:
    if not isinstance(f, Const):
        return False
    return value is None or f.value == value


# ------------------------------------------------------------ signature

FRESH_RE = re.compile(r"^_p(\d+)_(\d+)$")

# reserved symbols with their fixed arities
RESERVED_FUNCS = {"_z": 0, "_s": 1, "frac": 2, "nfrac": 2}
RESERVED_PREDS = {"nat": 1, "rat": 1, "time": 1, "uni": 1}


def fresh_pred(i: int, j: int) -> str:
    return f"_p{i}_{j}"


def fresh_index(name: str):
    """(i, j) for a fresh predicate name, else None."""
    m = FRESH_RE.match(name)
    return (int(m.group(1)), int(m.group(2))) if m else None


def set_pred(name: str) -> str:
    return f"_G_{name}"


def var_pred(name: str, rule: str | None = None) -> str:
    return f"_H_{name}" if rule is None else f"_H_{name}__{rule}"


class SignatureError(ValueError):
    pass


class Signature:
    """Arity tables for function and predicate symbols.

    Reserved names keep their fixed arities; names beginning with ``_`` are
    only accepted for the generated families (fresh predicates, set and
    variable predicates) and the reserved numerals.
    """

    def __init__(self, funcs=None, preds=None, constants=()):
        self.funcs: dict[str, int] = dict(RESERVED_FUNCS)
        self.preds: dict[str, int] = dict(RESERVED_PREDS)
        for k, v in (funcs or {}).items():
            self.declare_func(k, v)
        for k, v in (preds or {}).items():
            self.declare_pred(k, v)
        for c in constants:
            self.declare_func(c, 0)

    def copy(self) -> "Signature":
        s = Signature()
        s.funcs = dict(self.funcs)
        s.preds = dict(self.preds)
        return s

    def declare_func(self, name: str, arity: int):
        self._declare(self.funcs, name, arity, "function")

    def declare_pred(self, name: str, arity: int):
        if name.startswith("_") and not (
                fresh_index(name) or name.startswith("_G_") or name.startswith("_H_")):
            raise SignatureError(f"reserved predicate name {name!r}")
        self._declare(self.preds, name, arity, "predicate")

    def _declare(self, table, name, arity, kind):
        old = table.get(name)
        if old is not None and old != arity:
            raise SignatureError(
                f"{kind} {name!r} used with arity {arity}, declared {old}")
        if kind == "function" and name.startswith("_") and name not in RESERVED_FUNCS:
            if name != "_f0":
                raise SignatureError(f"reserved function name {name!r}")
        table[name] = arity

    def is_constant_symbol(self, name: str) -> bool:
        return self.funcs.get(name) == 0


# ------------------------------------------------------- order clauses

@dataclass(frozen=True)
class Literal:
    """Order literal ``left rel right`` with rel in {eq, lt}."""
    left: Formula
    rel: str
    right: Formula

    def __post_init__(self):
        if self.rel not in (EQ, LT):
            raise ValueError("order literal relation must be eq or lt")
        for side in (self.left, self.right):
            if not is_literal_side(side):
                raise ValueError(f"not an order literal side: {side!r}")


def is_literal_side(f) -> bool:
    return isinstance(f, (Atom, Const)) or is_quantified_atom(f)


class Clause:
    """A finite set of order literals.

    Literal order is kept for printing; equality and hashing ignore it.
    """

    __slots__ = ("literals", "_key")

    def __init__(self, literals: Iterable[Literal] = ()):
        seen = []
        for lit in literals:
            lit = canonical_literal(lit)
            if lit not in seen:
                seen.append(lit)
        self.literals = tuple(seen)
        self._key = frozenset(seen)

    def __eq__(self, other):
        return isinstance(other, Clause) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self):
        return len(self.literals)

    def __repr__(self):
        return f"Clause({list(self.literals)!r})"

    @property
    def is_empty(self) -> bool:
        return not self.literals


EMPTY_CLAUSE = Clause()


class Theory:
    """An ordered, duplicate-free collection of clauses with set equality."""

    __slots__ = ("clauses", "_key")

    def __init__(self, clauses: Iterable[Clause] = ()):
        seen = {}
        for c in clauses:
            seen.setdefault(c, None)
        self.clauses = tuple(seen)
        self._key = frozenset(self.clauses)

    def __eq__(self, other):
        return isinstance(other, Theory) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __len__(self):
        return len(self.clauses)

    def __contains__(self, c):
        return c in self._key

    def __or__(self, other: "Theory") -> "Theory":
        return Theory(self.clauses + tuple(other))

    def __repr__(self):
        return f"Theory({len(self.clauses)} clauses)"


# ---------------------------------------------------------- measures

def size(x) -> int:
    """Symbol-count size of a term, formula, literal, clause or theory."""
    if isinstance(x, Var):
        return 1
    if isinstance(x, (App, Atom)):
        return 1 + sum(size(t) for t in x.args)
    if isinstance(x, Const):
        return 1
    if isinstance(x, (Not, Delta)):
        return 1 + size(x.arg)
    if isinstance(x, Bin):
        return 1 + size(x.left) + size(x.right)
    if isinstance(x, Quant):
        return 2 + size(x.body)
    if isinstance(x, Literal):
        return 1 + size(x.left) + size(x.right)
    # clauses and theories: sum of their parts
    if isinstance(x, (Clause, Theory)):
        return sum(size(y) for y in x)
    raise TypeError(f"cannot measure {x!r}")


def term_vars(t) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    else:
        for a in t.args:
            yield from term_vars(a)


def varseq(f) -> list:
    """Variables of ``f`` in left-right preorder, one entry per occurrence
    (quantifier variables included)."""
    out = []

    def walk(g):
        if isinstance(g, (Atom, App)):
            for a in g.args:
                out.extend(term_vars(a))
        elif isinstance(g, Var):
            out.append(g.name)
        elif isinstance(g, (Not, Delta)):
            walk(g.arg)
        elif isinstance(g, Bin):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Quant):
            out.append(g.var)
            walk(g.body)

    walk(f)
    return out


def dedup(seq) -> tuple:
    """Keep first occurrences only."""
    return tuple(dict.fromkeys(seq))


def free_vars(f) -> set:
    if isinstance(f, (Atom, App)):
        return {v for a in f.args for v in term_vars(a)}
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, Const):
        return set()
    if isinstance(f, (Not, Delta)):
        return free_vars(f.arg)
    if isinstance(f, Bin):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Quant):
        return free_vars(f.body) - {f.var}
    if isinstance(f, Literal):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Clause):
        return set().union(*(free_vars(l) for l in f)) if len(f) else set()
    raise TypeError(f)


def free_vars_ordered(f) -> tuple:
    """Free variables in order of first occurrence."""
    fv = free_vars(f)
    out = []
    bound: list = []

    def walk(g):
        if isinstance(g, Atom):
            for a in g.args:
                for v in term_vars(a):
                    if v in fv and v not in bound and v not in out:
                        out.append(v)
        elif isinstance(g, (Not, Delta)):
            walk(g.arg)
        elif isinstance(g, Bin):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Quant):
            bound.append(g.var)
            walk(g.body)
            bound.pop()

    walk(f)
    return tuple(out)


def constants_of(x) -> set:
    """Truth-constant values occurring in a formula, literal, clause or theory."""
    if isinstance(x, Const):
        return {x.value}
    if isinstance(x, Atom):
        return set()
    if isinstance(x, (Not, Delta)):
        return constants_of(x.arg)
    if isinstance(x, Bin):
        return constants_of(x.left) | constants_of(x.right)
    if isinstance(x, Quant):
        return constants_of(x.body)
    if isinstance(x, Literal):
        return constants_of(x.left) | constants_of(x.right)
    if isinstance(x, (Clause, Theory)):
        out = set()
        for y in x:
            out |= constants_of(y)
        return out
    raise TypeError(x)


def atoms_of(x) -> list:
    """Distinct atoms (not under a quantifier's scope test) in order of appearance."""
    out: dict = {}

    def walk(g):
        if isinstance(g, Atom):
            out.setdefault(g, None)
        elif isinstance(g, (Not, Delta)):
            walk(g.arg)
        elif isinstance(g, (Bin,)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Quant):
            walk(g.body)
        elif isinstance(g, Literal):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Clause, Theory, list, tuple)):
            for y in g:
                walk(y)

    walk(x)
    return list(out)


def connectives(f) -> set:
    """Node kinds present in ``f`` (for normal-form scans)."""
    kinds = set()

    def walk(g):
        if isinstance(g, Not):
            kinds.add("not")
            walk(g.arg)
        elif isinstance(g, Delta):
            kinds.add("delta")
            walk(g.arg)
        elif isinstance(g, Bin):
            kinds.add(g.op)
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Quant):
            kinds.add(g.q)
            walk(g.body)

    walk(f)
    return kinds


def subformulas(f) -> Iterator:
    yield f
    if isinstance(f, (Not, Delta)):
        yield from subformulas(f.arg)
    elif isinstance(f, Bin):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, Quant):
        yield from subformulas(f.body)


# ----------------------------------------------------- quantified atoms

def is_quantified_atom(f) -> bool:
    if not (isinstance(f, Quant) and isinstance(f.body, Atom)):
        return False
    x = f.var
    occurs = False
    for t in f.body.args:
        if t == Var(x):
            occurs = True
        elif x in set(term_vars(t)):
            return False
    return occurs


# ------------------------------------------------------ canonical form

def _side_key(side):
    from .printer import format_formula
    text = format_formula(side)
    if isinstance(side, Atom):
        idx = fresh_index(side.pred)
        if idx is not None:
            return (0, 0, idx[0], idx[1], text)
        return (0, 1, 0, 0, text)
    if isinstance(side, Quant):
        return (1, 0, 0, 0, text)
    return (2, 0, 0, 0, text)


def canonical_literal(lit: Literal) -> Literal:
    """Orient ``eq`` literals: atoms before quantified atoms before constants,
    fresh predicates by index, the rest by printed form.  ``lt`` is kept."""
    if lit.rel != EQ:
        return lit
    if _side_key(lit.right) < _side_key(lit.left):
        return Literal(lit.right, EQ, lit.left)
    return lit


def eq(a, b) -> Literal:
    return Literal(a, EQ, b)


def lt(a, b) -> Literal:
    return Literal(a, LT, b)


# -------------------------------------------------------- substitution

class SubstitutionError(ValueError):
    pass


def subst_term(t, bindings: dict):
    if isinstance(t, Var):
        return bindings.get(t.name, t)
    return App(t.fn, tuple(subst_term(a, bindings) for a in t.args))


def _subst(f, bindings: dict):
    if not bindings:
        return f
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(subst_term(a, bindings) for a in f.args))
    if isinstance(f, Const):
        return f
    if isinstance(f, Not):
        return Not(_subst(f.arg, bindings))
    if isinstance(f, Delta):
        return Delta(_subst(f.arg, bindings))
    if isinstance(f, Bin):
        return Bin(f.op, _subst(f.left, bindings), _subst(f.right, bindings))
    if isinstance(f, Quant):
        inner = {k: v for k, v in bindings.items() if k != f.var}
        return Quant(f.q, f.var, _subst(f.body, inner))
    if isinstance(f, Literal):
        return Literal(_subst(f.left, bindings), f.rel, _subst(f.right, bindings))
    if isinstance(f, Clause):
        return Clause(_subst(l, bindings) for l in f)
    if isinstance(f, Theory):
        return Theory(_subst(c, bindings) for c in f)
    raise TypeError(f)


def substitute(f, bindings: dict, strict: bool = True):
    """Replace free variables by closed terms.

    With ``strict`` set, binding a variable that occurs in ``f`` only bound
    is an error.
    """
    for k, t in bindings.items():
        if list(term_vars(t)):
            raise SubstitutionError(f"term bound to {k} is not closed")
    if strict and not isinstance(f, (Theory, Clause)):
        occurring = set(varseq(f)) if not isinstance(f, Literal) else (
            set(varseq(f.left)) | set(varseq(f.right)))
        fv = free_vars(f)
        for k in bindings:
            if k in occurring and k not in fv:
                raise SubstitutionError(f"variable {k} occurs only bound")
    return _subst(f, bindings)


# ----------------------------------------------------------- numerals

def nat_term(n: int) -> Term:
    t: Term = App("_z")
    for _ in range(n):
        t = App("_s", (t,))
    return t


def nat_value(t) -> int | None:
    n = 0
    while isinstance(t, App) and t.fn == "_s" and len(t.args) == 1:
        n += 1
        t = t.args[0]
    if isinstance(t, App) and t.fn == "_z" and not t.args:
        return n
    return None


def rational_term(q) -> Term:
    q = Fraction(q)
    if q >= 0:
        return App("frac", (nat_term(q.numerator), nat_term(q.denominator)))
    return App("nfrac", (nat_term(-q.numerator), nat_term(q.denominator)))


def rational_value(t) -> Fraction | None:
    if isinstance(t, App) and t.fn in ("frac", "nfrac") and len(t.args) == 2:
        m, n = nat_value(t.args[0]), nat_value(t.args[1])
        if m is None or not n:
            return None
        if t.fn == "nfrac":
            return None if m == 0 else Fraction(-m, n)
        return Fraction(m, n)
    return None
