"""Standard Goedel algebra, evaluation in finite interpretations, model
checking of clausal theories and a ground satisfiability oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .syntax import (AND, EQ, FORALL, IFF, IMP, LT, OR, App, Atom, Bin, Clause, Const,
                     Delta, Literal, Not, Quant, Theory, Var, atoms_of, constants_of,
                     free_vars)

ONE = Fraction(1)
ZERO = Fraction(0)


# ----------------------------------------------------------- operators

def sup(a, b):
    return max(a, b)


def inf(a, b):
    return min(a, b)


def residuum(a, b):
    return ONE if a <= b else b


def negation(a):
    return ONE if a == 0 else ZERO


def eqcirc(a, b):
    return ONE if a == b else ZERO


def prec(a, b):
    return ONE if a < b else ZERO


def delta(a):
    return ONE if a == 1 else ZERO


def biresiduum(a, b):
    return min(residuum(a, b), residuum(b, a))


BINARY = {AND: inf, OR: sup, IMP: residuum, IFF: biresiduum, EQ: eqcirc, LT: prec}


# ------------------------------------------------------ interpretations

class EvaluationError(ValueError):
    pass


@dataclass
class Interpretation:
    """Finite universe with function and predicate tables.

    A table is either a mapping from argument tuples to values or a callable
    taking the argument tuple.
    """
    universe: tuple
    funcs: Mapping = field(default_factory=dict)
    preds: Mapping = field(default_factory=dict)

    def func(self, name: str, args: tuple):
        table = self.funcs.get(name)
        if table is None:
            raise EvaluationError(f"undeclared function symbol {name!r}")
        if callable(table):
            return table(args)
        try:
            return table[args]
        except KeyError:
            raise EvaluationError(f"{name}{args} not in table")

    def pred(self, name: str, args: tuple) -> Fraction:
        table = self.preds.get(name)
        if table is None:
            raise EvaluationError(f"undeclared predicate symbol {name!r}")
        if callable(table):
            return Fraction(table(args))
        try:
            return Fraction(table[args])
        except KeyError:
            raise EvaluationError(f"{name}{args} not in table")


def eval_term(t, i: Interpretation, e: Mapping):
    if isinstance(t, Var):
        try:
            return e[t.name]
        except KeyError:
            raise EvaluationError(f"variable {t.name} unassigned")
    return i.func(t.fn, tuple(eval_term(a, i, e) for a in t.args))


def eval_truth(f, i: Interpretation, e: Mapping | None = None) -> Fraction:
    e = e or {}
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return i.pred(f.pred, tuple(eval_term(a, i, e) for a in f.args))
    if isinstance(f, Not):
        return negation(eval_truth(f.arg, i, e))
    if isinstance(f, Delta):
        return delta(eval_truth(f.arg, i, e))
    if isinstance(f, Bin):
        a = eval_truth(f.left, i, e)
        # short-circuit where the value cannot change
        if f.op == AND and a == 0:
            return ZERO
        if f.op == OR and a == 1:
            return ONE
        if f.op == IMP and a == 0:
            return ONE
        return BINARY[f.op](a, eval_truth(f.right, i, e))
    if isinstance(f, Quant):
        if not i.universe:
            raise EvaluationError("empty universe")
        best = ONE if f.q == FORALL else ZERO
        for u in i.universe:
            v = eval_truth(f.body, i, {**e, f.var: u})
            if f.q == FORALL:
                best = min(best, v)
                if best == 0:
                    break
            else:
                best = max(best, v)
                if best == 1:
                    break
        return best
    raise TypeError(f"cannot evaluate {f!r}")


def literal_holds(lit: Literal, i: Interpretation, e: Mapping) -> bool:
    a = eval_truth(lit.left, i, e)
    b = eval_truth(lit.right, i, e)
    return a == b if lit.rel == EQ else a < b


def clause_holds(c: Clause, i: Interpretation, e: Mapping) -> bool:
    return any(literal_holds(l, i, e) for l in c)


def assignments(variables, universe):
    variables = sorted(variables)
    for combo in itertools.product(universe, repeat=len(variables)):
        yield dict(zip(variables, combo))


def check_model(i: Interpretation, s) -> bool:
    """True iff every clause is true under every assignment of its variables."""
    for c in s:
        for e in assignments(free_vars(c), i.universe):
            if not clause_holds(c, i, e):
                return False
    return True


# ------------------------------------------------------ ground oracle

@dataclass
class SatReport:
    verdict: str
    witness: dict | None = None

    @property
    def sat(self) -> bool:
        return self.verdict == "SAT"


class NonGroundError(ValueError):
    pass


def _check_ground(s):
    for c in s:
        for lit in c:
            for side in (lit.left, lit.right):
                if isinstance(side, Quant):
                    raise NonGroundError("quantified atom in ground oracle input")
        if free_vars(c):
            raise NonGroundError("variables in ground oracle input")


def grid(consts, n: int) -> list:
    """``consts`` plus ``n`` evenly spaced interior points in every gap."""
    pts = sorted(set(Fraction(c) for c in consts) | {ZERO, ONE})
    out = []
    for a, b in zip(pts, pts[1:]):
        out.append(a)
        out.extend(a + (b - a) * k / (n + 1) for k in range(1, n + 1))
    out.append(pts[-1])
    return out


def ground_valuation_interp(valuation: Mapping) -> Interpretation:
    """Interpretation giving each ground atom its value in ``valuation``."""
    table = {}
    for atom, v in valuation.items():
        table.setdefault(atom.pred, {})[tuple(atom.args)] = v
    # ground terms evaluate to themselves
    return Interpretation(universe=(None,), funcs=_SelfFuncs(), preds=table)


class _SelfFuncs(dict):
    """Herbrand-style function tables: every term denotes itself."""

    def get(self, name, default=None):
        return lambda args: App(name, tuple(args))


def _grid_theory_sat(s, points, atoms):
    for combo in itertools.product(points, repeat=len(atoms)):
        val = dict(zip(atoms, combo))
        i = ground_valuation_interp(val)
        if all(clause_holds(c, i, {}) for c in s):
            return val
    return None


def ground_sat_by_enumeration(s, refine: int = 1) -> SatReport:
    """Exhaustive grid enumeration; exponential, meant for small inputs."""
    s = Theory(s)
    _check_ground(s)
    if any(c.is_empty for c in s):
        return SatReport("UNSAT")
    atoms = atoms_of(s)
    pts = grid(constants_of(s), refine * len(atoms))
    w = _grid_theory_sat(s, pts, atoms)
    return SatReport("SAT", w) if w is not None else SatReport("UNSAT")


class _Order:
    """Transitive closure of <= and < constraints over a fixed node set,
    stored as bitmasks: ``le[v]`` holds the nodes u with v <= u entailed and
    ``lt[v]`` those with v < u entailed."""

    __slots__ = ("le", "lt", "ok")

    def __init__(self, n):
        self.le = [1 << v for v in range(n)]
        self.lt = [0] * n
        self.ok = True

    def copy(self):
        o = _Order.__new__(_Order)
        o.le = list(self.le)
        o.lt = list(self.lt)
        o.ok = self.ok
        return o

    def add(self, a, b, strict):
        le, lt = self.le, self.lt
        bit_a = 1 << a
        le_b, lt_b = le[b], lt[b]
        add_lt_strict = le_b if strict else lt_b
        for x in range(len(le)):
            if le[x] & bit_a:
                le[x] |= le_b
                lt[x] |= add_lt_strict if not (lt[x] & bit_a) else le_b
                if lt[x] >> x & 1:
                    self.ok = False
        return self.ok

    def holds(self, a, rel, b) -> int:
        """1 entailed true, 0 entailed false, -1 open."""
        if rel == EQ:
            if self.le[a] >> b & 1 and self.le[b] >> a & 1:
                return 1
            if self.lt[a] >> b & 1 or self.lt[b] >> a & 1:
                return 0
            return -1
        if self.lt[a] >> b & 1:
            return 1
        if self.le[b] >> a & 1:
            return 0
        return -1

    def assert_lit(self, a, rel, b) -> bool:
        if rel == EQ:
            return self.add(a, b, False) and self.add(b, a, False)
        return self.add(a, b, True)


def ground_sat_oracle(s) -> SatReport:
    """Decide satisfiability of a finite ground order clausal theory over [0,1].

    Truth of every literal depends only on the order type of the atom values
    relative to the constants, so the search splits on how two nodes compare
    and keeps the induced order constraints closed under transitivity; a
    consistent choice is then realised on the grid of the constants with one
    interior point per atom in each gap.
    """
    s = Theory(s)
    _check_ground(s)
    if any(c.is_empty for c in s):
        return SatReport("UNSAT")
    atoms = atoms_of(s)
    consts = sorted(constants_of(s) | {ZERO, ONE})
    nodes = {}
    for c in consts:
        nodes[Const(c)] = len(nodes)
    for a in atoms:
        nodes[a] = len(nodes)
    order = _Order(len(nodes))
    for c1, c2 in zip(consts, consts[1:]):
        order.add(nodes[Const(c1)], nodes[Const(c2)], True)
    zero, one = nodes[Const(ZERO)], nodes[Const(ONE)]
    for a in atoms:
        order.add(zero, nodes[a], False)
        order.add(nodes[a], one, False)
    clauses = [tuple((nodes[l.left], l.rel, nodes[l.right]) for l in c) for c in s]
    result = _search(order, clauses)
    if result is None:
        return SatReport("UNSAT")
    witness = _realise(result, nodes, consts, atoms)
    i = ground_valuation_interp(witness)
    if not all(clause_holds(c, i, {}) for c in s):
        raise AssertionError("oracle witness does not satisfy the theory")
    return SatReport("SAT", witness)


def _propagate(order, clauses):
    """Unit propagation; returns the open clauses or None on conflict."""
    changed = True
    open_clauses = clauses
    while changed:
        changed = False
        remaining = []
        for c in open_clauses:
            live = []
            satisfied = False
            for lit in c:
                h = order.holds(*lit)
                if h == 1:
                    satisfied = True
                    break
                if h == -1:
                    live.append(lit)
            if satisfied:
                continue
            if not live:
                return None
            if len(live) == 1:
                if not order.assert_lit(*live[0]):
                    return None
                changed = True
                continue
            remaining.append(tuple(live))
        open_clauses = remaining
    return open_clauses


def _search(order, clauses):
    stack = [(order, clauses)]
    while stack:
        order, clauses = stack.pop()
        open_clauses = _propagate(order, clauses)
        if open_clauses is None:
            continue
        if not open_clauses:
            return order
        # split on the trichotomy of one open literal's sides; the three
        # cases are disjoint, so no part of the space is searched twice
        a, rel, b = min(open_clauses, key=len)[0]
        cases = [(a, LT, b), (a, EQ, b), (b, LT, a)]
        if rel == EQ:
            cases[0], cases[1] = cases[1], cases[0]
        for lit in reversed(cases):
            o = order.copy()
            if o.assert_lit(*lit):
                stack.append((o, open_clauses))
    return None


def _realise(order, nodes, consts, atoms):
    """Grid values for a consistent closed order: the least solution in which
    each strict step moves to the next grid point."""
    n_atoms = len(atoms)
    pts = grid(consts, n_atoms)
    index = {v: k for k, v in enumerate(pts)}
    value = {}
    for c in consts:
        value[nodes[Const(c)]] = index[c]
    # u <= v without v <= u means strictly fewer nodes below u, so sorting by
    # that count is a topological order; mutually <= atoms share a value
    atom_ids = [nodes[a] for a in atoms]
    n = len(order.le)

    def below(v):
        return [u for u in range(n) if order.le[u] >> v & 1 and u != v]

    ranked = sorted(atom_ids, key=lambda v: len(below(v)))
    for v in ranked:
        lo = 0
        for u in below(v):
            if u in value:
                step = 1 if order.lt[u] >> v & 1 else 0
                lo = max(lo, value[u] + step)
        value[v] = lo
    return {a: pts[value[nodes[a]]] for a in atoms}


# ----------------------------------------------- formula level helpers

def grid_valuations(formulas, refine: int = 1):
    """All grid valuations of the ground atoms of ``formulas``."""
    atoms = atoms_of(list(formulas))
    consts = set()
    for f in formulas:
        consts |= constants_of(f)
    pts = grid(consts, refine * max(1, len(atoms)))
    for combo in itertools.product(pts, repeat=len(atoms)):
        yield ground_valuation_interp(dict(zip(atoms, combo)))


def formula_sat(f, refine: int = 1) -> bool:
    """Ground formula: is there a valuation with value 1?"""
    return any(eval_truth(f, i) == 1 for i in grid_valuations([f], refine))


def ground_entails(theory, goal, refine: int = 1) -> bool:
    """Ground entailment checked on the grid of all involved constants."""
    fs = list(theory) + [goal]
    for i in grid_valuations(fs, refine):
        if all(eval_truth(t, i) == 1 for t in theory) and eval_truth(goal, i) != 1:
            return False
    return True
