"""Interpolation-based translation of formulas and theories to order clausal
form.

Every subformula gets a fresh predicate ``_p<i>_<j>`` over the shared
variable tuple; ``i`` is the per-formula offset and ``j`` a running counter
allocated in preorder (left child ``j+1``, right child one past the last
index used by the left subtree).  Each rule emits a fixed clause prefix
relating the node's predicate to its children's, followed by the clauses of
the left and then the right subtree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .simplify import normal_form_violations, simplify
from .syntax import (EQ, FORALL, IMP, LT, ONE, ZERO, Atom, Bin, Clause, Const, Literal,
                     Quant, Theory, Var, dedup, eq, free_vars_ordered, fresh_pred,
                     fresh_index, is_const, lt, size, varseq)

# rule number and short name, in table order
RULES = {
    "and": 16, "or": 17, "imp": 18, "iff": 19, "eq": 20, "lt": 21,
    "imp-zero": 25, "eq-zero": 26, "eq-one": 27, "zero-lt": 28,
    "lt-one": 29, "forall": 30, "exists": 31,
}


class NotNormalForm(ValueError):
    pass


class BoundViolation(AssertionError):
    pass


@dataclass
class TraceStep:
    rule: str
    index: tuple
    formula: object

    @property
    def number(self) -> int:
        return RULES[self.rule]

    def __str__(self):
        from .printer import format_formula
        i, j = self.index
        return (f"rule {self.number} ({self.rule}) at _p{i}_{j}: "
                f"{format_formula(self.formula)}")


@dataclass
class TranslationResult:
    clauses: Theory
    fresh: list = field(default_factory=list)
    root: tuple | None = None
    shared_vars: tuple = ()
    trace: list = field(default_factory=list)
    normal_form: object = None

    @property
    def status(self) -> str:
        if self.root is not None:
            return "translated"
        return "unsat" if any(c.is_empty for c in self.clauses) else "valid"


def rule_for(theta) -> str | None:
    """Name of the interpolation rule for a non-atomic normal-form node."""
    if isinstance(theta, Quant):
        return theta.q
    if not isinstance(theta, Bin):
        return None
    a, b = theta.left, theta.right
    if theta.op == IMP:
        return "imp-zero" if is_const(b, 0) else "imp"
    if theta.op == EQ:
        if is_const(a, 0) or is_const(b, 0):
            return "eq-zero"
        if is_const(a, 1) or is_const(b, 1):
            return "eq-one"
        return "eq"
    if theta.op == LT:
        if is_const(a, 0):
            return "zero-lt"
        if is_const(b, 1):
            return "lt-one"
        return "lt"
    return theta.op


def _prefix(rule, p, p1, p2=None):
    """Clause prefix tying ``p`` to its children ``p1`` (and ``p2``)."""
    if rule == "and":
        return [[lt(p1, p2), eq(p1, p2), eq(p, p2)], [lt(p2, p1), eq(p, p1)]]
    if rule == "or":
        return [[lt(p1, p2), eq(p1, p2), eq(p, p1)], [lt(p2, p1), eq(p, p2)]]
    if rule == "imp":
        return [[lt(p1, p2), eq(p1, p2), eq(p, p2)], [lt(p2, p1), eq(p, ONE)]]
    if rule == "iff":
        return [[lt(p1, p2), eq(p1, p2), eq(p, p2)],
                [lt(p2, p1), eq(p2, p1), eq(p, p1)],
                [lt(p1, p2), lt(p2, p1), eq(p, ONE)]]
    if rule == "eq":
        return [[eq(p1, p2), eq(p, ZERO)], [lt(p1, p2), lt(p2, p1), eq(p, ONE)]]
    if rule == "lt":
        return [[lt(p1, p2), eq(p, ZERO)], [lt(p2, p1), eq(p2, p1), eq(p, ONE)]]
    if rule in ("imp-zero", "eq-zero"):
        return [[eq(p1, ZERO), eq(p, ZERO)], [lt(ZERO, p1), eq(p, ONE)]]
    if rule == "eq-one":
        return [[eq(p1, ONE), eq(p, ZERO)], [lt(p1, ONE), eq(p, ONE)]]
    if rule == "zero-lt":
        return [[lt(ZERO, p1), eq(p, ZERO)], [eq(p1, ZERO), eq(p, ONE)]]
    if rule == "lt-one":
        return [[lt(p1, ONE), eq(p, ZERO)], [eq(p1, ONE), eq(p, ONE)]]
    raise ValueError(rule)


def _unary_child(rule, theta):
    a, b = theta.left, theta.right
    if rule in ("imp-zero",):
        return a
    if rule in ("eq-zero", "eq-one"):
        return b if isinstance(a, Const) else a
    if rule == "zero-lt":
        return b
    return a  # lt-one


def interpolate(theta, xs: tuple, start: tuple) -> TranslationResult:
    """Clauses defining ``_p<start>(xs)`` as the value of ``theta``.

    ``theta`` must be in normal form, not a constant 0 or 1, and use only
    variables from ``xs``.  The root pinning clause is not included.
    """
    if is_const(theta, 0) or is_const(theta, 1):
        raise NotNormalForm("cannot interpolate a 0/1 constant")
    bad = normal_form_violations(theta)
    if bad:
        raise NotNormalForm(f"not in normal form: {bad[0]!r}")
    if not set(varseq(theta)) <= set(xs):
        raise NotNormalForm("formula variables not covered by the shared tuple")
    n, j0 = start
    args = tuple(Var(x) for x in xs)
    trace: list = []
    fresh: list = []

    def p(j):
        return Atom(fresh_pred(n, j), args)

    def go(t, j):
        """Clauses for p_j <-> t; returns (clauses, last index used)."""
        if isinstance(t, (Atom, Const)):
            return [[eq(p(j), t)]], j
        rule = rule_for(t)
        trace.append(TraceStep(rule, (n, j), t))
        if isinstance(t, Quant):
            j1 = j + 1
            fresh.append((n, j1))
            sub, last = go(t.body, j1)
            return [[eq(p(j), Quant(t.q, t.var, p(j1)))]] + sub, last
        if rule in ("imp-zero", "eq-zero", "eq-one", "zero-lt", "lt-one"):
            j1 = j + 1
            fresh.append((n, j1))
            sub, last = go(_unary_child(rule, t), j1)
            return _prefix(rule, p(j), p(j1)) + sub, last
        j1 = j + 1
        fresh.append((n, j1))
        left, last1 = go(t.left, j1)
        j2 = last1 + 1
        fresh.append((n, j2))
        right, last2 = go(t.right, j2)
        return _prefix(rule, p(j), p(j1), p(j2)) + left + right, last2

    raw, _ = go(theta, j0)
    clauses = Theory(Clause(c) for c in raw)
    result = TranslationResult(clauses, fresh, start, tuple(xs), trace, theta)
    _certify_interpolation(result, theta)
    return result


def _certify_interpolation(r: TranslationResult, theta):
    if len(set(r.fresh)) != len(r.fresh) or r.root in r.fresh:
        raise BoundViolation("fresh indices not distinct")
    if len(r.fresh) > size(theta) - 1:
        raise BoundViolation("more fresh predicates than |theta| - 1")
    if size(r.clauses) > 27 * size(theta) * (1 + len(r.shared_vars)):
        raise BoundViolation("clause set larger than 27|theta|(1+|x|)")


def shared_vars(theta) -> tuple:
    return dedup(varseq(theta))


def clausify_positive(phi, offset: int = 0) -> TranslationResult:
    """Equisatisfiable clausal form of ``phi`` rooted at ``(offset, 0)``."""
    theta = simplify(phi)
    if isinstance(theta, Const):
        if theta.value == 1:
            return TranslationResult(Theory(), normal_form=theta)
        return TranslationResult(Theory([Clause()]), normal_form=theta)
    xs = shared_vars(theta)
    root = (offset, 0)
    body = interpolate(theta, xs, root)
    pin = Clause([eq(Atom(fresh_pred(*root), tuple(Var(x) for x in xs)), ONE)])
    result = TranslationResult(Theory([pin]) | body.clauses, [root] + body.fresh,
                               root, xs, body.trace, theta)
    if len(result.fresh) > 2 * size(phi):
        raise BoundViolation("more fresh predicates than 2|phi|")
    if size(result.clauses) > 232 * size(phi) ** 2:
        raise BoundViolation("clause set larger than 232|phi|^2")
    return result


@dataclass
class TheoryTranslation:
    clauses: Theory
    members: list

    @property
    def fresh(self) -> list:
        return [k for m in self.members for k in m.fresh]


def clausify_theory(formulas, offset: int = 0) -> TheoryTranslation:
    """Translate each member positively with its own offset block."""
    members = [clausify_positive(f, offset + k) for k, f in enumerate(formulas)]
    return TheoryTranslation(Theory(c for m in members for c in m.clauses), members)


def universal_closure(phi):
    out = phi
    for x in reversed(free_vars_ordered(phi)):
        out = Quant(FORALL, x, out)
    return out


@dataclass
class RefutationInput:
    clauses: Theory
    premises: TheoryTranslation
    goal: TranslationResult | None


def build_refutation_input(formulas, phi, offset: int = 0) -> RefutationInput:
    """Clauses that are unsatisfiable iff ``formulas`` entail ``phi``.

    Premises are translated from ``offset + 1`` on; the goal's closure is
    translated negatively at ``(offset, 0)``.
    """
    premises = clausify_theory(formulas, offset + 1)
    theta = simplify(phi)
    if isinstance(theta, Const):
        if theta.value == 1:
            return RefutationInput(Theory([Clause()]), premises, None)
        return RefutationInput(premises.clauses, premises, None)
    theta = universal_closure(theta)
    xs = shared_vars(theta)
    root = (offset, 0)
    body = interpolate(theta, xs, root)
    pin = Clause([lt(Atom(fresh_pred(*root), tuple(Var(x) for x in xs)), ONE)])
    goal = TranslationResult(Theory([pin]) | body.clauses, [root] + body.fresh,
                             root, xs, body.trace, theta)
    return RefutationInput(premises.clauses | goal.clauses, premises, goal)


# ------------------------------------------------------------ renaming

def _fresh_names(side) -> list:
    if isinstance(side, Quant):
        return _fresh_names(side.body)
    if isinstance(side, Atom) and fresh_index(side.pred) is not None:
        return [side.pred]
    return []


def _rename_side(side, m, bound=()):
    if isinstance(side, Quant):
        return Quant(side.q, side.var, _rename_side(side.body, m, (Var(side.var),)))
    if isinstance(side, Atom) and side.pred in m:
        return Atom(m[side.pred], bound)
    return side


def _rename_clause(c, m) -> Clause:
    return Clause(Literal(_rename_side(l.left, m), l.rel, _rename_side(l.right, m)) for l in c)


def _clause_fresh(c) -> set:
    return {p for l in c for side in (l.left, l.right) for p in _fresh_names(side)}


def find_renaming(s1, s2) -> dict | None:
    """A bijection of fresh predicates taking ``s1`` onto ``s2``, or None.

    Fresh atoms are compared without their argument tuples, which always
    hold the shared variables and whose order is a convention.
    """
    s1, s2 = Theory(s1), Theory(s2)
    if len(s1) != len(s2):
        return None
    f1 = list(dict.fromkeys(p for c in s1 for p in sorted(_clause_fresh(c))))
    f2 = {p for c in s2 for p in _clause_fresh(c)}
    if len(f1) != len(f2):
        return None
    target = {_rename_clause(c, {p: p for p in f2}) for c in s2}

    def profile(s, p):
        return sorted((len(c), len(_clause_fresh(c))) for c in s if p in _clause_fresh(c))

    prof2 = {q: profile(s2, q) for q in f2}
    cands = {p: [q for q in sorted(f2) if prof2[q] == profile(s1, p)] for p in f1}
    clauses = [(c, _clause_fresh(c)) for c in s1]

    def ok(m):
        for c, names in clauses:
            if names <= m.keys() and _rename_clause(c, m) not in target:
                return False
        return True

    def search(k, m, used):
        if k == len(f1):
            return dict(m)
        p = f1[k]
        for q in cands[p]:
            if q in used:
                continue
            m[p] = q
            used.add(q)
            if ok(m):
                found = search(k + 1, m, used)
                if found is not None:
                    return found
            del m[p]
            used.discard(q)
        return None

    return search(0, {}, set())
