"""Embedding of fuzzy rule bases and derivations into Goedel logic.

Naming: universe elements become rational numerals ``frac(s^m(z), s^n(z))``,
a fuzzy set ``A`` becomes the unary predicate ``_G_A``, a variable ``X`` the
binary predicate ``_H_X(time, element)`` and the output of rule ``r`` for
``X`` the predicate ``_H_X__r``.  Time is ``_s^k(_z)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

from .clausify import build_refutation_input
from .fuzzy import Assignment, FuzzyRule, RuleBase, derive, eval_rule
from .semantics import Interpretation, assignments, eval_truth
from .syntax import (AND, EQ, EXISTS, FORALL, IFF, IMP, OR, ONE, ZERO, App,
                     Atom, Bin, Clause, Const, Quant, Signature, Theory, Var,
                     eq, free_vars, nat_term, nat_value, rational_term,
                     rational_value, set_pred, substitute, var_pred)

TAU, X, Y = Var("tau"), Var("x"), Var("y")
Z = App("_z")


def s(t, k: int = 1):
    for _ in range(k):
        t = App("_s", (t,))
    return t


def conj(fs):
    """Right-nested conjunction; the empty conjunction is 1."""
    fs = list(fs)
    if not fs:
        return ONE
    return reduce(lambda acc, f: Bin(AND, f, acc), reversed(fs[:-1]), fs[-1])


def disj(fs):
    fs = list(fs)
    if not fs:
        return ZERO
    return reduce(lambda acc, f: Bin(OR, f, acc), reversed(fs[:-1]), fs[-1])


def atom(pred, *args):
    return Atom(pred, tuple(args))


def element_term(u):
    return rational_term(Fraction(u))


def universe_terms(base_or_universe) -> list:
    u = getattr(base_or_universe, "universe", base_or_universe)
    return [element_term(x) for x in u.elements]


def H(x, t, e, rule=None):
    return atom(var_pred(x, rule), t, e)


def G(name, e):
    return atom(set_pred(name), e)


# ---------------------------------------------------------------- T_D

def domain_axioms(sig: Signature | None = None) -> list:
    """Numeral axioms, closed-world families and the time/uni definitions."""
    sig = sig or Signature()
    x, y = Var("x"), Var("y")
    out = [
        atom("nat", Z),
        Bin(IFF, atom("nat", s(x)), atom("nat", x)),
        Bin(IFF, atom("rat", App("frac", (x, s(y)))), Bin(AND, atom("nat", x), atom("nat", y))),
        Bin(IFF, atom("rat", App("nfrac", (s(x), s(y)))), Bin(AND, atom("nat", x), atom("nat", y))),
    ]
    funcs = sorted(sig.funcs.items())

    def generic(f, n):
        return App(f, tuple(Var(f"d{k}") for k in range(n)))

    out += [Bin(EQ, atom("nat", generic(f, n)), ZERO)
            for f, n in funcs if f not in ("_z", "_s")]
    out += [Bin(EQ, atom("rat", generic(f, n)), ZERO)
            for f, n in funcs if f not in ("frac", "nfrac")]
    out += [Bin(IFF, atom("time", x), atom("nat", x)),
            Bin(IMP, atom("uni", x), atom("rat", x))]
    return out


def closed_world_value(pred: str, t, members=()) -> Fraction:
    """Truth value forced on a ground term by the domain axioms and S_U."""
    if pred in ("nat", "time"):
        return ONE.value if nat_value(t) is not None else ZERO.value
    if pred == "rat":
        return ONE.value if rational_value(t) is not None else ZERO.value
    if pred == "uni":
        return ONE.value if t in members else ZERO.value
    raise KeyError(pred)


# ---------------------------------------------------------------- S_U

@dataclass
class UniverseClauses:
    """The finite positive part of S_U plus an on-demand negative part."""
    members: tuple

    @property
    def explicit(self) -> Theory:
        return Theory(Clause([eq(atom("uni", t), ONE)]) for t in self.members)

    def query(self, t) -> Clause:
        v = ONE if t in self.members else ZERO
        return Clause([eq(atom("uni", t), v)])

    def instantiate(self, terms) -> Theory:
        return Theory(self.query(t) for t in terms)

    def __iter__(self):
        return iter(self.explicit)

    def __len__(self):
        return len(self.members)


def universe_clauses(u) -> UniverseClauses:
    return UniverseClauses(tuple(universe_terms(u)))


# ------------------------------------------------------------ S_A, S_e

def fuzzy_set_clauses(sets: dict, u) -> Theory:
    terms = universe_terms(u)
    return Theory(Clause([eq(G(name, t), Const(v))])
                  for name, a in sets.items() for t, v in zip(terms, a.values))


def assignment_clauses(e: Assignment, u, time=TAU, variables=None) -> Theory:
    terms = universe_terms(u)
    variables = variables or list(e)
    return Theory(Clause([eq(H(x, time, t), Const(v))])
                  for x in variables for t, v in zip(terms, e[x].values))


# ------------------------------------------------------------- T_B

def rule_formula(r: FuzzyRule):
    """time(tau) & uni(y) -> (H_X^r(s(tau),y) ~ (AND_i exists x (...)) & G_A(y))."""
    parts = [Quant(EXISTS, "x", Bin(AND, atom("uni", X), Bin(AND, H(xi, TAU, X), G(a, X))))
             for xi, a in r.antecedents]
    x, a = r.consequent
    body = Bin(AND, conj(parts), G(a, Y))
    return Bin(IMP, Bin(AND, atom("time", TAU), atom("uni", Y)),
               Bin(EQ, H(x, s(TAU), Y, r.label), body))


def aggregation_formula(base: RuleBase, x):
    outs = disj(H(x, s(TAU), Y, r.label) for r in base.producers(x))
    return Bin(IMP, Bin(AND, atom("time", TAU), atom("uni", Y)),
               Bin(EQ, H(x, s(TAU), Y), outs))


def base_theory(base: RuleBase) -> list:
    return ([rule_formula(r) for r in base.rules]
            + [aggregation_formula(base, x) for x in base.variables])


# --------------------------------------------------------- problems

@dataclass(frozen=True)
class Reachability:
    targets: tuple      # ((variable, set name), ...)


@dataclass(frozen=True)
class KCycle:
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("cycle length must be at least 1")


def Stability():
    return KCycle(1)


def problem_formula(p, variables=()):
    xs = Var("x")
    if isinstance(p, Reachability):
        names = [v for v, _ in p.targets]
        if len(set(names)) != len(names):
            raise ValueError("target variables must be distinct")
        body = [Quant(FORALL, "x", Bin(IMP, atom("uni", xs), Bin(EQ, H(v, TAU, xs), G(a, xs))))
                for v, a in p.targets]
    elif isinstance(p, KCycle):
        body = [Quant(FORALL, "x", Bin(IMP, atom("uni", xs),
                                       Bin(EQ, H(v, TAU, xs), H(v, s(TAU, p.k), xs))))
                for v in variables]
    else:
        raise TypeError(p)
    return Quant(EXISTS, "tau", Bin(AND, atom("time", TAU), conj(body)))


@dataclass
class DeductionProblem:
    domain: list            # T_D
    universe: UniverseClauses
    sets: Theory            # S_A
    rules: list             # T_B
    initial: Theory         # S_e0(tau/z)
    goal: object

    @property
    def formulas(self) -> list:
        return self.domain + self.rules

    @property
    def clauses(self) -> Theory:
        return self.universe.explicit | self.sets | self.initial


def with_targets(base: RuleBase, targets) -> tuple:
    """Name anonymous target sets so they can appear in S_A."""
    sets = dict(base.sets)
    named = []
    for x, a in targets:
        if isinstance(a, str):
            named.append((x, a))
            continue
        name = a.name or next((n for n, b in sets.items() if b == a), None)
        if name is None:
            name = f"target_{x}"
            sets[name] = a.renamed(name)
        named.append((x, name))
    return RuleBase(base.universe, sets, base.variables, list(base.rules), dict(base.init)), tuple(named)


def language(base: RuleBase) -> Signature:
    # the translation only introduces the reserved numeral symbols
    return Signature()


def build_deduction_problem(base: RuleBase, e0: Assignment, p) -> DeductionProblem:
    if isinstance(p, Reachability):
        base, targets = with_targets(base, p.targets)
        p = Reachability(targets)
    return DeductionProblem(
        domain=domain_axioms(language(base)),
        universe=universe_clauses(base),
        sets=fuzzy_set_clauses(base.sets, base),
        rules=base_theory(base),
        initial=assignment_clauses(e0, base, Z, base.variables),
        goal=problem_formula(p, base.variables),
    )


# -------------------------------------------------- canonical model

class CanonicalModel:
    """Finite-instantiation model read off a derivation.

    Time terms ``s^k(z)`` for ``k <= tmax`` plus the universe numerals form
    the quantifier domain; function symbols are free (terms denote
    themselves); ``_H_X`` at time ``k`` takes ``e_k(X)`` and ``_H_X__r`` the
    rule output computed from ``e_(k-1)``.  Anything else is 0.
    """

    def __init__(self, base: RuleBase, e0: Assignment, tmax: int):
        self.base, self.tmax = base, tmax
        self.derivation = derive(base, e0, tmax + 1)
        self.elements = universe_terms(base)
        self.times = [nat_term(k) for k in range(tmax + 1)]
        self.domain = tuple(self.times + self.elements)
        self.values: dict = {}
        for k, e in enumerate(self.derivation.states):
            tk = nat_term(k)
            for x in base.variables:
                for t, v in zip(self.elements, e[x].values):
                    self.values[(var_pred(x), tk, t)] = v
            if k:
                prev = self.derivation.states[k - 1]
                for r in base.rules:
                    out = eval_rule(r, prev, base)
                    for t, v in zip(self.elements, out.values):
                        self.values[(var_pred(r.out, r.label), tk, t)] = v
        for name, a in base.sets.items():
            for t, v in zip(self.elements, a.values):
                self.values[(set_pred(name), t)] = v
        self._premises = None

    def perturb(self, x, k: int, index: int, value):
        key = (var_pred(x), nat_term(k), self.elements[index])
        self.values[key] = Fraction(value)
        self._premises = None

    def interpretation(self) -> Interpretation:
        members = set(self.elements)
        values = self.values

        class Preds(dict):
            def get(self, name, default=None):
                if name in ("nat", "rat", "time", "uni"):
                    return lambda args: closed_world_value(name, args[0], members)
                return lambda args: values.get((name,) + tuple(args), 0)

        class Funcs(dict):
            def get(self, name, default=None):
                return lambda args: App(name, tuple(args))

        return Interpretation(self.domain, Funcs(), Preds())

    def holds(self, f) -> bool:
        i = self.interpretation()
        return all(eval_truth(f, i, e) == 1 for e in assignments(free_vars(f), self.domain))

    def satisfies(self, clauses) -> bool:
        from .semantics import check_model
        return check_model(self.interpretation(), clauses)

    def premises_hold(self) -> bool:
        if self._premises is None:
            b = self.base
            ok = all(self.holds(f) for f in domain_axioms(Signature()) + base_theory(b))
            ok = ok and self.satisfies(universe_clauses(b).instantiate(self.domain))
            ok = ok and self.satisfies(fuzzy_set_clauses(b.sets, b))
            ok = ok and self.satisfies(assignment_clauses(self.derivation[0], b, Z, b.variables))
            self._premises = ok
        return self._premises

    def state_holds(self, eta: int) -> bool:
        e = self.derivation[eta]
        return self.satisfies(assignment_clauses(e, self.base, nat_term(eta), self.base.variables))


def derivation_consequence_check(base: RuleBase, e0: Assignment, eta,
                                 tmax: int, perturb=None) -> bool:
    """Canonical model satisfies the premises and S_(e_eta) at time eta.

    ``eta`` is one step or an iterable of steps; the model and its premise
    check are shared between them.  ``perturb`` is an optional
    ``(variable, time, element index, value)`` applied to the model before
    checking.
    """
    etas = [eta] if isinstance(eta, int) else list(eta)
    if not all(0 <= k <= tmax for k in etas):
        raise ValueError("need 0 <= eta <= tmax")
    m = CanonicalModel(base, e0, tmax)
    if perturb is not None:
        m.perturb(*perturb)
    # the expected state is the unperturbed one, so the check can fail
    return m.premises_hold() and all(m.state_holds(k) for k in etas)


# ------------------------------------------------------- reduction

class InstantiationTooSmall(ValueError):
    pass


def expand(f, domain):
    """Replace quantifiers by finite max/min over ``domain``."""
    if isinstance(f, Quant):
        body = [expand(substitute(f.body, {f.var: d}, strict=False), domain) for d in domain]
        return (disj if f.q == EXISTS else conj)(body)
    if isinstance(f, Bin):
        return Bin(f.op, expand(f.left, domain), expand(f.right, domain))
    return f


def ground_instances(f, bindings: dict):
    """All instances of ``f`` with free variables drawn from ``bindings``."""
    fv = sorted(free_vars(f))
    pools = [bindings[v] for v in fv]
    import itertools
    for combo in itertools.product(*pools):
        yield substitute(f, dict(zip(fv, combo)), strict=False)


@dataclass
class Reduction:
    symbolic: Theory
    times: int
    notes: list = field(default_factory=list)
    build_ground: object = field(default=None, repr=False)

    @cached_property
    def ground(self) -> Theory:
        """The finite instantiation, built on first use."""
        return self.build_ground()


def reduce_to_unsat(base: RuleBase, e0: Assignment, p, offset: int = 0,
                    horizon: int = 2) -> Reduction:
    """Clausal refutation input for a problem, plus a finite instantiation.

    The symbolic theory is the positive translation of the premise
    formulas from ``offset + 1`` on, the unit clauses of the universe, sets
    and initial state, then the negative goal block rooted at
    ``(offset, 0)``.  The ground theory instantiates time over
    ``z .. s^horizon(z)`` and elements over the universe numerals, with
    closed-world facts for ``time`` and ``uni``.
    """
    prob = build_deduction_problem(base, e0, p)
    if isinstance(p, Reachability):
        base, _ = with_targets(base, p.targets)
    k = p.k if isinstance(p, KCycle) else 0
    if horizon < max(k, 1):
        raise InstantiationTooSmall(f"horizon {horizon} cannot mention s^{max(k, 1)}(tau)")
    symbolic = build_refutation_input(prob.formulas, prob.goal, offset)
    sym = prob.clauses | symbolic.clauses

    def ground():
        elements = universe_terms(base)
        times = [nat_term(j) for j in range(horizon + 1)]
        # premises talk about s(tau); the goal about s^k(tau)
        pools = {"tau": times[:-1], "y": elements}
        premises = [g for f in prob.rules for g in ground_instances(f, pools)]
        premises = [expand(f, elements) for f in premises]
        body = prob.goal.body
        g_inst = disj(expand(substitute(body, {"tau": t}, strict=False), elements)
                      for t in times[:len(times) - k])
        ground_in = build_refutation_input(premises, g_inst, offset)
        facts = Theory(Clause([eq(atom("time", t), ONE)]) for t in times)
        facts = facts | Theory(Clause([eq(atom("uni", t), ONE)]) for t in elements)
        return facts | prob.sets | prob.initial | ground_in.clauses

    notes = [f"time instantiated over s^0(z) .. s^{horizon}(z)",
             "elements instantiated over the universe numerals",
             "closed world: uni(t) ~ 0 for every ground term t outside the universe"]
    return Reduction(sym, horizon, notes, ground)
