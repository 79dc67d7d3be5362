"""Hypothesis strategies for formulas and truth values."""

from fractions import Fraction

from hypothesis import strategies as st

from goedel_forge.syntax import (BINARY_OPS, EXISTS, FORALL, App, Atom, Bin,
                                 Delta, Not, Quant, Var, const, size)

VARS = ("x", "y", "z")
CONSTS = (0, Fraction(3, 10), Fraction(1, 2), 1)

truth = st.fractions(min_value=0, max_value=1, max_denominator=20)
# values biased towards the interesting ones: ends and coincidences
truth_edges = st.one_of(st.sampled_from([Fraction(0), Fraction(1), Fraction(1, 2)]), truth)

terms = st.recursive(
    st.sampled_from([Var(v) for v in VARS]) | st.just(App("a")),
    lambda t: st.builds(lambda a: App("f", (a,)), t),
    max_leaves=2,
)

# one fixed arity per predicate name keeps formulas printable and parseable
first_order_atoms = st.one_of(
    st.just(Atom("p")),
    st.builds(lambda t: Atom("q", (t,)), terms),
    st.builds(lambda a, b: Atom("r", (a, b)), terms, terms),
)

constants = st.sampled_from(CONSTS).map(const)


def _extend(children, quantifiers=True):
    options = [
        st.builds(Not, children),
        st.builds(Delta, children),
        st.builds(Bin, st.sampled_from(BINARY_OPS), children, children),
    ]
    if quantifiers:
        options.append(st.builds(Quant, st.sampled_from([FORALL, EXISTS]),
                                 st.sampled_from(VARS), children))
    return st.one_of(options)


def formulas(max_size=60, max_leaves=14):
    return st.recursive(first_order_atoms | constants, _extend,
                        max_leaves=max_leaves).filter(lambda f: size(f) <= max_size)


ground_atoms = st.sampled_from([Atom("p"), Atom("q"), Atom("r")])


def ground_formulas(max_leaves=6):
    """Quantifier-free, at most three nullary atoms, constants from CONSTS."""
    return st.recursive(ground_atoms | constants,
                        lambda ch: _extend(ch, quantifiers=False),
                        max_leaves=max_leaves)


@st.composite
def interpretations(draw, n=2):
    """Finite interpretations over {0..n-1} for the symbols used above."""
    from goedel_forge.semantics import Interpretation
    dom = tuple(range(n))
    val = st.sampled_from(CONSTS + (Fraction(1, 3), Fraction(7, 10)))
    f = {(u,): draw(st.sampled_from(dom)) for u in dom}
    preds = {
        "p": {(): draw(val)},
        "q": {(u,): draw(val) for u in dom},
        "r": {(u, v): draw(val) for u in dom for v in dom},
    }
    return Interpretation(dom, {"f": f, "a": {(): draw(st.sampled_from(dom))}}, preds)


env = st.fixed_dictionaries({v: st.integers(0, 1) for v in VARS})


memberships = st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)])


@st.composite
def rule_bases(draw):
    """Small random rule bases over at most three elements."""
    from goedel_forge.fuzzy import FuzzyRule, FuzzySet, RuleBase, UniverseSpec
    n = draw(st.integers(1, 3))
    names = ["a", "b", "c"]
    sets = {s: FuzzySet(tuple(draw(memberships) for _ in range(n)), s) for s in names}
    variables = ("X", "Y")
    rules = []
    for k in range(draw(st.integers(1, 4))):
        ante = draw(st.lists(st.tuples(st.sampled_from(variables), st.sampled_from(names)),
                             min_size=1, max_size=2))
        rules.append(FuzzyRule(f"R{k}", tuple(ante),
                               (draw(st.sampled_from(variables)), draw(st.sampled_from(names)))))
    init = {x: draw(st.sampled_from(names)) for x in variables}
    return RuleBase(UniverseSpec(tuple(range(n))), sets, variables, rules, init)
