import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from goedel_forge import bridge
from goedel_forge.clausify import (NotNormalForm, build_refutation_input,
                                   clausify_positive, clausify_theory,
                                   find_renaming, interpolate, rule_for)
from goedel_forge.parser import parse_formula, parse_theory
from goedel_forge.printer import format_theory
from goedel_forge.semantics import (Interpretation, check_model, eval_truth,
                                    formula_sat, grid, ground_sat_oracle)
from goedel_forge.syntax import (Atom, Clause, Const, atoms_of, constants_of,
                                 eq, fresh_index, fresh_pred, size)

from strategies import formulas, ground_formulas

WORKED = "forall x ((exists y (q(x,y,z) < 1)) -> (forall z r(x,y,z)) ~ 0.3)"


def test_worked_example_matches_golden(golden):
    r = clausify_positive(parse_formula(WORKED))
    expected = parse_theory(golden("worked_example.oct"))
    assert len(r.clauses) == len(expected) == 13
    assert find_renaming(r.clauses, expected) is not None


def test_worked_example_trace():
    r = clausify_positive(parse_formula(WORKED))
    assert [t.rule for t in r.trace] == ["forall", "imp", "exists", "lt-one", "eq", "forall"]
    assert [t.number for t in r.trace] == [30, 18, 31, 29, 20, 30]
    assert str(r.trace[3]).startswith("rule 29 (lt-one) at _p0_3:")


def test_worked_example_indices_are_preorder():
    r = clausify_positive(parse_formula(WORKED))
    # forall, imp, exists, lt, q, eq, forall, r, 0.3
    assert r.fresh == [(0, j) for j in range(9)]
    assert r.shared_vars == ("x", "y", "z")


@pytest.mark.parametrize("label,golden_file,count", [
    ("R1", "phi1_clauses.oct", 21),
    ("R7", "phi7_clauses.oct", 31),
])
def test_rule_formula_clauses_match_golden(thermo, golden, label, golden_file, count):
    rule = next(r for r in thermo.rules if r.label == label)
    r = clausify_positive(bridge.rule_formula(rule), int(label[1:]))
    expected = parse_theory(golden(golden_file))
    assert len(r.clauses) == len(expected) == count
    assert find_renaming(r.clauses, expected) is not None


def test_find_renaming_rejects_different_theories(golden):
    r = clausify_positive(parse_formula(WORKED))
    changed = parse_theory(golden("worked_example.oct").replace("~ 0.3", "~ 0.4"))
    assert find_renaming(r.clauses, changed) is None
    shorter = parse_theory("\n".join(golden("worked_example.oct").splitlines()[:-1]))
    assert find_renaming(r.clauses, shorter) is None


@pytest.mark.parametrize("text,rule", [
    ("p & q", "and"), ("p | q", "or"), ("p -> q", "imp"), ("p <-> q", "iff"),
    ("p ~ q", "eq"), ("p < q", "lt"), ("p -> 0", "imp-zero"), ("p ~ 0", "eq-zero"),
    ("0 ~ p", "eq-zero"), ("p ~ 1", "eq-one"), ("0 < p", "zero-lt"), ("p < 1", "lt-one"),
    ("p ~ 0.3", "eq"), ("0.3 < p", "lt"), ("p -> 0.3", "imp"),
])
def test_rule_selection_and_soundness(text, rule):
    """The clauses force the root to equal the subformula's value, exactly."""
    theta = parse_formula(text)
    assert rule_for(theta) == rule
    body = interpolate(theta, (), (0, 0)).clauses
    root = Atom(fresh_pred(0, 0))
    atoms = atoms_of(theta)
    pts = grid(constants_of(theta) | {Fraction(1, 2)}, 1)
    for vals in itertools.product(pts, repeat=len(atoms)):
        i = Interpretation((), preds={a.pred: {(): v} for a, v in zip(atoms, vals)})
        want = eval_truth(theta, i)
        for rv in pts:
            fixed = [Clause([eq(a, Const(v))]) for a, v in zip(atoms, vals)]
            fixed.append(Clause([eq(root, Const(rv))]))
            sat = ground_sat_oracle(list(body) + fixed).sat
            assert sat == (rv == want), (text, vals, rv)


@pytest.mark.parametrize("q,value", [("forall", Fraction(3, 10)), ("exists", Fraction(1, 2))])
def test_quantifier_rules(q, value):
    r = clausify_positive(parse_formula(f"{q} x q(x) ~ {value}"))
    assert r.shared_vars == ("x",)
    assert [t.rule for t in r.trace] == ["eq", q]
    qv = {(0,): Fraction(1, 2), (1,): Fraction(3, 10)}

    def model(quant_value):
        # preorder: 0 the equation, 1 the quantifier, 2 q(x), 3 the constant
        const = lambda v: {(u,): v for u in (0, 1)}
        return Interpretation((0, 1), preds={
            "q": qv, "_p0_0": const(1), "_p0_1": const(quant_value),
            "_p0_2": qv, "_p0_3": const(value)})

    assert check_model(model(value), r.clauses)
    other = Fraction(1, 2) if q == "forall" else Fraction(3, 10)
    assert not check_model(model(other), r.clauses)


def test_constant_inputs():
    assert clausify_positive(parse_formula("p -> p")).status == "valid"
    assert len(clausify_positive(parse_formula("p -> p")).clauses) == 0
    r = clausify_positive(parse_formula("0.3 & 0.5"))
    assert r.status == "unsat" and Clause() in r.clauses
    assert clausify_positive(parse_formula("p")).status == "translated"


def test_interpolate_preconditions():
    with pytest.raises(NotNormalForm):
        interpolate(Const(1), (), (0, 0))
    with pytest.raises(NotNormalForm):
        interpolate(parse_formula("!p"), (), (0, 0))
    with pytest.raises(ValueError):
        interpolate(parse_formula("q(x)"), (), (0, 0))


def test_positive_pin_and_offset():
    r = clausify_positive(parse_formula("q(x) & p"), 4)
    first = next(iter(r.clauses))
    assert format_theory([first]).strip() == "_p4_0(x) ~ 1"
    assert all(i == 4 for i, _ in r.fresh)


def test_theory_offsets_per_member():
    t = clausify_theory([parse_formula("p & q"), parse_formula("q | p"), parse_formula("p -> q")], 2)
    assert [m.root for m in t.members] == [(2, 0), (3, 0), (4, 0)]
    assert len(set(t.fresh)) == len(t.fresh)


def test_refutation_input_layout():
    r = build_refutation_input([parse_formula("p -> q(x)")], parse_formula("q(x) | p"), 0)
    first = next(iter(r.goal.clauses))
    assert format_theory([first]).strip() == "_p0_0(x) < 1"
    assert r.goal.normal_form == parse_formula("forall x (q(x) | p)")
    assert all(i >= 1 for i, _ in r.premises.fresh)
    assert all(i == 0 for i, _ in r.goal.fresh)


def test_refutation_input_constant_goals():
    prem = [parse_formula("p & q")]
    assert Clause() in build_refutation_input(prem, parse_formula("p -> p"), 0).clauses
    r = build_refutation_input(prem, parse_formula("0.3"), 0)
    assert r.goal is None and r.clauses == r.premises.clauses


def test_translation_is_deterministic():
    f = parse_formula(WORKED)
    assert format_theory(clausify_positive(f).clauses) == format_theory(clausify_positive(f).clauses)


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_size_bounds(f):
    r = clausify_positive(f, 3)
    if r.root is None:
        return
    theta = r.normal_form
    assert size(theta) <= 2 * size(f)
    inner = r.fresh[1:]
    assert len(inner) <= size(theta) - 1
    body = [c for c in r.clauses if c != next(iter(r.clauses))]
    assert sum(size(c) for c in body) <= 27 * size(theta) * (1 + len(r.shared_vars))
    assert len(r.fresh) <= 2 * size(f)
    assert all(fresh_index(fresh_pred(*k)) == k and k[0] == 3 for k in r.fresh)
    assert constants_of(r.clauses) - {0, 1} == constants_of(theta) - {0, 1}


@settings(max_examples=150, deadline=None)
@given(ground_formulas())
def test_equisatisfiable_on_ground_formulas(f):
    assert ground_sat_oracle(clausify_positive(f).clauses).sat == formula_sat(f)
