from hypothesis import given, settings

from goedel_forge.parser import parse_formula
from goedel_forge.printer import format_formula
from goedel_forge.semantics import eval_truth
from goedel_forge.simplify import normal_form_violations, simplify
from goedel_forge.syntax import Const, Delta, Not, constants_of, size, subformulas

from strategies import env, formulas, interpretations


def s(text):
    return format_formula(simplify(parse_formula(text)))


def test_negation_becomes_implication():
    assert s("!p(x)") == "p(x) -> 0"
    assert s("!!p") == "(p -> 0) -> 0"


def test_delta_becomes_equality_with_one():
    assert s("D p") == "p ~ 1"


def test_constant_folding():
    assert s("0.3 & 0.5") == "0.3"
    assert s("0.3 | 0.5") == "0.5"
    assert s("0.5 -> 0.3") == "0.3"
    assert s("0.3 -> 0.5") == "1"
    assert s("0.3 < 0.5") == "1"
    assert s("0.5 ~ 0.5") == "1"
    assert s("p & 1") == "p"
    assert s("p | 1") == "1"
    assert s("0 -> p") == "1"
    assert s("p < 0") == "0"
    assert s("1 < p") == "0"
    assert s("p <-> 0") == "p -> 0"
    assert s("forall x 0.3") == "0.3"


def test_idempotence_folds():
    assert s("p & p") == "p"
    assert s("q(x) -> q(x)") == "1"
    assert s("q(x) < q(x)") == "0"


def test_keeps_nontrivial_constants():
    assert s("p ~ 0.3") == "p ~ 0.3"
    assert s("p -> 0") == "p -> 0"


@settings(max_examples=400, deadline=None)
@given(formulas(), interpretations(), env)
def test_simplify_is_equivalent(f, i, e):
    assert eval_truth(simplify(f), i, e) == eval_truth(f, i, e)


@settings(max_examples=400, deadline=None)
@given(formulas())
def test_normal_form_and_size(f):
    g = simplify(f)
    assert normal_form_violations(g) == []
    assert not any(isinstance(h, (Not, Delta)) for h in subformulas(g))
    assert size(g) <= 2 * size(f)
    # no new constants besides 0 and 1
    assert constants_of(g) - {0, 1} <= constants_of(f) - {0, 1}
    assert simplify(g) == g


def test_folding_is_syntactic_only():
    # p -> p | q is valid but not folded; only local identities are used
    assert not isinstance(simplify(parse_formula("p -> p | q")), Const)
    assert simplify(parse_formula("(p -> p) & 0.5")) == Const(0.5)
