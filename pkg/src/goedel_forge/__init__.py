"""Goedel logic with truth constants: clausification, fuzzy derivations and
their logical translation."""

from .syntax import (Atom, Bin, Clause, Const, Delta, Literal, Not, Quant,
                     Signature, Theory, Var, App)
from .parser import parse_clause, parse_formula, parse_formulas, parse_theory
from .printer import format_clause, format_formula, format_theory
from .simplify import simplify
from .clausify import (build_refutation_input, clausify_positive,
                       clausify_theory, interpolate)
from .fuzzy import derive, parse_rule_base, step
from .analysis import (check_reachability, check_stability,
                       detect_eventual_cycle, find_k_cycle)

__version__ = "0.1.0"

__all__ = [
    "Atom", "Bin", "Clause", "Const", "Delta", "Literal", "Not", "Quant",
    "Signature", "Theory", "Var", "App",
    "parse_clause", "parse_formula", "parse_formulas", "parse_theory",
    "format_clause", "format_formula", "format_theory", "simplify",
    "build_refutation_input", "clausify_positive", "clausify_theory", "interpolate",
    "derive", "parse_rule_base", "step",
    "check_reachability", "check_stability", "detect_eventual_cycle", "find_k_cycle",
]
