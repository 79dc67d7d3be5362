"""Mamdani-Assilian fuzzy sets, rules and multi-step derivations.

Memberships are exact fractions indexed by position in the universe.  A
rule fires at the minimum over its antecedents of height(e(X) & A), and its
output is the consequent set cut at that degree; the outputs for one
variable are joined by pointwise max (the empty join is constant 0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .printer import format_value


class FuzzyError(ValueError):
    pass


@dataclass(frozen=True)
class UniverseSpec:
    elements: tuple

    def __post_init__(self):
        els = tuple(Fraction(u) for u in self.elements)
        if not els:
            raise FuzzyError("empty universe")
        if len(set(els)) != len(els):
            raise FuzzyError("duplicate universe element")
        object.__setattr__(self, "elements", els)

    def __len__(self):
        return len(self.elements)

    def index(self, u) -> int:
        try:
            return self.elements.index(Fraction(u))
        except ValueError:
            raise FuzzyError(f"{u} is not in the universe")


@dataclass(frozen=True)
class FuzzySet:
    """Membership vector over a universe; ``name`` is informational only."""
    values: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        for v in vals:
            if not 0 <= v <= 1:
                raise FuzzyError(f"membership {v} outside [0,1]")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def renamed(self, name: str) -> "FuzzySet":
        return FuzzySet(self.values, name)

    def __str__(self):
        return "(" + " ".join(format_value(v) for v in self.values) + ")"


def constant(c, n: int) -> FuzzySet:
    return FuzzySet((Fraction(c),) * n)


def _same(a: FuzzySet, b: FuzzySet):
    if len(a) != len(b):
        raise FuzzyError("fuzzy sets over different universes")


def height(a: FuzzySet) -> Fraction:
    return max(a.values)


def cut(c, a: FuzzySet) -> FuzzySet:
    c = Fraction(c)
    return FuzzySet(tuple(min(c, v) for v in a.values))


def union(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    _same(a, b)
    return FuzzySet(tuple(map(max, a.values, b.values)))


def intersect(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    _same(a, b)
    return FuzzySet(tuple(map(min, a.values, b.values)))


@dataclass(frozen=True)
class FuzzyRule:
    label: str
    antecedents: tuple      # ((variable, set name), ...)
    consequent: tuple       # (variable, set name)

    def __post_init__(self):
        if not self.antecedents:
            raise FuzzyError(f"rule {self.label} has no antecedent")
        object.__setattr__(self, "antecedents", tuple(tuple(a) for a in self.antecedents))
        object.__setattr__(self, "consequent", tuple(self.consequent))

    @property
    def out(self) -> str:
        return self.consequent[0]

    def __str__(self):
        ante = " and ".join(f"{x} is {a}" for x, a in self.antecedents)
        return f"rule {self.label}: if {ante} then {self.consequent[0]} is {self.consequent[1]};"


@dataclass
class RuleBase:
    universe: UniverseSpec
    sets: dict              # name -> FuzzySet
    variables: tuple
    rules: list
    init: dict = field(default_factory=dict)   # variable -> set name

    def __post_init__(self):
        self.variables = tuple(self.variables)
        if len(set(self.variables)) != len(self.variables):
            raise FuzzyError("duplicate variable")
        for name, s in self.sets.items():
            if len(s) != len(self.universe):
                raise FuzzyError(f"set {name} does not cover the universe")
        if not self.rules:
            raise FuzzyError("a rule base needs at least one rule")
        labels = [r.label for r in self.rules]
        if len(set(labels)) != len(labels):
            raise FuzzyError("duplicate rule label")
        for r in self.rules:
            for x, a in r.antecedents + (r.consequent,):
                self._check(x, a, r.label)
        for x, a in self.init.items():
            self._check(x, a, "init")

    def _check(self, x, a, where):
        if x not in self.variables:
            raise FuzzyError(f"{where}: undeclared variable {x}")
        if a not in self.sets:
            raise FuzzyError(f"{where}: undeclared set {a}")

    def set(self, name: str) -> FuzzySet:
        return self.sets[name].renamed(name)

    def producers(self, x) -> list:
        return [r for r in self.rules if r.out == x]

    def without(self, *labels) -> "RuleBase":
        drop = set(labels)
        unknown = drop - {r.label for r in self.rules}
        if unknown:
            raise FuzzyError(f"unknown rule labels {sorted(unknown)}")
        return RuleBase(self.universe, dict(self.sets), self.variables,
                        [r for r in self.rules if r.label not in drop], dict(self.init))

    def initial(self) -> "Assignment":
        missing = [x for x in self.variables if x not in self.init]
        if missing:
            raise FuzzyError(f"no initial set for {', '.join(missing)}")
        return Assignment({x: self.set(self.init[x]) for x in self.variables})

    def values(self) -> set:
        return {v for s in self.sets.values() for v in s.values}


class Assignment(dict):
    """Variable -> FuzzySet; equality is exact pointwise."""

    def key(self, variables) -> tuple:
        return tuple(self[x].values for x in variables)


def eval_rule(r: FuzzyRule, e: Assignment, base: RuleBase) -> FuzzySet:
    degree = min(height(intersect(e[x], base.sets[a])) for x, a in r.antecedents)
    return cut(degree, base.sets[r.consequent[1]])


def eval_var(base: RuleBase, e: Assignment, x) -> FuzzySet:
    out = constant(0, len(base.universe))
    for r in base.producers(x):
        out = union(out, eval_rule(r, e, base))
    return out


def step(base: RuleBase, e: Assignment) -> Assignment:
    return Assignment({x: eval_var(base, e, x) for x in base.variables})


@dataclass
class Derivation:
    base: RuleBase
    states: list

    @property
    def eta(self) -> int:
        return len(self.states) - 1

    def __getitem__(self, k) -> Assignment:
        return self.states[k]

    def __len__(self):
        return len(self.states)


def derive(base: RuleBase, e0: Assignment, horizon: int) -> Derivation:
    if horizon < 0:
        raise FuzzyError("horizon must be non-negative")
    # 0 comes from the empty join of a variable nobody produces
    allowed = base.values() | {v for s in e0.values() for v in s.values} | {Fraction(0)}
    states = [Assignment(e0)]
    for _ in range(horizon):
        nxt = step(base, states[-1])
        # everything is min/max, so no new membership value can appear
        assert all(v in allowed for s in nxt.values() for v in s.values)
        states.append(nxt)
    return Derivation(base, states)


def format_state(e: Assignment, variables) -> str:
    return "(" + " ".join(str(e[x]) for x in variables) + ")"


def format_table(d: Derivation) -> str:
    """One row per time step: ``k: ((X0 values) (X1 values) ...)``."""
    return "".join(f"{k}: {format_state(e, d.base.variables)}\n"
                   for k, e in enumerate(d.states))


def parse_table(text: str, variables) -> list:
    """Inverse of :func:`format_table`; returns a list of assignments."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        _, body = line.split(":", 1)
        groups = re.findall(r"\(([^()]*)\)", body)
        if len(groups) != len(variables):
            raise FuzzyError(f"row has {len(groups)} sets, expected {len(variables)}")
        rows.append(Assignment({x: FuzzySet(tuple(Fraction(v) for v in g.split()))
                                for x, g in zip(variables, groups)}))
    return rows


# rule base DSL

_MEMBER = re.compile(r"^(\([^()]*\)|[^/()]+)/(\([^()]*\)|[^/()]+)$")
_RULE = re.compile(r"^rule\s+(\w+)\s*:\s*if\s+(.+?)\s+then\s+(\w+)\s+is\s+(\w+)$", re.S)


def _num(text: str) -> Fraction:
    try:
        return Fraction(text.strip("() "))
    except (ValueError, ZeroDivisionError):
        raise FuzzyError(f"bad number {text!r}")


def parse_rule_base(text: str) -> RuleBase:
    """Read the ``.frb`` rule base language.

    Statements end with ``;`` and ``#`` starts a comment::

        universe 0 1 2 3 4;
        set low_t = 1/0 0.5/1 0/2 0/3 0/4;     # value/element
        var X0 X1;
        rule R1: if X0 is low_t then X1 is high_d;
        init X0 = low_t;

    Fractional values or elements may be parenthesised, as in ``(1/3)/2``.
    """
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    universe = None
    sets, variables, rules, init = {}, [], [], {}
    pending = []
    for stmt in body.split(";"):
        stmt = " ".join(stmt.split())
        if not stmt:
            continue
        word = stmt.split()[0]
        if word == "universe":
            if universe is not None:
                raise FuzzyError("universe declared twice")
            universe = UniverseSpec(tuple(_num(t) for t in stmt.split()[1:]))
        elif word == "set":
            name, _, members = stmt[3:].partition("=")
            name = name.strip()
            if not name.isidentifier() or name in sets:
                raise FuzzyError(f"bad or duplicate set name {name!r}")
            pairs = []
            for tok in members.split():
                m = _MEMBER.match(tok)
                if not m:
                    raise FuzzyError(f"bad membership {tok!r} in set {name}")
                pairs.append((_num(m.group(2)), _num(m.group(1))))
            pending.append((name, pairs))
            sets[name] = None
        elif word == "var":
            variables.extend(stmt.split()[1:])
        elif word == "rule":
            m = _RULE.match(stmt)
            if not m:
                raise FuzzyError(f"bad rule {stmt!r}")
            ante = []
            for part in re.split(r"\s+and\s+", m.group(2)):
                xa = part.split()
                if len(xa) != 3 or xa[1] != "is":
                    raise FuzzyError(f"bad antecedent {part!r}")
                ante.append((xa[0], xa[2]))
            rules.append(FuzzyRule(m.group(1), tuple(ante), (m.group(3), m.group(4))))
        elif word == "init":
            for item in stmt[4:].split(","):
                x, _, a = item.partition("=")
                init[x.strip()] = a.strip()
        else:
            raise FuzzyError(f"unknown statement {word!r}")
    if universe is None:
        raise FuzzyError("missing universe declaration")
    for name, pairs in pending:
        vals = [None] * len(universe)
        for u, v in pairs:
            k = universe.index(u)
            if vals[k] is not None:
                raise FuzzyError(f"set {name} gives element {u} twice")
            vals[k] = v
        if None in vals:
            raise FuzzyError(f"set {name} is not total over the universe")
        sets[name] = FuzzySet(tuple(vals), name)
    return RuleBase(universe, sets, tuple(variables), rules, init)


def format_rule_base(base: RuleBase) -> str:
    u = base.universe.elements
    lines = ["universe " + " ".join(format_value(x) for x in u) + ";"]
    for name, s in base.sets.items():
        members = " ".join(f"{_fmt(v)}/{_fmt(x)}" for v, x in zip(s.values, u))
        lines.append(f"set {name} = {members};")
    lines.append("var " + " ".join(base.variables) + ";")
    lines.extend(str(r) for r in base.rules)
    if base.init:
        lines.append("init " + ", ".join(f"{x} = {a}" for x, a in base.init.items()) + ";")
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    text = format_value(v)
    return f"({text})" if "/" in text else text
