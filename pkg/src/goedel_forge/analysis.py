"""Reachability, stability and cycle questions over fuzzy derivations.

All checkers return the least witness index, or None.
"""

from __future__ import annotations

from .fuzzy import Assignment, Derivation, FuzzyError, FuzzySet, RuleBase, step


def check_reachability(d: Derivation, targets) -> int | None:
    """Least k with e_k(X) = A for every (X, A) in ``targets``."""
    targets = list(targets)
    names = [x for x, _ in targets]
    if len(set(names)) != len(names):
        raise FuzzyError("target variables must be distinct")
    for x in names:
        if x not in d.base.variables:
            raise FuzzyError(f"unknown variable {x}")
    for k, e in enumerate(d.states):
        if all(e[x] == a for x, a in targets):
            return k
    return None


def find_k_cycle(d: Derivation, k: int) -> int | None:
    """Least kappa with kappa + k <= eta and e_kappa = e_(kappa+k)."""
    if k < 1:
        raise ValueError("cycle length must be at least 1")
    for kappa in range(len(d.states) - k):
        if d.states[kappa] == d.states[kappa + k]:
            return kappa
    return None


def check_stability(d: Derivation) -> int | None:
    return find_k_cycle(d, 1)


class CycleBoundExceeded(RuntimeError):
    pass


def detect_eventual_cycle(base: RuleBase, e0: Assignment, bound: int = 10 ** 6):
    """(prefix, period) of the ultimately periodic derivation from ``e0``.

    States are keyed by their membership tuples, so a dictionary hit is an
    exact match and the first repeat gives the least prefix and period.
    """
    seen = {}
    e = Assignment(e0)
    for t in range(bound + 1):
        key = e.key(base.variables)
        if key in seen:
            mu = seen[key]
            return mu, t - mu
        seen[key] = t
        e = step(base, e)
    raise CycleBoundExceeded(f"no repeat within {bound} steps")


def parse_targets(text: str, base: RuleBase) -> list:
    """``X2 = (1 0.5 1 0.5 1), X0 = low_t`` style target lists."""
    import re
    from fractions import Fraction
    out = []
    for m in re.finditer(r"(\w+)\s*=\s*(\([^()]*\)|\w+)", text):
        x, rhs = m.group(1), m.group(2)
        if rhs.startswith("("):
            vals = tuple(Fraction(v) for v in rhs[1:-1].split())
            if len(vals) != len(base.universe):
                raise FuzzyError(f"target for {x} does not cover the universe")
            out.append((x, FuzzySet(vals)))
        elif rhs in base.sets:
            out.append((x, base.set(rhs)))
        else:
            raise FuzzyError(f"unknown set {rhs}")
    if not out:
        raise FuzzyError("no targets given")
    return out
