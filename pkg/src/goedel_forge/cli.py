"""Command-line front end.

Exit codes: 0 on success, 1 when an analysis finds nothing or an
``--expect`` comparison fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from pathlib import Path

from . import analysis, bridge, fuzzy
from .clausify import build_refutation_input, clausify_positive
from .parser import ParseError, parse_formulas, parse_theory
from .printer import format_formula, format_theory
from .semantics import ground_sat_by_enumeration, ground_sat_oracle
from .simplify import simplify
from .syntax import SignatureError


class InputError(Exception):
    pass


def read_text(arg: str) -> str:
    """Literal text, ``-`` for stdin, or a path when one exists."""
    if arg == "-":
        return sys.stdin.read()
    p = Path(arg)
    if p.suffix in (".gf", ".oct", ".frb", ".txt") or p.exists():
        if not p.exists():
            raise InputError(f"no such file: {arg}")
        return p.read_text()
    return arg


def load_base(arg: str) -> fuzzy.RuleBase:
    p = Path(arg)
    if not p.exists():
        data = resources.files("goedel_forge") / "data" / p.name
        if not data.is_file():
            raise InputError(f"no such rule base: {arg}")
        return fuzzy.parse_rule_base(data.read_text())
    return fuzzy.parse_rule_base(p.read_text())


def base_from(args) -> fuzzy.RuleBase:
    base = load_base(args.base)
    if getattr(args, "without", None):
        base = base.without(*[r.strip() for r in args.without.split(",") if r.strip()])
    return base


# ------------------------------------------------------------ commands

def cmd_parse(args, out):
    text = read_text(args.input)
    if args.clauses:
        out.append(format_theory(parse_theory(text)).rstrip("\n"))
    else:
        out.extend(format_formula(f) for f in parse_formulas(text))


def cmd_simplify(args, out):
    out.extend(format_formula(simplify(f)) for f in parse_formulas(read_text(args.input)))


def cmd_clausify(args, out):
    formulas = parse_formulas(read_text(args.input))
    if args.negative:
        *premises, goal = formulas
        r = build_refutation_input(premises, goal, args.offset)
        if args.trace and r.goal is not None:
            out.extend(f"# {t}" for t in r.goal.trace)
        out.append(format_theory(r.clauses).rstrip("\n"))
        return
    for k, f in enumerate(formulas):
        r = clausify_positive(f, args.offset + k)
        if args.trace:
            out.extend(f"# {t}" for t in r.trace)
        text = format_theory(r.clauses).rstrip("\n")
        if text:
            out.append(text)


def cmd_derive(args, out):
    base = base_from(args)
    d = fuzzy.derive(base, base.initial(), args.steps)
    if args.table or not args.report:
        out.append(fuzzy.format_table(d).rstrip("\n"))
    if args.report:
        from .plots import write_report
        for p in write_report(d, args.report):
            out.append(f"# wrote {p}")


def cmd_analyze(args, out):
    base = base_from(args)
    e0 = base.initial()
    if args.auto:
        mu, lam = analysis.detect_eventual_cycle(base, e0)
        out.append(f"prefix = {mu}, period = {lam}")
        return 0
    d = fuzzy.derive(base, e0, args.steps)
    if args.stability:
        k = analysis.check_stability(d)
    elif args.cycle is not None:
        k = analysis.find_k_cycle(d, args.cycle)
    else:
        k = analysis.check_reachability(d, analysis.parse_targets(read_text(args.reach), base))
    out.append("none" if k is None else f"kappa = {k}")
    return 1 if k is None else 0


def _problem(text: str, base):
    if text == "stability":
        return bridge.Stability()
    if text.startswith("cycle:"):
        return bridge.KCycle(int(text[6:]))
    if text.startswith("reach:"):
        targets = analysis.parse_targets(read_text(text[6:]), base)
        return bridge.Reachability(tuple(targets))
    raise InputError(f"unknown problem {text!r}")


def cmd_translate(args, out):
    base = base_from(args)
    what = args.what
    if what in ("domain", "all"):
        out.append("# domain axioms")
        out.extend(format_formula(f) + ";" for f in bridge.domain_axioms())
    if what in ("universe", "all"):
        out.append("# universe")
        out.append(format_theory(bridge.universe_clauses(base).explicit).rstrip("\n"))
        out.append("# closed world: uni(t) ~ 0 for every other ground term t")
    if what in ("sets", "all"):
        out.append("# fuzzy sets")
        out.append(format_theory(bridge.fuzzy_set_clauses(base.sets, base)).rstrip("\n"))
    if what in ("assignment", "all"):
        out.append("# initial assignment")
        out.append(format_theory(bridge.assignment_clauses(base.initial(), base)).rstrip("\n"))
    if what in ("rules", "all"):
        out.append("# rule base")
        out.extend(format_formula(f) + ";" for f in bridge.base_theory(base))


def cmd_reduce(args, out):
    base = base_from(args)
    p = _problem(args.problem, base)
    r = bridge.reduce_to_unsat(base, base.initial(), p, args.offset, args.horizon)
    out.extend(f"# {n}" for n in r.notes)
    theory = r.ground if (args.ground or args.oracle) else r.symbolic
    if args.oracle:
        rep = ground_sat_oracle(r.ground)
        out.append(f"{rep.verdict} (finite instantiation up to time {r.times})")
        return 0
    out.append(format_theory(theory).rstrip("\n"))


def cmd_verify_lemma(args, out):
    base = base_from(args)
    tmax = args.tmax if args.tmax is not None else args.eta
    m = bridge.CanonicalModel(base, base.initial(), tmax)
    ok = m.premises_hold()
    out.append(f"premises: {'hold' if ok else 'fail'}")
    results = []
    for eta in range(args.eta + 1) if args.all else [args.eta]:
        results.append(ok and m.state_holds(eta))
        out.append(f"eta = {eta}: {'pass' if results[-1] else 'fail'}")
    return 0 if all(results) else 1


def cmd_sat(args, out):
    s = parse_theory(read_text(args.input))
    rep = ground_sat_by_enumeration(s) if args.enumerate else ground_sat_oracle(s)
    out.append(rep.verdict)
    if args.witness and rep.witness:
        out.extend(f"{format_formula(a)} = {v}" for a, v in sorted(
            rep.witness.items(), key=lambda kv: format_formula(kv[0])))


# ------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="goedel-forge",
                                 description="Goedel logic clausifier and fuzzy derivation tools")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        p.add_argument("--expect", help="file (or verdict) the output must match")
        return p

    def add_base(p):
        p.add_argument("--base", required=True, help=".frb rule base (bundled names work too)")
        p.add_argument("--without", help="comma-separated rule labels to drop")

    p = add("parse", cmd_parse, "parse and pretty-print formulas or clauses")
    p.add_argument("input", help="text, file or -")
    p.add_argument("--clauses", action="store_true", help="input is an order clausal theory")

    p = add("simplify", cmd_simplify, "remove ! and D and fold constants")
    p.add_argument("input")

    p = add("clausify", cmd_clausify, "translate formulas to order clauses")
    p.add_argument("input")
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--negative", action="store_true",
                   help="last formula is a goal; emit the refutation input")
    p.add_argument("--trace", action="store_true", help="list the rule applications")

    p = add("derive", cmd_derive, "run a fuzzy derivation")
    add_base(p)
    p.add_argument("--steps", type=int, default=13)
    p.add_argument("--table", action="store_true", help="print one row per time step")
    p.add_argument("--report", metavar="DIR", help="write a CSV and a heatmap to DIR")

    p = add("analyze", cmd_analyze, "reachability, stability and cycles")
    add_base(p)
    p.add_argument("--steps", type=int, default=20)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--stability", action="store_true")
    g.add_argument("--cycle", type=int, metavar="K")
    g.add_argument("--reach", metavar="TARGETS", help='e.g. "X2 = (1 0.5 1 0.5 1)"')
    g.add_argument("--auto", action="store_true", help="find prefix and period")

    p = add("translate", cmd_translate, "emit the logical translation of a rule base")
    add_base(p)
    p.add_argument("--what", choices=["domain", "universe", "sets", "assignment", "rules", "all"],
                   default="all")

    p = add("reduce", cmd_reduce, "reduce a problem to unsatisfiability")
    add_base(p)
    p.add_argument("--problem", required=True, help="stability | cycle:K | reach:TARGETS")
    p.add_argument("--horizon", type=int, default=2)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--ground", action="store_true", help="emit the finite instantiation")
    p.add_argument("--oracle", action="store_true", help="decide the finite instantiation")

    p = add("verify-lemma", cmd_verify_lemma, "check the derivation lemma on the canonical model")
    add_base(p)
    p.add_argument("--eta", type=int, required=True)
    p.add_argument("--tmax", type=int)
    p.add_argument("--all", action="store_true", help="check every eta up to the given one")

    p = add("sat", cmd_sat, "decide a ground order clausal theory")
    p.add_argument("input")
    p.add_argument("--enumerate", action="store_true", help="use grid enumeration")
    p.add_argument("--witness", action="store_true")
    return ap


def _matches(expect: str, text: str) -> bool:
    p = Path(expect)
    if p.exists():
        return p.read_text().rstrip("\n") == text.rstrip("\n")
    return text.strip().splitlines()[-1:] == [expect.strip()] if text.strip() else False


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    out: list = []
    try:
        code = args.fn(args, out) or 0
    except (InputError, ParseError, SignatureError, fuzzy.FuzzyError,
            bridge.InstantiationTooSmall, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = "\n".join(out) + ("\n" if out else "")
    stdout.write(text)
    if args.expect is not None:
        if not _matches(args.expect, text):
            print("output does not match the expectation", file=sys.stderr)
            return 1
        return 0
    return code


def main():
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); keep quiet like other tools
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
