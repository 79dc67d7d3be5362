import io
import subprocess
import sys

import pytest

from goedel_forge.cli import run

from conftest import GOLDEN, TOY


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def toy_file(tmp_path):
    p = tmp_path / "toy.frb"
    p.write_text(TOY)
    return str(p)


def test_derive_golden():
    code, out = cli("derive", "--base", "thermo.frb", "--steps", "13", "--table")
    assert code == 0
    assert out == (GOLDEN / "derivation_thermo.txt").read_text()
    assert len(out.splitlines()) == 14


def test_expect_file():
    code, _ = cli("derive", "--base", "thermo.frb", "--table",
                  "--expect", str(GOLDEN / "derivation_thermo.txt"))
    assert code == 0
    code, _ = cli("derive", "--base", "thermo.frb", "--steps", "12", "--table",
                  "--expect", str(GOLDEN / "derivation_thermo.txt"))
    assert code == 1


def test_expect_verdict():
    assert cli("analyze", "--base", "thermo.frb", "--stability", "--expect", "kappa = 12")[0] == 0
    assert cli("analyze", "--base", "thermo.frb", "--stability", "--expect", "kappa = 11")[0] == 1


def test_analyze():
    assert cli("analyze", "--base", "thermo-noB7B8.frb", "--cycle", "12") == (0, "kappa = 5\n")
    assert cli("analyze", "--base", "thermo.frb", "--auto") == (0, "prefix = 12, period = 1\n")
    assert cli("analyze", "--base", "thermo.frb", "--reach", "X2 = (1 0.5 1 0.5 1)") == (0, "kappa = 11\n")
    assert cli("analyze", "--base", "thermo.frb", "--reach", "X2 = (0 0 0 0 0)") == (1, "none\n")


def test_analyze_without_rules():
    code, out = cli("analyze", "--base", "thermo.frb", "--without", "R7,R8", "--cycle", "12")
    assert (code, out) == (0, "kappa = 5\n")


def test_simplify():
    assert cli("simplify", "!p(x)") == (0, "p(x) -> 0\n")


def test_parse_and_clauses():
    assert cli("parse", "p&q|r") == (0, "p & q | r\n")
    code, out = cli("parse", "--clauses", "p < q | q ~ 0.5\n[]")
    assert code == 0 and out.splitlines() == ["p < q | q ~ 0.5", "[]"]


def test_clausify_trace():
    code, out = cli("clausify", "--trace",
                    "forall x ((exists y (q(x,y,z) < 1)) -> (forall z r(x,y,z)) ~ 0.3)")
    assert code == 0
    trace = [l for l in out.splitlines() if l.startswith("#")]
    assert [t.split()[3] for t in trace] == ["(forall)", "(imp)", "(exists)", "(lt-one)", "(eq)", "(forall)"]
    assert len(out.splitlines()) - len(trace) == 13


def test_clausify_negative():
    code, out = cli("clausify", "--negative", "p -> q; p; q")
    assert code == 0
    assert out.splitlines()[0] == "_p1_0 ~ 1"
    assert "_p0_0 < 1" in out.splitlines()


def test_translate_sets_golden():
    code, _ = cli("translate", "--base", "thermo.frb", "--what", "sets",
                  "--expect", str(GOLDEN / "fuzzy_sets.oct"))
    assert code == 0


def test_translate_all_sections():
    code, out = cli("translate", "--base", "thermo.frb")
    assert code == 0
    for head in ("# domain axioms", "# universe", "# fuzzy sets", "# initial assignment", "# rule base"):
        assert head in out


def test_reduce_toy_oracle(toy_file):
    code, out = cli("reduce", "--base", toy_file, "--problem", "stability", "--oracle")
    assert code == 0 and out.splitlines()[-1].startswith("UNSAT")
    code, out = cli("reduce", "--base", toy_file, "--problem", "reach:X = (0 1)", "--oracle")
    assert out.splitlines()[-1].startswith("SAT")


def test_reduce_symbolic_and_errors(toy_file):
    code, out = cli("reduce", "--base", toy_file, "--problem", "cycle:2", "--horizon", "2")
    assert code == 0 and "_p0_0(tau,x) < 1" in out
    assert cli("reduce", "--base", toy_file, "--problem", "cycle:3")[0] == 2
    assert cli("reduce", "--base", toy_file, "--problem", "bogus")[0] == 2


def test_verify_lemma():
    code, out = cli("verify-lemma", "--base", "thermo.frb", "--eta", "2", "--all")
    assert code == 0
    assert out.splitlines() == ["premises: hold", "eta = 0: pass", "eta = 1: pass", "eta = 2: pass"]


def test_sat():
    assert cli("sat", "p ~ 1\np < 1") == (0, "UNSAT\n")
    code, out = cli("sat", "--witness", "p < q\nq ~ 0.5")
    assert out.splitlines()[0] == "SAT" and len(out.splitlines()) == 3
    assert cli("sat", "--enumerate", "p < q\nq < p") == (0, "UNSAT\n")


def test_report(tmp_path):
    code, out = cli("derive", "--base", "thermo.frb", "--steps", "3", "--report", str(tmp_path))
    assert code == 0
    assert (tmp_path / "derivation.csv").read_text().splitlines()[0] == "time,variable,0,1,2,3,4"
    assert (tmp_path / "derivation.png").stat().st_size > 0


def test_input_errors(tmp_path):
    assert cli("parse", "p &")[0] == 2
    assert cli("derive", "--base", "missing.frb")[0] == 2
    bad = tmp_path / "bad.frb"
    bad.write_text("universe 0 1; bogus;")
    assert cli("derive", "--base", str(bad))[0] == 2
    assert cli("analyze", "--base", "thermo.frb", "--cycle", "0")[0] == 2


def test_usage_error():
    with pytest.raises(SystemExit) as e:
        run(["nosuchcommand"], io.StringIO())
    assert e.value.code == 2


def test_deterministic_output():
    args = ("reduce", "--base", "thermo.frb", "--problem", "stability")
    assert cli(*args) == cli(*args)


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "goedel_forge.cli", "simplify", "D p"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "p ~ 1\n"
