from pathlib import Path

import pytest

from goedel_forge import fuzzy
from goedel_forge.cli import load_base

GOLDEN = Path(__file__).parent / "golden"

TOY = """
universe 0 1;
set a = 1/0 0.5/1;
set b = 0.5/0 0/1;
set full = 1/0 1/1;
var X;
rule R1: if X is a then X is a;
init X = b;
"""


@pytest.fixture(scope="session")
def thermo():
    return load_base("thermo.frb")


@pytest.fixture(scope="session")
def thermo_nofriction():
    return load_base("thermo-noB7B8.frb")


@pytest.fixture
def toy():
    return fuzzy.parse_rule_base(TOY)


@pytest.fixture
def golden():
    return lambda name: (GOLDEN / name).read_text()


# acceptance lines, filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
