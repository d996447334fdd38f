from pathlib import Path

import pytest

from decpi import CircuitBuilder

DATA = Path(__file__).parent / "data"


def build_creatures():
    """The five-variable creature classifier and its named inner nodes."""
    b = CircuitBuilder()
    v3 = b.decision("s", b.true(), b.lit("p"))
    v2 = b.decision("b", v3, b.lit("p", False))
    small_round = b.conj(b.lit("p", False), b.lit("s", False))
    v1 = b.decision("e", v2, small_round)
    human_side = b.decision("e", small_round, b.conj(b.lit("b", False), v3))
    v0 = b.decision("h", human_side, v1)
    c = b.build(v0)
    return c, {"v0": v0, "v1": v1, "v2": v2, "v3": v3}


@pytest.fixture
def creatures():
    return build_creatures()


@pytest.fixture
def data():
    return DATA


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
