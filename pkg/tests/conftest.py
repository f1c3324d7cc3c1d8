import math

import pytest

from quatval.scalars import ExactScalar, ScalarFraction


def numeric(x) -> float:
    """Float value of an exact scalar, for comparison with an independent float oracle."""
    if isinstance(x, ScalarFraction):
        return numeric(x.num) / numeric(x.den)
    return sum(float(c) * math.pi ** (h / 2) for h, c in x.terms.items())


@pytest.fixture
def close():
    def check(x, expected, rel=1e-12):
        assert numeric(x) == pytest.approx(expected, rel=rel)
    return check


_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""
    def record(number: int, title: str, ok: bool, detail: str = ""):
        _CRITERIA.append((number, title, ok, detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_CRITERIA):
        line = f"{'PASS' if ok else 'FAIL'}  {number:2d}. {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
