import contextlib

import pytest

from qorder import DimensionalProfile

TABLE2_ROW = (0.3040, 0.1251, 0.0000, 0.9438, 0.1250, 0.1250, 0.5619)

_acceptance = []


@pytest.fixture
def table2():
    """The two identical top-document profiles of the worked query."""
    p = DimensionalProfile(TABLE2_ROW)
    return p, p


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion as PASS or FAIL."""

    @contextlib.contextmanager
    def check(label):
        try:
            yield
        except BaseException as exc:
            _acceptance.append(f"FAIL  {label}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
            raise
        _acceptance.append(f"PASS  {label}")

    return check


def pytest_terminal_summary(terminalreporter):
    if _acceptance:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance:
            terminalreporter.write_line(line)
