import math

import pytest


def rel_err(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.fixture
def close():
    def check(a, b, tol, rel=False):
        err = rel_err(a, b) if rel else abs(a - b)
        assert err < tol, f"{a} vs {b}: error {err:.3g} >= {tol:.3g}"

    return check


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running numerical checks")


LN2 = math.log(2.0)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
