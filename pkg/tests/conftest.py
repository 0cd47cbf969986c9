import numpy as np
import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def wavy_curve(n=60, amplitude=0.15, seed=0):
    rng = np.random.default_rng(seed)
    x = np.linspace(0.0, 1.0, n + 2)
    y = amplitude * np.sin(3 * np.pi * x) + 0.01 * rng.standard_normal(n + 2)
    y[0] = y[-1] = 0.0
    return np.column_stack([x, y])
