import numpy as np
import pytest

from absind import BooleanFunction

# ones of x0x1 + x2x3 on 4 variables (x_j = bit j of the index)
BENT4_ONES = {3, 7, 11, 12, 13, 14}

_acceptance_lines: list[str] = []


def record_acceptance(label: str, passed: bool, detail: str = "") -> None:
    _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def bent4():
    return BooleanFunction.from_bits([1 if i in BENT4_ONES else 0 for i in range(16)])


@pytest.fixture
def zero3():
    return BooleanFunction.constant(3)


@pytest.fixture
def x0_3():
    return BooleanFunction.from_bits([0, 1, 0, 1, 0, 1, 0, 1])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
