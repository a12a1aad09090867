from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance = []


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the summary block."""

    def record(label, passed, detail=""):
        _acceptance.append((label, bool(passed), detail))
        print(f"[{'PASS' if passed else 'FAIL'}] {label} {detail}".rstrip())
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _acceptance:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())


class FixedRng:
    """Stands in for numpy's Generator, replaying predetermined draws."""

    def __init__(self, uniforms=(), choices=()):
        self._uniforms = list(uniforms)
        self._choices = list(choices)

    def random(self, size=None):
        if size is None:
            return self._uniforms.pop(0)
        count = int(np.prod(size))
        out, self._uniforms = self._uniforms[:count], self._uniforms[count:]
        return np.array(out, dtype=float).reshape(size)

    def choice(self, a, size=None, replace=True):
        return np.array(self._choices.pop(0))
