import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def three_sigma_binomial(p, n):
    return 3.0 * math.sqrt(p * (1.0 - p) / n)


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion; printed in the summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def report(label, ok, detail):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
