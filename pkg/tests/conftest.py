import numpy as np
import pytest

from dianorm.linalg import random_gaussian


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def gaussian(rng, n, m=None):
    return random_gaussian((n, n if m is None else m), rng)


def ket(n, i):
    v = np.zeros(n, dtype=complex)
    v[i] = 1.0
    return v


def omega(n):
    """Unnormalized maximally entangled projector sum_ij |ii><jj| on C^n (x) C^n."""
    v = np.zeros(n * n, dtype=complex)
    for i in range(n):
        v[i * n + i] = 1.0
    return np.outer(v, v)


ACCEPTANCE = []


def record(number, title, ok, detail):
    """Register an acceptance criterion outcome for the end-of-run summary."""
    ACCEPTANCE.append((number, title, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
