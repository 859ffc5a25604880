import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260915)


def random_hermitian(rng, n, scale=1.0):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (x + x.conj().T)


def char_poly_roots(a):
    """Eigenvalues via characteristic polynomial coefficients (n <= 3)."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    tr = np.trace(a)
    if n == 1:
        return np.array([a[0, 0]], dtype=complex)
    if n == 2:
        det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        return np.roots([1.0, -tr, det])
    minors = sum(a[i, i] * a[j, j] - a[i, j] * a[j, i] for i in range(3) for j in range(i + 1, 3))
    det = (a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
           - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
           + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    return np.roots([1.0, -tr, minors, -det])


ACCEPTANCE_LINES = []


def acceptance_line(criterion: str, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
