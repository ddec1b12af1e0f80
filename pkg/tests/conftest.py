import itertools

import numpy as np
import pytest

from convertbw.io import worked_example

ACCEPTANCE_LINES: list[str] = []


def leibniz_det(m, p):
    """Determinant mod p by the permutation expansion. Independent of elimination."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= int(m[i][perm[i]])
        total += term
    return total % p


def brute_rank(m, p):
    """Largest r with a nonzero r x r minor, found by enumerating row and column subsets."""
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    for r in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), r):
            for cs in itertools.combinations(range(cols), r):
                if leibniz_det(m[np.ix_(rs, cs)].tolist(), p):
                    return r
    return 0


@pytest.fixture(scope="session")
def example():
    return worked_example()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
