from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import strategies as st

from quiverk import IntMatrix


def leibniz_det(rows: list[list[int]]) -> int:
    """Determinant by the permutation expansion; slow but obviously correct."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


@st.composite
def int_matrices(draw, min_size=1, max_size=4, bound=10, square=True):
    r = draw(st.integers(min_size, max_size))
    c = r if square else draw(st.integers(min_size, max_size))
    entries = draw(st.lists(st.integers(-bound, bound), min_size=r * c, max_size=r * c))
    return IntMatrix(r, c, tuple(entries))


@st.composite
def matrix_pairs(draw, max_size=4, bound=10):
    n = draw(st.integers(1, max_size))
    a = draw(st.lists(st.integers(-bound, bound), min_size=n * n, max_size=n * n))
    b = draw(st.lists(st.integers(-bound, bound), min_size=n * n, max_size=n * n))
    return IntMatrix(n, n, tuple(a)), IntMatrix(n, n, tuple(b))


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Collect one (criterion, passed, detail) line for the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def _record(name: str, passed: bool, detail: str) -> None:
        lines.append(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
