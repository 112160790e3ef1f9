"""Smith normal form over Z with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass

from .abgroup import FinGenAbGroup
from .exact_linalg import IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ of @ V == D`` with U, V unimodular and D diagonal in divisibility order."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    of: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.D.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for x in self.invariant_factors if x != 0)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _smallest_pivot(a: list[list[int]], t: int, m: int, n: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
                if best_abs == 1:
                    return best
    return best


def _reduce(a: list[list[int]], U: list[list[int]] | None, V: list[list[int]] | None) -> None:
    """Bring ``a`` to Smith form in place, mirroring the operations on U and V when given."""
    m = len(a)
    n = len(a[0]) if a else 0

    def swap_rows(i: int, k: int) -> None:
        if i != k:
            a[i], a[k] = a[k], a[i]
            if U is not None:
                U[i], U[k] = U[k], U[i]

    def swap_cols(j: int, k: int) -> None:
        if j != k:
            for row in a:
                row[j], row[k] = row[k], row[j]
            if V is not None:
                for row in V:
                    row[j], row[k] = row[k], row[j]

    def add_row(dst: int, src: int, c: int) -> None:
        # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        if U is not None:
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, c: int) -> None:
        for row in a:
            row[dst] += c * row[src]
        if V is not None:
            for row in V:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        pos = _smallest_pivot(a, t, m, n)
        if pos is None:
            break
        while True:
            i, j = pos
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, -q)
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, -q)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                pos = _smallest_pivot_in_cross(a, t, m, n)
                continue
            # row and column cleared; enforce p | rest of the block
            bad = next(
                (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
            pos = (t, t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Deterministic SNF of any integer matrix, including zero and rectangular ones.

    Pivots are chosen as the smallest-magnitude nonzero entry of the active
    block, first in row-major order.
    """
    m, n = A.rows, A.cols
    a = A.to_lists()
    # U accumulates row operations (m x m), V column operations (n x n).
    U = _identity(m)
    V = _identity(n)
    _reduce(a, U, V)
    return SmithDecomposition(
        U=IntMatrix.from_rows(U, cols=m),
        D=IntMatrix.from_rows(a, cols=n),
        V=IntMatrix.from_rows(V, cols=n),
        of=A,
    )


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form (zeros included), without building transforms."""
    a = A.to_lists()
    _reduce(a, None, None)
    return tuple(a[i][i] for i in range(min(A.rows, A.cols)))


def _smallest_pivot_in_cross(a: list[list[int]], t: int, m: int, n: int) -> tuple[int, int]:
    # Remainders live only in row t and column t; the smallest nonzero among
    # them (and the current pivot) is strictly smaller than before.
    best = (t, t)
    best_abs = abs(a[t][t])
    for i in range(t + 1, m):
        x = a[i][t]
        if x and abs(x) < best_abs:
            best, best_abs = (i, t), abs(x)
    for j in range(t + 1, n):
        x = a[t][j]
        if x and abs(x) < best_abs:
            best, best_abs = (t, j), abs(x)
    return best


def rank(A: IntMatrix) -> int:
    return sum(1 for x in invariant_factors(A) if x != 0)


def kernel_rank(A: IntMatrix) -> int:
    """Rank of the free group ker(A: Z^cols -> Z^rows)."""
    return A.cols - rank(A)


def cokernel(A: IntMatrix) -> FinGenAbGroup:
    """Z^rows / image(A) in canonical form."""
    return kernel_and_cokernel(A)[1]


def kernel_and_cokernel(A: IntMatrix) -> tuple[int, FinGenAbGroup]:
    factors = [x for x in invariant_factors(A) if x != 0]
    r = len(factors)
    return A.cols - r, FinGenAbGroup.from_cyclic_factors(factors, free_rank=A.rows - r)
