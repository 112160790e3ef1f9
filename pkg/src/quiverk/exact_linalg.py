"""Exact integer matrices: products, determinants, minors and exterior powers.

Everything here works over Python ints, so there is no overflow at any size.
Subsets are 0-based tuples; rendering code converts to 1-based labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major matrix of Python ints. Immutable."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diag(cls, values: Iterable[int]) -> IntMatrix:
        values = [int(v) for v in values]
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def scalar(cls, n: int, value: int) -> IntMatrix:
        return cls.diag([value] * n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def is_diagonal(self) -> bool:
        return self.is_square and all(
            x == 0 for idx, x in enumerate(self.entries) if idx // self.cols != idx % self.cols
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + i] for i in range(min(self.rows, self.cols)))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        _same_shape(self, other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        _same_shape(self, other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __rmul__(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()})"


def _same_shape(a: IntMatrix, b: IntMatrix) -> None:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError(f"shape mismatch {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def _require_square(m: IntMatrix) -> None:
    if not m.is_square:
        raise ValueError(f"expected a square matrix, got {m.rows}x{m.cols}")


@dataclass(frozen=True)
class SubsetIndex:
    """Lexicographically ordered k-subsets of range(d)."""

    d: int
    k: int
    subsets: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.d:
            raise ValueError(f"k={self.k} out of range for d={self.d}")
        object.__setattr__(self, "subsets", tuple(combinations(range(self.d), self.k)))

    def __len__(self) -> int:
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.subsets[i]

    @cached_property
    def _position(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.subsets)}

    def position(self, subset: Sequence[int]) -> int:
        return self._position[tuple(subset)]

    def complement(self, subset: Sequence[int]) -> tuple[int, ...]:
        chosen = set(subset)
        return tuple(j for j in range(self.d) if j not in chosen)


def det_lists(a: list[list[int]]) -> int:
    """Bareiss fraction-free determinant. Mutates ``a``."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(m: IntMatrix) -> int:
    _require_square(m)
    return det_lists(m.to_lists())


def _minor_unchecked(m: IntMatrix, rows: Sequence[int], cols: Sequence[int]) -> int:
    # rows/cols may be in any order; a transposition flips the sign
    k = len(rows)
    if k == 0:
        return 1
    if k == 1:
        return m.entries[rows[0] * m.cols + cols[0]]
    if k == 2:
        c = m.cols
        e = m.entries
        return e[rows[0] * c + cols[0]] * e[rows[1] * c + cols[1]] - e[rows[0] * c + cols[1]] * e[rows[1] * c + cols[0]]
    c = m.cols
    e = m.entries
    return det_lists([[e[i * c + j] for j in cols] for i in rows])


def minor(m: IntMatrix, rows: Sequence[int], cols: Sequence[int]) -> int:
    """Determinant of the submatrix on ``rows`` x ``cols`` (strictly increasing, 0-based)."""
    if len(rows) != len(cols):
        raise ValueError("row and column subsets differ in size")
    for name, idx, bound in (("row", rows, m.rows), ("column", cols, m.cols)):
        if any(not 0 <= i < bound for i in idx):
            raise IndexError(f"{name} index out of range: {tuple(idx)}")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"{name} subset must be strictly increasing: {tuple(idx)}")
    return _minor_unchecked(m, rows, cols)


def exterior_powers(m: IntMatrix, top: int | None = None) -> list[IntMatrix]:
    """All compound matrices ``[exterior_power(m, k) for k in 0..top]`` in one pass."""
    _require_square(m)
    d = m.rows
    top = d if top is None else top
    if not 0 <= top <= d:
        raise ValueError(f"k={top} out of range for a {d}x{d} matrix")
    e = m.entries
    out = [IntMatrix.identity(1)]
    # minors[(I, J)] for |I| = |J| = level, expanded along the last row of I
    minors: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {((), ()): 1}
    for level in range(1, top + 1):
        idx = list(combinations(range(d), level))
        nxt = {}
        flat = []
        for I in idx:
            head, base = I[:-1], I[-1] * d
            for J in idx:
                total = 0
                sign = 1 if level % 2 else -1
                for t, j in enumerate(J):
                    x = e[base + j]
                    if x:
                        sub = minors.get((head, J[:t] + J[t + 1:]))
                        if sub:
                            total += sign * x * sub
                    sign = -sign
                if total:
                    nxt[(I, J)] = total
                flat.append(total)
        minors = nxt
        out.append(IntMatrix(len(idx), len(idx), tuple(flat)))
    return out


def exterior_power(m: IntMatrix, k: int) -> IntMatrix:
    """k-th compound matrix: entry (I, J) is the minor on rows I, columns J.

    Rows and columns are indexed by ``SubsetIndex(d, k)``. ``k = 0`` gives
    ``[[1]]`` and ``k = 1`` gives ``m`` back.
    """
    _require_square(m)
    if not 0 <= k <= m.rows:
        raise ValueError(f"k={k} out of range for a {m.rows}x{m.rows} matrix")
    return exterior_powers(m, k)[k]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bc = [b.column(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        out.extend(sum(x * y for x, y in zip(r, col)) for col in bc)
    return IntMatrix(a.rows, b.cols, tuple(out))


def is_unimodular(m: IntMatrix) -> bool:
    return det(m) in (1, -1)

