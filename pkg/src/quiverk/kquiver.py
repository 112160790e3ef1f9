"""K-groups of the Cuntz-Pimsner algebra O_{F,G}(T^d).

For each level k = 0..d the induced maps on the wedge power Lambda^k Z^d are

    A_k = Lambda^k(F^T),  B_k = Lambda^k(G^T),  C_k A_k = N B_k,  N = det F,

and K0/K1 are assembled from ker(1 - C_k) and coker(1 - C_k): cokernels of even
levels and kernels of odd levels make up K0, the other parities make up K1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .abgroup import FinGenAbGroup, direct_sum
from .exact_linalg import IntMatrix, SubsetIndex, det, exterior_power, exterior_powers, mat_mul, minor
from .smith import kernel_and_cokernel, smith_normal_form

DEFAULT_MAX_BINOMIAL = 10**6


class QuiverError(ValueError):
    """Base class for invalid (F, G) input."""


class SingularInput(QuiverError):
    pass


class NonIntegralCk(QuiverError):
    pass


class CapacityExceeded(QuiverError):
    pass


class GeneralFRequired(QuiverError):
    """F is not positive diagonal and the general-F path was not requested."""


def max_binomial() -> int:
    raw = os.environ.get("QUIVERK_MAX_BINOMIAL")
    return int(raw) if raw else DEFAULT_MAX_BINOMIAL


@dataclass(frozen=True)
class QuiverInput:
    F: IntMatrix
    G: IntMatrix
    general_f: bool = False

    def __post_init__(self) -> None:
        F, G = self.F, self.G
        if not (F.is_square and G.is_square) or F.rows != G.rows:
            raise QuiverError(f"F and G must be square of the same size, got {F.rows}x{F.cols} and {G.rows}x{G.cols}")
        if F.rows == 0:
            raise QuiverError("dimension must be at least 1")
        d = F.rows
        bound = max_binomial()
        if comb(d, d // 2) > bound:
            raise CapacityExceeded(f"binomial({d},{d // 2}) exceeds the capacity bound {bound}")
        if det(F) == 0:
            raise SingularInput("det F = 0")
        if det(G) == 0:
            raise SingularInput("det G = 0")
        if not self.f_diagonal and not self.general_f:
            raise GeneralFRequired(
                "F is not a positive diagonal matrix; pass general_f=True (--general-f) "
                "to run the unproved general-F extension"
            )

    @property
    def d(self) -> int:
        return self.F.rows

    @property
    def f_diagonal(self) -> bool:
        return self.F.is_diagonal() and all(a >= 1 for a in self.F.diagonal())

    @property
    def N(self) -> int:
        # |det F|; for positive diagonal F this is the product of the a_j
        return abs(det(self.F))

    @property
    def warnings(self) -> list[str]:
        out = []
        if not self.f_diagonal:
            out.append("general F: extension beyond proved scope (F is not positive diagonal)")
            if det(self.F) < 0:
                out.append("det F < 0: using N = |det F|")
        return out


@dataclass(frozen=True)
class LevelMatrices:
    k: int
    A: IntMatrix
    B: IntMatrix
    C: IntMatrix

    @property
    def size(self) -> int:
        return self.C.rows


@dataclass(frozen=True)
class LevelResult:
    k: int
    size: int
    ker_rank: int
    coker: FinGenAbGroup

    @property
    def parity(self) -> int:
        return self.k % 2


@dataclass(frozen=True)
class KGroupsResult:
    K0: FinGenAbGroup
    K1: FinGenAbGroup
    per_level: tuple[LevelResult, ...] = field(default=(), compare=False)


def _solve_right(A: IntMatrix, rhs: IntMatrix) -> list[list[Fraction]]:
    """Return X with X @ A = rhs over Q (A square, invertible)."""
    # Transpose to A^T X^T = rhs^T and run Gauss-Jordan on [A^T | rhs^T].
    n = A.rows
    At = A.T.to_lists()
    Rt = rhs.T.to_lists()
    aug = [[Fraction(x) for x in At[i]] + [Fraction(x) for x in Rt[i]] for i in range(n)]
    width = len(aug[0])
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise SingularInput("A_k is singular")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    Xt = [row[n:width] for row in aug]
    return [[Xt[j][i] for j in range(n)] for i in range(rhs.rows)]


def _c_diagonal(q: QuiverInput, k: int, B: IntMatrix) -> IntMatrix:
    a = q.F.diagonal()
    idx = SubsetIndex(q.d, k)
    scale = []
    for I in idx:
        s = 1
        for j in idx.complement(I):
            s *= a[j]
        scale.append(s)
    n = len(idx)
    # C_k = B_k diag(a_{I'}): column J of B_k scaled by a_{J'}
    return IntMatrix(n, n, tuple(B.entries[r * n + c] * scale[c] for r in range(n) for c in range(n)))


def _level(q: QuiverInput, k: int, A: IntMatrix, B: IntMatrix) -> LevelMatrices:
    if q.f_diagonal:
        C = _c_diagonal(q, k, B)
    else:
        sol = _solve_right(A, q.N * B)
        flat = []
        for row in sol:
            for x in row:
                if x.denominator != 1:
                    raise NonIntegralCk(f"C_{k} has non-integral entry {x}")
                flat.append(x.numerator)
        C = IntMatrix(A.rows, A.rows, tuple(flat))
    return LevelMatrices(k, A, B, C)


def build_level(q: QuiverInput, k: int) -> LevelMatrices:
    return _level(q, k, exterior_power(q.F.T, k), exterior_power(q.G.T, k))


def build_levels(q: QuiverInput) -> list[LevelMatrices]:
    As = exterior_powers(q.F.T)
    Bs = exterior_powers(q.G.T)
    return [_level(q, k, As[k], Bs[k]) for k in range(q.d + 1)]


def level_result(level: LevelMatrices) -> LevelResult:
    one = IntMatrix.identity(level.size)
    ker, coker = kernel_and_cokernel(one - level.C)
    return LevelResult(level.k, level.size, ker, coker)


def assemble(per_level: list[LevelResult] | tuple[LevelResult, ...], swap_parity: bool = False) -> KGroupsResult:
    """K0 = coker(even) + ker(odd), K1 = coker(odd) + ker(even)."""
    groups: dict[int, list[FinGenAbGroup]] = {0: [], 1: []}
    for lv in per_level:
        par = lv.parity ^ int(swap_parity)
        groups[par].append(lv.coker)
        groups[1 - par].append(FinGenAbGroup.free(lv.ker_rank))
    return KGroupsResult(direct_sum(*groups[0]), direct_sum(*groups[1]), tuple(per_level))


def k_groups(q: QuiverInput) -> KGroupsResult:
    return assemble([level_result(lv) for lv in build_levels(q)])


def k_groups_of(F, G, general_f: bool = False) -> KGroupsResult:
    """Convenience wrapper accepting nested lists."""
    if not isinstance(F, IntMatrix):
        F = IntMatrix.from_rows(F)
    if not isinstance(G, IntMatrix):
        G = IntMatrix.from_rows(G)
    return k_groups(QuiverInput(F, G, general_f=general_f))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    detail: str = ""


def check_identities(levels: list[LevelMatrices], q: QuiverInput) -> list[IdentityCheck]:
    """Verify C_k A_k = N B_k, A_0 = B_0 = C_0 / N = 1 and, for diagonal F,
    the entrywise formula C_k[I, J] = a_{J'} det G_{J,I}."""
    N = q.N
    out = []
    for lv in levels:
        lhs = mat_mul(lv.C, lv.A)
        ok = lhs == N * lv.B
        out.append(IdentityCheck(f"C_{lv.k} A_{lv.k} = N B_{lv.k}", ok, "" if ok else f"{lhs} != {N * lv.B}"))
    lv0 = levels[0]
    ok0 = lv0.A == IntMatrix.identity(1) and lv0.B == IntMatrix.identity(1) and lv0.C == IntMatrix.scalar(1, N)
    out.append(IdentityCheck("A_0 = B_0 = C_0 / N = 1", ok0))
    if q.f_diagonal:
        a = q.F.diagonal()
        for lv in levels:
            idx = SubsetIndex(q.d, lv.k)
            bad = None
            for r, I in enumerate(idx):
                for c, J in enumerate(idx):
                    aJ = 1
                    for j in idx.complement(J):
                        aJ *= a[j]
                    want = aJ * minor(q.G, J, I)
                    if lv.C[r, c] != want:
                        bad = (I, J, lv.C[r, c], want)
                        break
                if bad:
                    break
            out.append(IdentityCheck(
                f"C_{lv.k} = (a_J' det G_JI)", bad is None,
                "" if bad is None else f"entry I={bad[0]} J={bad[1]}: {bad[2]} != {bad[3]}",
            ))
    return out


def reduce_general_F(F: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U F V = D positive diagonal, U and V unimodular."""
    if not F.is_square:
        raise QuiverError("F must be square")
    if det(F) == 0:
        raise SingularInput("det F = 0")
    if F.is_diagonal() and all(a >= 1 for a in F.diagonal()):
        n = F.rows
        return F, IntMatrix.identity(n), IntMatrix.identity(n)
    snf = smith_normal_form(F)
    return snf.D, snf.U, snf.V
