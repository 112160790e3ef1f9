"""Closed-form K-groups for special families, used as oracles against the engine.

These routines never call :func:`quiverk.kquiver.k_groups`; where a cokernel is
needed they build the relevant integer matrix themselves and hand it to
:mod:`quiverk.smith`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, prod

from .abgroup import FinGenAbGroup, direct_sum
from .exact_linalg import IntMatrix, det, exterior_power
from .kquiver import KGroupsResult, SingularInput
from .smith import cokernel


class EigenvalueOne(ValueError):
    """1 is an eigenvalue of G."""


class _NotCovered:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotCovered"

    def __bool__(self) -> bool:
        return False


NotCovered = _NotCovered()


# -- exact eigenvalue tests -------------------------------------------------

def char_poly(M: IntMatrix) -> list[int]:
    """Coefficients [c_0, ..., c_n] of det(x I - M), c_n = 1 (Faddeev-LeVerrier)."""
    n = M.rows
    if not M.is_square:
        raise ValueError("square matrix required")
    A = M.to_lists()
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]  # M_0 = 0
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = [[sum(A[i][t] * Mk[t][j] for t in range(n)) + (c if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(AM[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs[n - k] = c
    return coeffs


def _all_roots_inside_unit_disk(c: list[int]) -> bool:
    """Schur-Cohn test on integer coefficients [c_0..c_n], c_n != 0.

    If |c_0| < |c_n| then, by Rouche on |z| = 1, q and
    (c_n q - c_0 q*) / z have the same number of roots in the open disk, where
    q* is the reversed polynomial; otherwise the product of the roots has
    modulus >= 1 and some root lies on or outside the circle.
    """
    c = list(c)
    while len(c) > 1:
        n = len(c) - 1
        if abs(c[0]) >= abs(c[n]):
            return False
        rev = c[::-1]
        r = [c[n] * c[i] - c[0] * rev[i] for i in range(n + 1)]
        # r[0] == 0 by construction
        c = r[1:]
    return True


def is_integer_dilation(G: IntMatrix) -> bool:
    """True iff every eigenvalue of G has modulus > 1. Decided in exact arithmetic."""
    p = char_poly(G)
    if p[0] == 0:
        return False
    # roots of the reversed polynomial are 1/lambda
    return _all_roots_inside_unit_disk(p[::-1])


def has_eigenvalue_one(G: IntMatrix) -> bool:
    return det(IntMatrix.identity(G.rows) - G) == 0


# -- F = n * 1_d -------------------------------------------------------------

def _scaled_levels(n: int, G: IntMatrix) -> list[IntMatrix]:
    # C_k = n^(d-k) B_k when F = n 1_d
    d = G.rows
    out = []
    for k in range(d + 1):
        B = exterior_power(G.T, k)
        out.append((n ** (d - k)) * B)
    return out


def _coker_one_minus(C: IntMatrix) -> FinGenAbGroup:
    return cokernel(IntMatrix.identity(C.rows) - C)


def alg2_kgroups(n: int, G: IntMatrix, d: int | None = None):
    """K-groups of O_{n,G}(T^d) from the closed forms for F = n 1_d.

    Returns :data:`NotCovered` when (n, G) falls outside the three covered
    regimes (d > 1 and n > 1; n = 1 with G a dilation; d = 1 with (n, m) != (1, 1)).
    """
    d = G.rows if d is None else d
    if G.rows != d or not G.is_square:
        raise ValueError("G must be d x d")
    if n < 1:
        raise ValueError("n must be a positive integer")
    detG = det(G)
    if detG == 0:
        raise SingularInput("det G = 0")

    if d == 1:
        m = G[0, 0]
        if n > 1 and m != 1:
            return KGroupsResult(
                FinGenAbGroup.from_cyclic_factors([n - 1]),
                FinGenAbGroup.from_cyclic_factors([m - 1]),
            )
        if n == 1 and m != 1:
            return KGroupsResult(
                FinGenAbGroup.free(1),
                FinGenAbGroup.from_cyclic_factors([m - 1], free_rank=1),
            )
        if n > 1 and m == 1:
            return KGroupsResult(
                FinGenAbGroup.from_cyclic_factors([n - 1], free_rank=1),
                FinGenAbGroup.free(1),
            )
        return NotCovered

    C = _scaled_levels(n, G)
    if n > 1:
        top = d if detG != 1 else d - 1
        even = [_coker_one_minus(C[k]) for k in range(0, top + 1, 2)]
        odd = [_coker_one_minus(C[k]) for k in range(1, top + 1, 2)]
        extra = FinGenAbGroup.free(1 if detG == 1 else 0)
        return KGroupsResult(direct_sum(extra, *even), direct_sum(extra, *odd))
    if is_integer_dilation(G):
        even = [_coker_one_minus(C[k]) for k in range(2, d + 1, 2)]
        odd = [_coker_one_minus(C[k]) for k in range(1, d + 1, 2)]
        z = FinGenAbGroup.free(1)
        return KGroupsResult(direct_sum(z, *even), direct_sum(z, *odd))
    return NotCovered


def corollary_d2(G: IntMatrix) -> KGroupsResult:
    """F = 1_2 and 1 not an eigenvalue of G."""
    if (G.rows, G.cols) != (2, 2):
        raise ValueError("G must be 2 x 2")
    detG = det(G)
    if detG == 0:
        raise SingularInput("det G = 0")
    if has_eigenvalue_one(G):
        raise EigenvalueOne("1 is an eigenvalue of G")
    c1 = _coker_one_minus(G.T)
    if detG == 1:
        return KGroupsResult(FinGenAbGroup.free(2), direct_sum(FinGenAbGroup.free(2), c1))
    return KGroupsResult(
        FinGenAbGroup.from_cyclic_factors([1 - detG], free_rank=1),
        direct_sum(FinGenAbGroup.free(1), c1),
    )


def scalar_kgroups(n: int, m: int, d: int, literal: bool = False) -> KGroupsResult:
    """F = n 1_d, G = m 1_d.

    Level k contributes Z/|1 - n^(d-k) m^k| to its own parity. When
    n^(d-k) m^k = 1 the map 1 - C_k vanishes, so that level adds Z^binom(d,k)
    to both K0 and K1; this default reading agrees with the engine everywhere.

    ``literal=True`` returns the formulas as printed: the generic branch puts
    such a level only in its own parity, (1, 1) gives Z^(2^d) twice and
    (1, -1) gives Z^(2^(d-1)) (+) Z/2^(2^(d-1)) for both groups. The literal
    (1, -1) answer already contradicts the d = 1 case of :func:`alg2_kgroups`.
    """
    if n < 1 or m == 0:
        raise ValueError("need n >= 1 and m != 0")
    if literal and n == 1 and m == 1:
        return KGroupsResult(FinGenAbGroup.free(2 ** d), FinGenAbGroup.free(2 ** d))
    if literal and n == 1 and m == -1:
        g = FinGenAbGroup.from_cyclic_factors([2] * 2 ** (d - 1), free_rank=2 ** (d - 1))
        return KGroupsResult(g, g)
    parts: dict[int, list[int]] = {0: [], 1: []}
    free = {0: 0, 1: 0}
    for k in range(d + 1):
        c = n ** (d - k) * m ** k
        mult = comb(d, k)
        parts[k % 2].extend([1 - c] * mult)
        if c == 1 and not literal:
            free[1 - k % 2] += mult
    return KGroupsResult(
        FinGenAbGroup.from_cyclic_factors(parts[0], free_rank=free[0]),
        FinGenAbGroup.from_cyclic_factors(parts[1], free_rank=free[1]),
    )


# -- subset counting -----------------------------------------------------------

def p_count(k: int, p: int, v: int) -> int:
    """Number of k-element choices from p ones and v minus-ones with product 1."""
    if min(k, p, v) < 0:
        raise ValueError("arguments must be nonnegative")
    return sum(comb(v, 2 * r) * comb(p, k - 2 * r) for r in range(k // 2 + 1))


def v_count(k: int, p: int, v: int) -> int:
    """Number of k-element choices from p ones and v minus-ones with product -1."""
    if min(k, p, v) < 0:
        raise ValueError("arguments must be nonnegative")
    return sum(comb(v, 2 * r + 1) * comb(p, k - 2 * r - 1) for r in range((k - 1) // 2 + 1)) if k else 0


def subset_sum_closed_form(p: int, v: int, sign: int = 1) -> int:
    """sum_k p_count(k, p, v) (sign=+1) or sum_k v_count(k, p, v) (sign=-1)."""
    if v == 0:
        return 2 ** p if sign == 1 else 0
    return 2 ** (p + v - 1)


# -- diagonal F and G -----------------------------------------------------------

@dataclass(frozen=True)
class DiagonalCaseData:
    """Counting data for F = diag(a), G = diag(b), a sorted ascending.

    ``f`` counts the a_j equal to 1 (they come first). C_k has a diagonal entry
    1 at I exactly when I contains the tail {f..d-1} and b_I = 1, so ``p``/``v``
    count the +1/-1 entries among the b_j of the *leading* block and
    ``tail_sign`` is the product of the tail b_j if they are all +-1, else 0.
    """

    d: int
    f: int
    p: int
    v: int
    tail_sign: int
    d_k: tuple[int, ...]

    @property
    def case(self) -> int:
        if self.p == 0:
            return 1 if self.v == 0 else 2
        return 3 if self.v == 0 else 4

    @property
    def free_rank(self) -> int:
        if self.tail_sign == 0:
            return 0
        return subset_sum_closed_form(self.p, self.v, self.tail_sign)


def _check_diag_pair(a: tuple[int, ...], b: tuple[int, ...]) -> None:
    if len(a) != len(b):
        raise ValueError("F and G differ in size")
    if any(x < 1 for x in a):
        raise ValueError("F must have positive diagonal")
    if list(a) != sorted(a):
        raise ValueError("F diagonal must be sorted ascending")
    if 0 in b:
        raise SingularInput("det G = 0")


def diagonal_case_data(a: tuple[int, ...], b: tuple[int, ...]) -> DiagonalCaseData:
    _check_diag_pair(a, b)
    d = len(a)
    f = sum(1 for x in a if x == 1)
    lead, tail = b[:f], b[f:]
    p = sum(1 for x in lead if x == 1)
    v = sum(1 for x in lead if x == -1)
    tail_sign = prod(tail) if all(x in (1, -1) for x in tail) else 0
    counts = []
    for k in range(d + 1):
        kk = k - (d - f)
        if kk < 0 or tail_sign == 0:
            counts.append(0)
        elif tail_sign == 1:
            counts.append(p_count(kk, p, v))
        else:
            counts.append(v_count(kk, p, v))
    return DiagonalCaseData(d, f, p, v, tail_sign, tuple(counts))


def brute_force_d_k(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Count I in each level with b_I a_{I'} = 1 by enumerating subsets."""
    d = len(a)
    out = []
    for k in range(d + 1):
        n = 0
        for I in combinations(range(d), k):
            rest = [j for j in range(d) if j not in I]
            if prod(b[i] for i in I) * prod(a[j] for j in rest) == 1:
                n += 1
        out.append(n)
    return tuple(out)


def diagonal_torsion(a: tuple[int, ...], b: tuple[int, ...], parity: int) -> list[int]:
    """Orders |1 - b_I a_{I'}| over levels of the given parity, skipping the ones."""
    d = len(a)
    out = []
    for k in range(parity, d + 1, 2):
        for I in combinations(range(d), k):
            c = prod(b[i] for i in I) * prod(a[j] for j in range(d) if j not in I)
            if c != 1:
                out.append(1 - c)
    return out


def diag_kgroups(F: IntMatrix, G: IntMatrix, literal: bool = False) -> KGroupsResult:
    """K-groups for diagonal F (positive, ascending) and diagonal G.

    Free rank comes from the subset-counting closed forms, torsion from the
    entries b_I a_{I'} != 1. With ``literal=True`` the p = 0, v > 0 case
    (f > 0) is returned as printed: free rank 2^(v-1) - 1 and odd-level
    torsion in K0 as well as K1, which disagrees with the engine.
    """
    if not (F.is_diagonal() and G.is_diagonal()):
        raise ValueError("F and G must be diagonal")
    a, b = F.diagonal(), G.diagonal()
    data = diagonal_case_data(a, b)
    t_even = diagonal_torsion(a, b, 0)
    t_odd = diagonal_torsion(a, b, 1)
    if literal and data.f > 0 and data.case == 2:
        r = 2 ** (data.v - 1) - 1
        return KGroupsResult(
            FinGenAbGroup.from_cyclic_factors(t_odd, free_rank=r),
            FinGenAbGroup.from_cyclic_factors(t_odd, free_rank=r),
        )
    r = data.free_rank
    return KGroupsResult(
        FinGenAbGroup.from_cyclic_factors(t_even, free_rank=r),
        FinGenAbGroup.from_cyclic_factors(t_odd, free_rank=r),
    )
