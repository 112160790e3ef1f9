"""The unital homomorphism Omega: C(T^d) -> M_N(C(T^d)) on Laurent monomials.

Take F = diag(a_1..a_d) with a_j >= 1, N = a_1...a_d, basis u_nu(x, y) = y^nu
for nu in the box 0 <= nu_j < a_j, and the inner product

    <xi, eta>(x) = (1/N) sum_{y : y_j^{a_j} = (Gx)_j} conj(xi(x, y)) eta(x, y),

where (Gx)_j = prod_k x_k^{G[j][k]}. For the monomial z^m acting on the left by
y^m,

    Omega(z^m)[nu, mu](x) = (1/N) sum_y y^t,   t = m + mu - nu.

Fix one solution y0; the others are y0 * w with w_j an a_j-th root of unity,
and sum_w w^t = N when a_j | t_j for every j and 0 otherwise. In the first case
y^t = prod_j ((Gx)_j)^(t_j / a_j) = x^(G^T s) with s = F^{-1} t. So every entry
is 0 or a single monomial with coefficient +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .exact_linalg import IntMatrix

Exponent = tuple[int, ...]


class StructureError(ValueError):
    """A product would need a sum of distinct monomials in one entry."""


@dataclass(frozen=True)
class MonomialMatrix:
    """Square matrix whose entries are 0 or sign * x^t.

    ``entries[i]`` is a tuple of ``(column, sign, exponent)`` triples for the
    nonzero entries of row i, sorted by column.
    """

    size: int
    dim: int
    entries: tuple[tuple[tuple[int, int, Exponent], ...], ...]

    @classmethod
    def identity(cls, size: int, dim: int) -> MonomialMatrix:
        zero = (0,) * dim
        return cls(size, dim, tuple(((i, 1, zero),) for i in range(size)))

    def entry(self, i: int, j: int) -> tuple[int, Exponent] | None:
        for col, sign, t in self.entries[i]:
            if col == j:
                return sign, t
        return None

    def is_generalized_permutation(self) -> bool:
        cols = [row[0][0] for row in self.entries if len(row) == 1]
        return len(cols) == self.size and sorted(cols) == list(range(self.size))

    def is_scalar_diagonal(self) -> Exponent | None:
        """Return t when the matrix is x^t times the identity, else None."""
        if not self.entries:
            return None
        first = self.entries[0]
        if len(first) != 1:
            return None
        target = (1, first[0][2])
        for i, row in enumerate(self.entries):
            if len(row) != 1 or row[0][0] != i or (row[0][1], row[0][2]) != target:
                return None
        return target[1]


def box(F: IntMatrix) -> list[tuple[int, ...]]:
    """Multi-indices 0 <= nu_j <= a_j - 1 in lexicographic order."""
    a = _positive_diagonal(F)
    return list(product(*(range(x) for x in a)))


def _positive_diagonal(F: IntMatrix) -> tuple[int, ...]:
    if not F.is_diagonal():
        raise ValueError("Omega is only realized for diagonal F")
    a = F.diagonal()
    if any(x < 1 for x in a):
        raise ValueError("F must have positive diagonal entries")
    return a


def omega_monomial(F: IntMatrix, G: IntMatrix, m: Sequence[int]) -> MonomialMatrix:
    a = _positive_diagonal(F)
    d = len(a)
    if len(m) != d or G.rows != d or G.cols != d:
        raise ValueError("dimension mismatch")
    Gt = G.T
    idx = box(F)
    pos = {nu: i for i, nu in enumerate(idx)}
    rows = []
    for nu in idx:
        # mu is forced modulo a: mu_j = (nu_j - m_j) mod a_j
        mu = tuple((nu[j] - m[j]) % a[j] for j in range(d))
        s = tuple((m[j] + mu[j] - nu[j]) // a[j] for j in range(d))
        t = tuple(sum(Gt[i, j] * s[j] for j in range(d)) for i in range(d))
        rows.append(((pos[mu], 1, t),))
    return MonomialMatrix(len(idx), d, tuple(rows))


def monomial_mat_mul(A: MonomialMatrix, B: MonomialMatrix) -> MonomialMatrix:
    if A.size != B.size or A.dim != B.dim:
        raise ValueError("shape mismatch")
    rows = []
    for row in A.entries:
        acc: dict[int, tuple[int, Exponent]] = {}
        for k, s1, t1 in row:
            for j, s2, t2 in B.entries[k]:
                term = (s1 * s2, tuple(x + y for x, y in zip(t1, t2)))
                if j in acc:
                    prev = acc[j]
                    if prev[1] != term[1]:
                        raise StructureError(f"entry ({len(rows)}, {j}) is a sum of distinct monomials")
                    c = prev[0] + term[0]
                    if c not in (-1, 0, 1):
                        raise StructureError(f"entry ({len(rows)}, {j}) has coefficient {c}")
                    if c == 0:
                        del acc[j]
                    else:
                        acc[j] = (c, term[1])
                else:
                    acc[j] = term
        rows.append(tuple((j, s, t) for j, (s, t) in sorted(acc.items())))
    return MonomialMatrix(A.size, A.dim, tuple(rows))


def det_exponent(M: MonomialMatrix) -> tuple[int, Exponent]:
    """Determinant of a generalized permutation matrix as (sign, exponent)."""
    if not M.is_generalized_permutation():
        raise StructureError("not a generalized permutation matrix")
    perm = [row[0][0] for row in M.entries]
    sign = 1
    seen = [False] * M.size
    for i in range(M.size):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    t = [0] * M.dim
    for row in M.entries:
        _, s, e = row[0]
        sign *= s
        for i, x in enumerate(e):
            t[i] += x
    return sign, tuple(t)


@dataclass(frozen=True)
class OmegaCheck:
    name: str
    passed: bool
    detail: str = ""


def run_omega_checks(F: IntMatrix, G: IntMatrix, C1: IntMatrix, samples: Sequence[tuple[Sequence[int], Sequence[int]]] = ()) -> list[OmegaCheck]:
    """Unitality, multiplicativity, Omega(z^(F w)) = x^(G^T w) 1_N, and det-exponent vs C_1."""
    d = F.rows
    out = []
    ident = MonomialMatrix.identity(len(box(F)), d)
    out.append(OmegaCheck("Omega(1) = 1_N", omega_monomial(F, G, (0,) * d) == ident))

    basis = [tuple(int(i == j) for i in range(d)) for j in range(d)]
    pairs = list(samples) or [(e, e2) for e in basis for e2 in basis]
    bad = None
    for m1, m2 in pairs:
        lhs = monomial_mat_mul(omega_monomial(F, G, m1), omega_monomial(F, G, m2))
        rhs = omega_monomial(F, G, tuple(x + y for x, y in zip(m1, m2)))
        if lhs != rhs:
            bad = (m1, m2)
            break
    out.append(OmegaCheck("Omega(z^m) Omega(z^m') = Omega(z^(m+m'))", bad is None, "" if bad is None else f"m={bad[0]} m'={bad[1]}"))

    Gt = G.T
    a = F.diagonal()
    bad = None
    for w in basis + [tuple(1 for _ in range(d))]:
        Fw = tuple(a[j] * w[j] for j in range(d))
        want = tuple(sum(Gt[i, j] * w[j] for j in range(d)) for i in range(d))
        got = omega_monomial(F, G, Fw).is_scalar_diagonal()
        if got != want:
            bad = (w, got, want)
            break
    out.append(OmegaCheck("Omega(z^(F w)) = x^(G^T w) 1_N", bad is None, "" if bad is None else f"w={bad[0]}: {bad[1]} != {bad[2]}"))

    bad = None
    for j, e in enumerate(basis):
        _, t = det_exponent(omega_monomial(F, G, e))
        if t != C1.column(j):
            bad = (j, t, C1.column(j))
            break
    out.append(OmegaCheck("det Omega(z_j) exponent = column j of C_1", bad is None, "" if bad is None else f"j={bad[0]}: {bad[1]} != {bad[2]}"))
    return out
