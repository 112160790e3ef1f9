import cmath
import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverk import IntMatrix, QuiverInput, build_levels, det
from quiverk.omega import (
    MonomialMatrix,
    StructureError,
    box,
    det_exponent,
    monomial_mat_mul,
    omega_monomial,
    run_omega_checks,
)


def character_sum(a, G, m, x):
    """Omega(z^m) at the point x of the torus, straight from the inner product.

    Entry (nu, mu) = (1/N) sum_y conj(y^nu) y^m y^mu over y with y_j^{a_j} = (G x)_j.
    """
    d = len(a)
    gx = [1 + 0j] * d
    for j in range(d):
        for k in range(d):
            gx[j] *= x[k] ** G[j, k]
    # every solution is a fixed root times a_j-th roots of unity
    roots = [
        [cmath.exp(1j * (cmath.phase(gx[j]) + 2 * cmath.pi * r) / a[j]) for r in range(a[j])]
        for j in range(d)
    ]
    idx = list(product(*(range(x_) for x_ in a)))
    N = len(idx)
    out = [[0j] * N for _ in range(N)]
    for ys in product(*roots):
        for r, nu in enumerate(idx):
            left = 1
            for j in range(d):
                left *= ys[j] ** nu[j]
            for c, mu in enumerate(idx):
                right = 1
                for j in range(d):
                    right *= ys[j] ** (m[j] + mu[j])
                out[r][c] += left.conjugate() * right / N
    return out


def evaluate(M: MonomialMatrix, x):
    out = [[0j] * M.size for _ in range(M.size)]
    for r, row in enumerate(M.entries):
        for c, sign, t in row:
            v = sign
            for xi, ti in zip(x, t):
                v *= xi**ti
            out[r][c] = v
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_monomial_formula_matches_character_sum(seed):
    rnd = random.Random(seed)
    d = rnd.randint(1, 2)
    a = tuple(sorted(rnd.randint(1, 3) for _ in range(d)))
    while True:
        G = IntMatrix(d, d, tuple(rnd.randint(-2, 2) for _ in range(d * d)))
        if det(G) != 0:
            break
    m = tuple(rnd.randint(-4, 4) for _ in range(d))
    x = [cmath.exp(2j * cmath.pi * rnd.random()) for _ in range(d)]
    want = character_sum(a, G, m, x)
    got = evaluate(omega_monomial(IntMatrix.diag(a), G, m), x)
    for r in range(len(want)):
        for c in range(len(want)):
            assert abs(want[r][c] - got[r][c]) < 1e-9


def test_unital():
    F, G = IntMatrix.diag([2, 3]), IntMatrix.from_rows([[1, 1], [0, 1]])
    assert omega_monomial(F, G, (0, 0)) == MonomialMatrix.identity(6, 2)


def test_companion_shape_in_one_dimension():
    n, m0 = 4, 5
    M = omega_monomial(IntMatrix.from_rows([[n]]), IntMatrix.from_rows([[m0]]), (1,))
    for i in range(n):
        if i == 0:
            assert M.entry(0, n - 1) == (1, (m0,))
        else:
            assert M.entry(i, i - 1) == (1, (0,))
    assert sum(len(row) for row in M.entries) == n
    sign, t = det_exponent(M)
    assert t == (m0,) and sign in (1, -1)


def test_square_of_generator_two_by_two():
    F, G = IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[3]])
    one = omega_monomial(F, G, (1,))
    two = omega_monomial(F, G, (2,))
    assert monomial_mat_mul(one, one) == two
    assert two.is_scalar_diagonal() == (3,)


def test_identity_is_neutral_and_has_trivial_determinant():
    F, G = IntMatrix.diag([2, 2]), IntMatrix.from_rows([[1, 2], [0, 1]])
    A = omega_monomial(F, G, (1, -1))
    ident = MonomialMatrix.identity(A.size, 2)
    assert monomial_mat_mul(A, ident) == A == monomial_mat_mul(ident, A)
    assert det_exponent(ident) == (1, (0, 0))


def test_structure_errors():
    F, G = IntMatrix.diag([2]), IntMatrix.from_rows([[3]])
    bad = MonomialMatrix(2, 1, (((0, 1, (0,)), (1, 1, (1,))), ((0, 1, (2,)),)))
    with pytest.raises(StructureError):
        monomial_mat_mul(bad, bad)
    with pytest.raises(StructureError):
        det_exponent(bad)
    with pytest.raises(ValueError):
        omega_monomial(IntMatrix.from_rows([[1, 1], [0, 1]]), IntMatrix.identity(2), (0, 0))
    with pytest.raises(ValueError):
        omega_monomial(F, G, (0, 0))


def test_box_order():
    assert box(IntMatrix.diag([2, 3])) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


@st.composite
def omega_inputs(draw):
    d = draw(st.integers(1, 3))
    a = tuple(sorted(draw(st.lists(st.integers(1, 4), min_size=d, max_size=d))))
    g = draw(st.lists(st.integers(-3, 3), min_size=d * d, max_size=d * d))
    G = IntMatrix(d, d, tuple(g))
    if det(G) == 0:
        G = G + IntMatrix.scalar(d, 8)
    return IntMatrix.diag(a), G


@settings(max_examples=80, deadline=None)
@given(omega_inputs(), st.data())
def test_multiplicative(fg, data):
    F, G = fg
    d = F.rows
    vec = st.lists(st.integers(-10, 10), min_size=d, max_size=d).map(tuple)
    m1, m2 = data.draw(vec), data.draw(vec)
    lhs = monomial_mat_mul(omega_monomial(F, G, m1), omega_monomial(F, G, m2))
    assert lhs == omega_monomial(F, G, tuple(x + y for x, y in zip(m1, m2)))


@settings(max_examples=80, deadline=None)
@given(omega_inputs(), st.data())
def test_dilated_monomials_are_scalar(fg, data):
    F, G = fg
    d = F.rows
    w = data.draw(st.lists(st.integers(-5, 5), min_size=d, max_size=d))
    Fw = tuple(F[j, j] * w[j] for j in range(d))
    want = tuple(sum(G[j, i] * w[j] for j in range(d)) for i in range(d))
    assert omega_monomial(F, G, Fw).is_scalar_diagonal() == want


@settings(max_examples=80, deadline=None)
@given(omega_inputs())
def test_det_exponent_is_column_of_c1(fg):
    F, G = fg
    C1 = build_levels(QuiverInput(F, G))[1].C
    for j in range(F.rows):
        e = tuple(int(i == j) for i in range(F.rows))
        assert det_exponent(omega_monomial(F, G, e))[1] == C1.column(j)
    assert all(c.passed for c in run_omega_checks(F, G, C1))


def test_run_omega_checks_flags_wrong_c1():
    F, G = IntMatrix.diag([2, 3]), IntMatrix.from_rows([[1, 1], [0, 1]])
    checks = run_omega_checks(F, G, IntMatrix.identity(2))
    assert [c.passed for c in checks] == [True, True, True, False]
