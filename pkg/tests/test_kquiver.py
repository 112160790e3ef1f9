import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverk import FinGenAbGroup, IntMatrix, QuiverInput, build_levels, det, k_groups, k_groups_of, mat_mul
from quiverk.kquiver import (
    CapacityExceeded,
    GeneralFRequired,
    SingularInput,
    assemble,
    build_level,
    check_identities,
    level_result,
    reduce_general_F,
)
from quiverk.smith import kernel_and_cokernel, kernel_rank

from conftest import leibniz_det

EX_F = IntMatrix.diag([2, 3])
EX_G = IntMatrix.from_rows([[1, 1], [0, 1]])


def test_levels_of_worked_example():
    levels = build_levels(QuiverInput(EX_F, EX_G))
    assert [lv.C for lv in levels] == [
        IntMatrix.from_rows([[6]]),
        IntMatrix.from_rows([[3, 0], [3, 2]]),
        IntMatrix.from_rows([[1]]),
    ]
    assert mat_mul(levels[1].C, levels[1].A) == IntMatrix.from_rows([[6, 0], [6, 6]])


def test_k_groups_of_worked_example():
    r = k_groups(QuiverInput(EX_F, EX_G))
    assert r.K0 == FinGenAbGroup(1, (5,))
    assert r.K1 == FinGenAbGroup(1, (2,))
    assert [(lv.k, lv.size, lv.ker_rank) for lv in r.per_level] == [(0, 1, 0), (1, 2, 0), (2, 1, 1)]


def test_one_dimensional():
    r = k_groups_of([[3]], [[4]])
    assert (r.K0, r.K1) == (FinGenAbGroup(0, (2,)), FinGenAbGroup(0, (3,)))


def test_identity_pair():
    r = k_groups_of([[1, 0], [0, 1]], [[1, 0], [0, 1]])
    assert r.K0 == r.K1 == FinGenAbGroup.free(4)


def test_input_errors():
    with pytest.raises(SingularInput):
        QuiverInput(IntMatrix.diag([0, 2]), IntMatrix.identity(2))
    with pytest.raises(SingularInput):
        QuiverInput(IntMatrix.identity(2), IntMatrix.from_rows([[1, 2], [2, 4]]))
    with pytest.raises(GeneralFRequired):
        QuiverInput(IntMatrix.from_rows([[2, 1], [0, 3]]), IntMatrix.identity(2))
    with pytest.raises(ValueError):
        QuiverInput(IntMatrix.identity(2), IntMatrix.identity(3))


def test_capacity_bound(monkeypatch):
    monkeypatch.setenv("QUIVERK_MAX_BINOMIAL", "5")
    with pytest.raises(CapacityExceeded):
        QuiverInput(IntMatrix.identity(4), IntMatrix.identity(4))
    QuiverInput(IntMatrix.identity(3), IntMatrix.identity(3))


def test_general_f_matches_diagonal_when_diagonal():
    F = IntMatrix.diag([2, 3])
    assert k_groups(QuiverInput(F, EX_G, general_f=True)) == k_groups(QuiverInput(F, EX_G))


def test_general_f_warnings_and_negative_det():
    q = QuiverInput(IntMatrix.from_rows([[0, 1], [1, 0]]), IntMatrix.identity(2), general_f=True)
    assert q.N == 1
    assert any("det F < 0" in w for w in q.warnings)
    assert any("beyond proved scope" in w for w in q.warnings)
    assert QuiverInput(EX_F, EX_G).warnings == []


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=9, max_size=9), st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_general_f_levels_integral(f, g):
    # N * Lambda^k(F^T)^{-1} is integral (Jacobi), so the rational solve never leaves Z
    F, G = IntMatrix(3, 3, tuple(f)), IntMatrix(3, 3, tuple(g))
    if det(F) == 0 or det(G) == 0:
        return
    q = QuiverInput(F, G, general_f=True)
    for lv in build_levels(q):
        assert mat_mul(lv.C, lv.A) == q.N * lv.B


def test_reduce_general_F():
    D, U, V = reduce_general_F(IntMatrix.from_rows([[2, 1], [0, 3]]))
    assert D == IntMatrix.diag([1, 6])
    assert mat_mul(mat_mul(U, IntMatrix.from_rows([[2, 1], [0, 3]])), V) == D
    D, U, V = reduce_general_F(IntMatrix.from_rows([[0, 1], [1, 0]]))
    assert D == IntMatrix.identity(2)
    F = IntMatrix.diag([2, 5])
    assert reduce_general_F(F) == (F, IntMatrix.identity(2), IntMatrix.identity(2))


def test_check_identities_all_pass():
    q = QuiverInput(IntMatrix.diag([1, 2, 3]), IntMatrix.from_rows([[1, 2, 0], [0, 1, -1], [3, 0, 1]]))
    assert all(c.passed for c in check_identities(build_levels(q), q))


def test_check_identities_detects_tampering():
    q = QuiverInput(EX_F, EX_G)
    levels = build_levels(q)
    bad = levels[1].__class__(1, levels[1].A, levels[1].B, levels[1].C + IntMatrix.identity(2))
    checks = check_identities([levels[0], bad, levels[2]], q)
    assert not all(c.passed for c in checks)


@st.composite
def quiver_inputs(draw, max_d=4, diagonal_f=True):
    d = draw(st.integers(1, max_d))
    a = sorted(draw(st.lists(st.integers(1, 4), min_size=d, max_size=d)))
    g = draw(st.lists(st.integers(-3, 3), min_size=d * d, max_size=d * d))
    G = IntMatrix(d, d, tuple(g))
    if det(G) == 0:
        G = G + IntMatrix.scalar(d, 7)
    if det(G) == 0:
        G = IntMatrix.identity(d)
    return QuiverInput(IntMatrix.diag(a), G)


@settings(max_examples=150, deadline=None)
@given(quiver_inputs())
def test_ck_ak_equals_n_bk(q):
    for lv in build_levels(q):
        assert mat_mul(lv.C, lv.A) == q.N * lv.B


@settings(max_examples=60, deadline=None)
@given(quiver_inputs(max_d=3))
def test_ck_entries_by_permutation_expansion(q):
    a = q.F.diagonal()
    for lv in build_levels(q):
        subsets = list(combinations(range(q.d), lv.k))
        for r, I in enumerate(subsets):
            for c, J in enumerate(subsets):
                scale = 1
                for j in range(q.d):
                    if j not in J:
                        scale *= a[j]
                assert lv.C[r, c] == scale * leibniz_det([[q.G[j, i] for i in I] for j in J])


@settings(max_examples=80, deadline=None)
@given(quiver_inputs(), st.randoms(use_true_random=False))
def test_basis_order_independence(q, rnd):
    for lv in build_levels(q):
        n = lv.size
        perm = list(range(n))
        rnd.shuffle(perm)
        P = IntMatrix(n, n, tuple(int(perm[i] == j) for i in range(n) for j in range(n)))
        conj = mat_mul(mat_mul(P, IntMatrix.identity(n) - lv.C), P.T)
        assert kernel_and_cokernel(conj) == kernel_and_cokernel(IntMatrix.identity(n) - lv.C)


@settings(max_examples=80, deadline=None)
@given(quiver_inputs())
def test_parity_swap(q):
    per = [level_result(lv) for lv in build_levels(q)]
    a, b = assemble(per), assemble(per, swap_parity=True)
    assert (a.K0, a.K1) == (b.K1, b.K0)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4), st.integers(0, 10**6))
def test_scalar_f_middle_levels_injective(n, d, seed):
    rnd = random.Random(seed)
    while True:
        G = IntMatrix(d, d, tuple(rnd.randint(-3, 3) for _ in range(d * d)))
        if det(G) != 0:
            break
    q = QuiverInput(IntMatrix.scalar(d, n), G)
    for k in range(1, d):
        lv = build_level(q, k)
        assert kernel_rank(IntMatrix.identity(lv.size) - lv.C) == 0


def test_results_do_not_depend_on_level_order():
    q = QuiverInput(IntMatrix.diag([1, 2, 2]), IntMatrix.from_rows([[1, 1, 0], [0, -1, 2], [1, 0, 1]]))
    per = [level_result(lv) for lv in build_levels(q)]
    shuffled = per[:]
    random.Random(3).shuffle(shuffled)
    assert assemble(shuffled) == assemble(per)
