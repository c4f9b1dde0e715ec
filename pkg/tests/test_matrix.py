import random
from fractions import Fraction

import pytest

from latiso.matrix import (Mat, hnf_row, kernel_basis, saturate,
                           smith_normal_form, span_index)


def check_snf(M):
    S, U, V = smith_normal_form(M)
    assert U * M * V == S
    assert abs(U.det()) == 1
    assert abs(V.det()) == 1
    ds = [S[i, i] for i in range(min(S.rows, S.cols))]
    for i in range(len(ds) - 1):
        if ds[i + 1] != 0:
            assert ds[i] != 0 and ds[i + 1] % ds[i] == 0
        assert ds[i] >= 0
    return S


def test_snf_hand_example():
    # elementary row/column reduction by hand gives diag(1, 3)
    S = check_snf(Mat([[2, 1], [1, 2]]))
    assert [S[0, 0], S[1, 1]] == [1, 3]


def test_snf_identity_and_zero():
    S = check_snf(Mat.identity(3))
    assert S == Mat.identity(3)
    S = check_snf(Mat.zero(2, 2))
    assert S == Mat.zero(2, 2)


def test_snf_random():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 5)
        m = rng.randint(1, 5)
        M = Mat([[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)])
        check_snf(M)


def test_kernel_basis_rank1():
    K = kernel_basis(Mat([[1], [1]]))
    assert K.rows == 1
    assert sorted(K.row(0)) == [-1, 1]


def test_kernel_invertible_empty():
    K = kernel_basis(Mat([[2, 1], [1, 1]]))
    assert K.rows == 0


def test_kernel_saturated():
    # [[2],[2]]: kernel is (1,-1), not (2,-2)
    K = kernel_basis(Mat([[2], [2]]))
    assert K.rows == 1
    assert sorted(K.row(0)) == [-1, 1]
    # cross-check with SNF oracle: x * M = 0 and primitivity
    M = Mat([[2], [2]])
    assert Mat([K.row(0)]) * M == Mat.zero(1, 1)
    from math import gcd
    assert gcd(*K.row(0)) in (1, -1)


def test_saturate_simple():
    S = saturate(Mat([[2, 0]]))
    assert S == Mat([[1, 0]])


def test_saturate_primitive_is_stable():
    B = Mat([[1, 2], [0, 3]])
    # rows span index-3 sublattice; saturation is all of Z^2
    S = saturate(B)
    assert abs(S.det()) == 1


def test_saturate_hand_example():
    # {(2,2),(0,4)} is full rank in Z^2, so the primitive closure is Z^2
    # (SNF oracle: invariant factors 2, 4 all get cleared by saturation)
    S = saturate(Mat([[2, 2], [0, 4]]))
    assert abs(S.det()) == 1
    sol = S.solve_left(Mat([[1, 1]]))
    assert sol is not None and sol.is_integral()


def test_saturate_idempotent_random():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 3)
        m = n + rng.randint(0, 2)
        while True:
            B = Mat([[rng.randint(-6, 6) for _ in range(m)] for _ in range(n)])
            if B.rank() == n:
                break
        S1 = saturate(B)
        S2 = saturate(S1)
        assert S1 == S2
        # index of input span in saturation = product of elementary divisors
        idx = span_index(B, S1)
        S, _, _ = smith_normal_form(B)
        prod = 1
        for i in range(min(S.rows, S.cols)):
            if S[i, i]:
                prod *= S[i, i]
        # saturation has unimodular elementary divisors, so index = prod
        assert idx == prod


def test_saturate_rank_deficient_errors():
    with pytest.raises(ValueError):
        saturate(Mat([[1, 1], [2, 2]]))


def test_hnf_transform():
    M = Mat([[4, 6], [2, 2]])
    H, U = hnf_row(M, with_transform=True)
    assert U * M == H
    assert abs(U.det()) == 1


def test_det_bareiss_vs_fraction():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 5)
        M = Mat([[rng.randint(-8, 8) for _ in range(n)] for _ in range(n)])
        Mf = Mat([[Fraction(x) for x in row] for row in M.a])
        naive = Mf.det()
        assert M.det() == naive


def test_inverse_and_solve():
    M = Mat([[2, 1], [1, 2]])
    assert M * M.inverse() == Mat.identity(2)
    t = Mat([[1], [0]])
    x = M.solve_right(t)
    assert M * x == t
