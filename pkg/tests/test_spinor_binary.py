import random

import pytest

from latiso.binary import BinaryIndefinite, pell_fundamental, representations
from latiso.lattice import ZLattice, lattice_A, lattice_U
from latiso.matrix import Mat
from latiso.spinor import (SquareClassQp, reflection_factorization,
                           reflection_matrix, spinor_norm_at,
                           spinor_norm_rational, squarefree_part)


def test_squarefree_part():
    assert squarefree_part(8) == 2
    assert squarefree_part(-12) == -3
    assert squarefree_part(1) == 1
    from fractions import Fraction
    assert squarefree_part(Fraction(1, 2)) == 2
    assert squarefree_part(Fraction(-9, 4)) == -1


def test_square_class_qp():
    a = SquareClassQp.of(18, 3)   # 2 * 3^2: val 0, unit (2/3) = -1
    assert a.val == 0 and a.unit == -1
    b = SquareClassQp.of(3, 3)
    assert b.val == 1 and b.unit == 1
    c = SquareClassQp.of(12, 2)   # 4*3: val 0 mod 2, unit 3 mod 8
    assert c.val == 0 and c.unit == 3


def test_reflection_basics():
    G = lattice_A(2).gram()
    v = [1, 0]
    T = reflection_matrix(G, v)
    assert T * T == Mat.identity(2)
    assert T.transpose() * G * T == G
    # spinor norm of tau_v is Q(v) = v^2/2 = 1
    assert spinor_norm_rational(G, T) == 1


def test_spinor_identity_trivial():
    G = lattice_A(2).gram()
    assert spinor_norm_rational(G, Mat.identity(2)) == 1


def test_spinor_minus_identity_A2():
    # -1 on A2: product of two orthogonal reflections; class of Q(v1)Q(v2) = 3
    G = lattice_A(2).gram()
    s = spinor_norm_rational(G, Mat.identity(2).scale(-1))
    assert s == 3


def test_spinor_homomorphism_random():
    rng = random.Random(5)
    from latiso.autgrp import group_elements, automorphism_group_definite
    L = lattice_A(2)
    G = L.gram()
    gens, _ = automorphism_group_definite(L)
    els = group_elements(gens, 2)
    for _ in range(40):
        a = rng.choice(els)
        b = rng.choice(els)
        sa, sb = spinor_norm_rational(G, a), spinor_norm_rational(G, b)
        sab = spinor_norm_rational(G, a * b)
        assert squarefree_part(sa * sb) == sab


def test_factorization_reconstructs():
    from latiso.autgrp import group_elements, automorphism_group_definite
    L = lattice_A(3)
    G = L.gram()
    gens, _ = automorphism_group_definite(L)
    for F in gens:
        vecs = reflection_factorization(G, F)
        M = Mat.identity(3)
        for v in vecs:
            M = M * reflection_matrix(G, v)
        assert M == F


def test_pell():
    assert pell_fundamental(5) == (1, 1)
    t, u = pell_fundamental(8)
    assert t * t - 8 * u * u in (4, -4)


def test_representations_complete_small():
    # x^2 - 2 y^2 = 1 has (3, 2) and the trivial (1, 0), (-1, 0)
    sols = representations(1, 0, -2, 1)
    assert (1, 0) in sols or (-1, 0) in sols


def test_binary_U():
    B = BinaryIndefinite(lattice_U())
    assert B.split
    assert B.order_of_O() == 4
    for g in B.generators_of_O():
        assert g.transpose() * lattice_U().gram() * g == lattice_U().gram()


def test_binary_diag_1_minus1():
    L = ZLattice.from_gram(Mat([[2, 0], [0, -2]]))
    B = BinaryIndefinite(L)
    assert B.order_of_O() == 4


def test_binary_pell_case():
    L = ZLattice.from_gram(Mat([[2, 1], [1, -2]]))
    B = BinaryIndefinite(L)
    assert not B.split
    assert B.so_infinite
    assert B.order_of_O() is None
    # the Pell generator preserves the gram and has infinite order: check
    # it is not +-identity
    U = B.so_gens[1]
    assert U != Mat.identity(2) and U != Mat.identity(2).scale(-1)
    assert U.transpose() * L.gram() * U == L.gram()


def brute_force_O(L, bound=6):
    G = L.gram()
    out = []
    rng = range(-bound, bound + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    M = Mat([[a, b], [c, d]])
                    if abs(M.det()) == 1 and M.transpose() * G * M == G:
                        out.append(M)
    return out


def test_binary_vs_bruteforce_U():
    # oracle: 2x2 integer matrices with bounded entries preserving the gram
    L = lattice_U()
    assert len(brute_force_O(L, 2)) == 4


def test_binary_U11_like():
    L = lattice_U(11)
    B = BinaryIndefinite(L)
    assert B.split
    assert B.order_of_O() == 4
