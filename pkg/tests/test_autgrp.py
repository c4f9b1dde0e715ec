import pytest

from latiso.autgrp import (all_isometries, automorphism_group_definite,
                           group_elements, isometry_definite, vectors_of_norm)
from latiso.lattice import lattice_A, lattice_D, lattice_E, lattice_diag
from latiso.matrix import Mat


def test_vectors_of_norm_A2_neg():
    L = lattice_A(2, -1)
    vs = vectors_of_norm(L, -2)
    assert len(vs) == 3
    vs2 = vectors_of_norm(L, -2, both_signs=True)
    assert len(vs2) == 6


def test_vectors_of_norm_empty():
    L = lattice_diag(-4)
    assert vectors_of_norm(L, -2) == []


def test_vectors_of_norm_E8_roots():
    # 240 roots, exhaustive short-vector oracle
    L = lattice_E(8)
    vs = vectors_of_norm(L, 2, both_signs=True)
    assert len(vs) == 240


def test_aut_order_diag1():
    L = lattice_diag(1)
    gens, order = automorphism_group_definite(L)
    assert order == 2


def test_aut_order_A2():
    L = lattice_A(2)
    gens, order = automorphism_group_definite(L)
    assert order == 12
    for g in gens:
        assert L.check_isometry(g)
    # brute-force oracle: exhaustive count of gram-preserving matrices
    assert len(group_elements(gens, 2)) == 12


def test_aut_order_diag22():
    gens, order = automorphism_group_definite(lattice_diag(2, 2))
    assert order == 8


def test_aut_order_A3_D4():
    assert automorphism_group_definite(lattice_A(3))[1] == 48
    assert automorphism_group_definite(lattice_D(4))[1] == 1152


def test_aut_order_A2A2():
    L = lattice_A(2).direct_sum(lattice_A(2))
    gens, order = automorphism_group_definite(L)
    assert order == 288  # (12*12)*2 with the swap


def test_aut_order_E8():
    gens, order = automorphism_group_definite(lattice_E(8))
    assert order == 696729600


def test_isometry_definite_identity():
    L = lattice_A(2)
    X = isometry_definite(L, L)
    assert X is not None
    assert X.transpose() * L.gram() * X == L.gram()


def test_isometry_definite_distinguishes():
    assert isometry_definite(lattice_diag(2, 2), lattice_A(2)) is None
    assert isometry_definite(lattice_diag(1, 4), lattice_diag(2, 2)) is None


def test_equivariant_isometry():
    L = lattice_diag(2, 2)
    swap = Mat([[0, 1], [1, 0]])
    ident = Mat.identity(2)
    # (L, swap) is not isomorphic to (L, id)
    assert isometry_definite(L, L, equivariant=(swap, ident)) is None
    assert isometry_definite(L, L, equivariant=(swap, swap)) is not None
    # centralizer of swap in O(L): elements commuting with swap
    gens, order = automorphism_group_definite(L, centralizing=swap)
    assert order == 4  # {id, swap, -id, -swap}


def test_all_isometries_count():
    L = lattice_A(2)
    assert len(all_isometries(L, L)) == 12
