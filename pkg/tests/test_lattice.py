from fractions import Fraction

import pytest

from latiso.lattice import (ZLattice, k3_lattice, lattice_A, lattice_D,
                            lattice_E, lattice_U, lattice_diag, signature_of)
from latiso.matrix import Mat


def test_dual_unimodular_E8():
    E8 = lattice_E(8)
    D = E8.dual()
    assert D.same_span(E8)


def test_dual_diag2():
    L = lattice_diag(2)
    D = L.dual()
    assert D.gram() == Mat([[Fraction(1, 2)]])
    assert D.dual().same_span(L)


def test_dual_A2():
    A2 = lattice_A(2)
    D = A2.dual()
    # dual gram = gram^{-1} in the dual basis
    assert D.gram() == A2.gram().inverse()
    assert D.dual().same_span(A2)


def test_signatures():
    assert lattice_E(8).signature() == (8, 0)
    assert lattice_E(8, -1).signature() == (0, 8)
    assert lattice_U().signature() == (1, 1)
    assert k3_lattice().signature() == (3, 19)
    assert signature_of(Mat([[0, 1], [1, 0]])) == (1, 1)


def test_k3_unimodular_even():
    L = k3_lattice()
    assert abs(L.det()) == 1
    assert L.is_even()


def test_dets():
    assert lattice_A(2).det() == 3
    assert lattice_A(3).det() == 4
    assert lattice_D(4).det() == 4
    assert lattice_E(6).det() == 3
    assert lattice_E(7).det() == 2
    assert lattice_E(8).det() == 1
    assert lattice_U().det() == -1


def test_orthogonal_complement():
    L = lattice_diag(2, 2)
    M = L.sublattice([[1, 1]])
    C = L.orthogonal_complement(M)
    assert C.rank == 1
    assert C.gram() == Mat([[4]])
    # complement of everything is zero, of zero is L
    assert L.orthogonal_complement(L).rank == 0
    Z = ZLattice(L.ambient, Mat.zero(0, 2))
    assert L.orthogonal_complement(Z).same_span(L)


def test_fixed_and_coinvariant_swap():
    L = lattice_diag(2, 2)
    swap = Mat([[0, 1], [1, 0]])
    F = L.fixed_sublattice([swap])
    C = L.coinvariant_sublattice([swap])
    assert F.rank == 1 and C.rank == 1
    assert F.gram() == Mat([[4]])
    assert C.gram() == Mat([[4]])
    fixed_vec = F.basis.row(0)
    assert fixed_vec in ([1, 1], [-1, -1])


def test_fixed_identity_and_minus():
    L = lattice_A(2)
    I = Mat.identity(2)
    assert L.fixed_sublattice([I]).same_span(L)
    assert L.fixed_sublattice([I.scale(-1)]).rank == 0
    assert L.coinvariant_sublattice([I.scale(-1)]).same_span(L)


def test_index_and_overlattice():
    L = lattice_diag(2, 2)
    S = L.sublattice([[1, 1], [1, -1]])
    assert S.index_in(L) == 2
    O = S.overlattice([[1, 0]])
    assert O.same_span(L)


def test_saturation():
    L = lattice_diag(2, 2, 2)
    S = L.sublattice([[2, 0, 0]])
    T = S.saturation_in(L)
    assert T.gram() == Mat([[2]])


def test_intersection():
    L = lattice_diag(1, 1)
    A = L.sublattice([[2, 0], [0, 1]])
    B = L.sublattice([[1, 1], [1, -1]])
    C = A.intersection(B)
    # A cap B: even-coordinate-sum plus first coord even
    assert C.index_in(L) == 4
