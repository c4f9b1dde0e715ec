"""Discriminant groups of integral lattices as torsion quadratic modules."""

from fractions import Fraction

from .matrix import Mat, smith_normal_form
from .torsion import TorsionIsometry, TorsionQuadraticModule


class DiscriminantData:
    """D_L = L^vee / L with bookkeeping to map vectors to coordinates.

    gen_vecs: ambient vectors generating D_L (orders > 1)
    dual_basis: full new basis of L^vee adapted to the invariant factors
    invariants: all SNF invariant factors (including the trivial ones)
    """

    def __init__(self, L, tqm, gen_vecs, dual_basis, invariants):
        self.lattice = L
        self.tqm = tqm
        self.gen_vecs = gen_vecs
        self.dual_basis = dual_basis
        self.invariants = invariants

    def coords(self, w):
        """D_L-coordinates of an ambient vector w in L^vee."""
        sol = self.dual_basis.solve_left(Mat([list(w)]))
        if sol is None or not sol.is_integral():
            raise ValueError("vector not in the dual lattice")
        full = sol.row(0)
        out = []
        for c, d in zip(full, self.invariants):
            if d > 1:
                out.append(c % d)
        return tuple(out)

    def vector(self, x):
        """An ambient representative of the class with D_L-coordinates x."""
        acc = [Fraction(0)] * self.lattice.ambient_dim
        for c, g in zip(x, self.gen_vecs.a):
            if c:
                acc = [a + c * b for a, b in zip(acc, g)]
        return acc

    def isometry_action(self, F):
        """Induced torsion isometry of an isometry F of L (column action)."""
        images = []
        B = self.lattice.basis
        for g in self.gen_vecs.a:
            coords = B.solve_left(Mat([list(g)])).row(0)
            img_coords = [sum(F[i, j] * coords[j] for j in range(len(coords)))
                          for i in range(F.rows)]
            w = Mat([img_coords]) * B
            images.append(self.coords(w.row(0)))
        return TorsionIsometry(self.tqm, self.tqm, images)


def discriminant_group(L, even_required=True):
    """DiscriminantData of an integral lattice.

    q takes values in Q/2Z; requires an even lattice unless even_required is
    False, in which case q is only well defined mod Z and the module is
    flagged bilinear-only.
    """
    G = L.gram()
    if not G.is_integral():
        raise ValueError("not integral")
    even = L.is_even()
    if even_required and not even:
        raise ValueError("not an even lattice")
    S, U, V = smith_normal_form(G.to_int())
    r = L.rank
    dual_full = V.inverse() * L.dual().basis
    invariants = [S[i, i] for i in range(r)]
    gen_rows = [dual_full.row(i) for i in range(r) if invariants[i] > 1]
    orders = [d for d in invariants if d > 1]
    gen_vecs = Mat(gen_rows) if gen_rows else Mat.zero(0, L.ambient_dim)
    amb = L.ambient

    def pair(v, w):
        s = Fraction(0)
        for i, x in enumerate(v):
            if x:
                s += x * sum(amb[i, j] * w[j] for j in range(len(w)) if w[j])
        return s

    k = len(orders)
    qd = []
    bm = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        qi = pair(gen_rows[i], gen_rows[i])
        qd.append(qi)
        for j in range(k):
            bm[i][j] = pair(gen_rows[i], gen_rows[j])
    tqm = TorsionQuadraticModule(orders, qd, bm, quadratic=even)
    return DiscriminantData(L, tqm, gen_vecs, dual_full, invariants)
