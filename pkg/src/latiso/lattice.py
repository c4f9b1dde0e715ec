"""Z-lattices with symmetric bilinear forms.

A lattice carries an explicit ambient rational quadratic space; equality of
lattices is span-equality within one ambient, isometry is a separate relation.
Isometry matrices act on column coordinate vectors throughout: f sends the
vector with L-coordinates c to the vector with coordinates F @ c, so the
isometry condition reads F^T G F = G for the gram matrix G.
"""

from fractions import Fraction
from math import gcd

from .matrix import Mat, hnf_row, kernel_basis, saturate, smith_normal_form


class ZLattice:
    """Lattice in an ambient rational quadratic space.

    ambient: symmetric nondegenerate Mat (the form on Q^n)
    basis:   r x n Mat, rows are basis vectors in ambient coordinates
    """

    __slots__ = ("ambient", "basis", "_gram")

    def __init__(self, ambient, basis=None):
        if not ambient.is_symmetric():
            raise ValueError("ambient form must be symmetric")
        self.ambient = ambient
        self.basis = basis if basis is not None else Mat.identity(ambient.rows)
        self._gram = None
        if self.basis.cols != ambient.rows:
            raise ValueError("basis/ambient dimension mismatch")
        if self.basis.rows and self.basis.rank() != self.basis.rows:
            raise ValueError("basis rows dependent")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def from_gram(G):
        """Lattice Z^n with the given gram matrix as ambient form."""
        return ZLattice(G)

    @property
    def rank(self):
        return self.basis.rows

    @property
    def ambient_dim(self):
        return self.ambient.rows

    def gram(self):
        if self._gram is None:
            self._gram = self.basis * self.ambient * self.basis.transpose()
        return self._gram

    def det(self):
        return self.gram().det()

    def is_integral(self):
        return self.gram().is_integral()

    def is_even(self):
        G = self.gram()
        return G.is_integral() and all(G[i, i] % 2 == 0 for i in range(self.rank))

    def scale_ideal(self):
        """Positive generator of the fractional ideal generated by all products."""
        G = self.gram()
        num = 0
        den = 1
        for i in range(self.rank):
            for j in range(self.rank):
                x = Fraction(G[i, j])
                num = gcd(num, x.numerator * (den // gcd(den, x.denominator)))
                den = den * x.denominator // gcd(den, x.denominator)
                num = gcd(num, x.numerator * (den // x.denominator))
        return Fraction(num, den) if num else Fraction(0)

    def norm_ideal(self):
        """Positive generator of the ideal generated by x^2, x in L (even part doubled)."""
        G = self.gram()
        vals = [Fraction(G[i, i]) for i in range(self.rank)]
        vals += [Fraction(2) * G[i, j] for i in range(self.rank) for j in range(i)]
        num, den = 0, 1
        for x in vals:
            den = den * x.denominator // gcd(den, x.denominator)
        for x in vals:
            num = gcd(num, int(x * den))
        return Fraction(num, den) if num else Fraction(0)

    def signature(self):
        """Signature pair (s_+, s_-) by exact symmetric diagonalization."""
        return signature_of(self.gram())

    def is_definite(self):
        sp, sm = self.signature()
        return sp == 0 or sm == 0

    # -- span bookkeeping -------------------------------------------------
    def canonical_basis_key(self):
        B = self.basis
        den = B.denominator()
        BI = Mat([[int(x * den) for x in row] for row in B.a])
        H = hnf_row(BI)
        return (den, H.key())

    def same_span(self, other):
        return (self.ambient == other.ambient and
                self.canonical_basis_key() == other.canonical_basis_key())

    def contains_lattice(self, other):
        if self.ambient != other.ambient:
            return False
        sol = self.basis.solve_left(other.basis) if other.rank else Mat.zero(0, self.rank)
        return sol is not None and sol.is_integral()

    def index_in(self, other):
        """[other : self] for full-rank sublattices."""
        X = other.basis.solve_left(self.basis)
        if X is None or not X.is_integral():
            raise ValueError("not a sublattice")
        d = abs(X.det())
        if d == 0:
            raise ValueError("rank drop")
        return d

    def coordinates_of(self, vec):
        """L-coordinates (column list) of an ambient vector, or None."""
        sol = self.basis.solve_left(Mat([vec]))
        if sol is None:
            return None
        return sol.row(0)

    def vector(self, coords):
        """Ambient vector for L-coordinates."""
        return Mat([list(coords)]).__mul__(self.basis).row(0)

    def bilinear(self, v, w):
        s = 0
        Av = self.ambient * Mat([list(w)]).transpose()
        for i, x in enumerate(v):
            if x:
                s += x * Av[i, 0]
        return s

    # -- lattice operations ------------------------------------------------
    def dual(self):
        Gi = self.gram().inverse()
        return ZLattice(self.ambient, Gi * self.basis)

    def rescaled(self, c):
        """Same module, form multiplied by c (fresh ambient)."""
        return ZLattice(self.gram().scale(c))

    def sublattice(self, rows):
        """Sublattice spanned by vectors given in L-coordinates."""
        B = Mat(rows) * self.basis
        return ZLattice(self.ambient, B)

    def sublattice_ambient(self, rows):
        return ZLattice(self.ambient, Mat(rows))

    def saturation_in(self, big):
        """Primitive closure of self inside big (same ambient)."""
        X = big.basis.solve_left(self.basis)
        if X is None:
            raise ValueError("not contained in the bigger lattice")
        den = X.denominator()
        XI = Mat([[int(x * den) for x in row] for row in X.a])
        S = saturate(XI)
        return ZLattice(self.ambient, S * big.basis)

    def orthogonal_complement(self, M):
        """{x in L : <x, M> = 0} for a sublattice/subspace M (same ambient)."""
        if M.rank == 0:
            return self
        pair = self.basis * self.ambient * M.basis.transpose()
        den = pair.denominator()
        PI = Mat([[int(x * den) for x in row] for row in pair.a])
        K = kernel_basis(PI)
        return ZLattice(self.ambient, K * self.basis) if K.rows else \
            ZLattice(self.ambient, Mat.zero(0, self.ambient_dim))

    def direct_sum(self, other):
        """Orthogonal sum in a fresh ambient; returns (sum, emb_self, emb_other).

        The embeddings are maps of coordinates: a vector with self-coordinates c
        goes to the sum-lattice vector with coordinates emb_self @ c.
        """
        A = Mat.block_diagonal([self.ambient, other.ambient])
        n1, n2 = self.ambient_dim, other.ambient_dim
        rows = []
        for i in range(self.rank):
            rows.append(self.basis.row(i) + [0] * n2)
        for i in range(other.rank):
            rows.append([0] * n1 + other.basis.row(i))
        return ZLattice(A, Mat(rows))

    def overlattice(self, gens):
        """Overlattice generated by self and extra ambient vectors."""
        rows = self.basis.copy_rows() + [list(g) for g in gens]
        B = Mat(rows)
        den = B.denominator()
        BI = Mat([[int(x * den) for x in row] for row in B.a])
        H = hnf_row(BI)
        H = Mat([H.row(i) for i in range(H.rows) if any(H.row(i))])
        B2 = Mat([[Fraction(x, den) for x in row] for row in H.a])
        return ZLattice(self.ambient, B2)

    def intersection(self, other):
        """Intersection of two full lattices in the same ambient."""
        # dual trick: (L cap M)^vee-free description via kernel computation
        n = self.ambient_dim
        B1, B2 = self.basis, other.basis
        d = (B1.denominator() * B2.denominator())
        M1 = Mat([[int(x * d) for x in row] for row in B1.a])
        M2 = Mat([[int(x * d) for x in row] for row in B2.a])
        # rows (u, v) with u*M1 = v*M2  ->  u*M1 in intersection
        big = []
        for i in range(M1.rows):
            big.append(M1.row(i))
        for i in range(M2.rows):
            big.append([-x for x in M2.row(i)])
        K = kernel_basis(Mat(big))
        rows = []
        for i in range(K.rows):
            u = K.row(i)[:M1.rows]
            vec = Mat([u]) * M1
            rows.append([Fraction(x, d) for x in vec.row(0)])
        if not rows:
            return ZLattice(self.ambient, Mat.zero(0, n))
        return ZLattice(self.ambient, Mat(rows))

    # -- isometries ------------------------------------------------------
    def check_isometry(self, F):
        G = self.gram()
        return F.transpose() * G * F == G

    def fixed_sublattice(self, mats):
        """Fixed lattice of a list of isometries (column convention), primitive."""
        if not mats:
            return self
        stack = []
        I = Mat.identity(self.rank)
        for F in mats:
            D = F - I
            # solutions c with (F - I) c = 0: kernel of D acting on columns
            stack.extend(D.a)
        K = kernel_basis(Mat(stack).transpose())
        if K.rows == 0:
            return ZLattice(self.ambient, Mat.zero(0, self.ambient_dim))
        return ZLattice(self.ambient, K * self.basis)

    def coinvariant_sublattice(self, mats):
        return self.orthogonal_complement(self.fixed_sublattice(mats))

    def isometry_order(self, F, cap=10000):
        I = Mat.identity(self.rank)
        P = F
        for k in range(1, cap + 1):
            if P == I:
                return k
            P = P * F
        raise ValueError("order exceeds cap")


def signature_of(G):
    """(s_+, s_-) of a symmetric rational matrix, exact."""
    n = G.rows
    m = [[Fraction(G[i, j]) for j in range(n)] for i in range(n)]
    pos = neg = 0
    idx = list(range(n))
    while idx:
        p = next((i for i in idx if m[i][i] != 0), None)
        if p is None:
            # all active diagonal entries zero: mix in an off-diagonal partner
            pair = None
            for i in idx:
                for j in idx:
                    if i != j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # degenerate zero block contributes nothing
            i, j = pair
            for k in range(n):
                m[i][k] = m[i][k] + m[j][k]
            for k in range(n):
                m[k][i] = m[k][i] + m[k][j]
            continue
        d = m[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(p)
        for i in idx:
            if m[i][p] != 0:
                f = m[i][p] / d
                for k in range(n):
                    m[i][k] -= f * m[p][k]
                for k in range(n):
                    m[k][i] -= f * m[k][p]
    return pos, neg


# ---------------------------------------------------------------------------
# standard lattices
# ---------------------------------------------------------------------------

def gram_U(n=1):
    return Mat([[0, n], [n, 0]])


def lattice_U(n=1):
    return ZLattice.from_gram(gram_U(n))


def gram_A(n):
    return Mat([[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                 for j in range(n)] for i in range(n)])


def lattice_A(n, sign=1):
    return ZLattice.from_gram(gram_A(n).scale(sign))


def gram_D(n):
    G = gram_A(n)
    a = [list(r) for r in G.a]
    # D_n: replace the chain end: node n-1 attaches to node n-3
    a[n - 1][n - 2] = a[n - 2][n - 1] = 0
    a[n - 1][n - 3] = a[n - 3][n - 1] = -1
    return Mat(a)


def lattice_D(n, sign=1):
    return ZLattice.from_gram(gram_D(n).scale(sign))


def gram_E(n):
    if n not in (6, 7, 8):
        raise ValueError("E6, E7, E8 only")
    # chain 0-1-2-3-4-(5-6), extra node attached to node 2
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = 2
    chain = list(range(n - 1))
    for i, j in zip(chain, chain[1:]):
        G[i][j] = G[j][i] = -1
    G[n - 1][2] = G[2][n - 1] = -1
    return Mat(G)


def lattice_E(n, sign=1):
    return ZLattice.from_gram(gram_E(n).scale(sign))


def lattice_diag(*entries):
    return ZLattice.from_gram(Mat.diagonal(list(entries)))


def direct_sum_many(lats):
    out = lats[0]
    for L in lats[1:]:
        out = out.direct_sum(L)
    return out


def k3_lattice():
    """Even unimodular lattice of signature (3,19): U^3 + E8(-1)^2."""
    return direct_sum_many([lattice_U(), lattice_U(), lattice_U(),
                            lattice_E(8, -1), lattice_E(8, -1)])
