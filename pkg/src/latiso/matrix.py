"""Exact integer/rational matrix kernel.

Everything downstream (lattices, glue, genus symbols, transfer) sits on the
operations in this module: Smith/Hermite normal forms with transformation
matrices, saturated integer kernels, fraction-free determinants.  All
arithmetic is exact: entries are Python ints or Fractions, never floats.
"""

from fractions import Fraction
from math import gcd


def _norm(x):
    # collapse integral Fractions to int so arithmetic stays in fast paths
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class Mat:
    """Dense matrix with exact entries (int / Fraction), immutable by convention."""

    __slots__ = ("rows", "cols", "a")

    def __init__(self, entries, cols=None):
        self.a = [[_norm(Fraction(x) if not isinstance(x, (int, Fraction)) else x)
                   for x in row] for row in entries]
        self.rows = len(self.a)
        self.cols = len(self.a[0]) if self.rows else (cols or 0)
        for row in self.a:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    # -- constructors -------------------------------------------------
    @staticmethod
    def identity(n):
        return Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(r, c):
        return Mat([[0] * c for _ in range(r)], cols=c)

    @staticmethod
    def diagonal(ds):
        n = len(ds)
        return Mat([[ds[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rows(rows):
        return Mat([list(r) for r in rows])

    @staticmethod
    def block_diagonal(blocks):
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        i = j = 0
        for b in blocks:
            for r in range(b.rows):
                for c in range(b.cols):
                    out[i + r][j + c] = b.a[r][c]
            i += b.rows
            j += b.cols
        return Mat(out)

    # -- basic protocol ------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def row(self, i):
        return list(self.a[i])

    def col(self, j):
        return [self.a[i][j] for i in range(self.rows)]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.a == other.a

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.a))

    def __repr__(self):
        return "Mat(%r)" % (self.a,)

    def copy_rows(self):
        return [list(r) for r in self.a]

    def key(self):
        return tuple(tuple(r) for r in self.a)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        return Mat([[self.a[i][j] + other.a[i][j] for j in range(self.cols)]
                    for i in range(self.rows)])

    def __sub__(self, other):
        return Mat([[self.a[i][j] - other.a[i][j] for j in range(self.cols)]
                    for i in range(self.rows)])

    def __neg__(self):
        return Mat([[-x for x in row] for row in self.a])

    def scale(self, c):
        return Mat([[_norm(c * x) for x in row] for row in self.a])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError("dimension mismatch %sx%s * %sx%s"
                             % (self.rows, self.cols, other.rows, other.cols))
        ob = other.a
        out = []
        for i in range(self.rows):
            ai = self.a[i]
            row = []
            for j in range(other.cols):
                s = 0
                for k in range(self.cols):
                    x = ai[k]
                    if x:
                        s += x * ob[k][j]
                row.append(_norm(s))
            out.append(row)
        return Mat(out)

    def transpose(self):
        return Mat([[self.a[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def apply_row(self, v):
        """v (length rows) as row vector: returns v * self as a list."""
        return [_norm(sum(v[i] * self.a[i][j] for i in range(self.rows) if v[i]))
                for j in range(self.cols)]

    def is_integral(self):
        return all(isinstance(x, int) for row in self.a for x in row)

    def is_symmetric(self):
        return self.rows == self.cols and all(
            self.a[i][j] == self.a[j][i] for i in range(self.rows) for j in range(i))

    def denominator(self):
        d = 1
        for row in self.a:
            for x in row:
                if isinstance(x, Fraction):
                    d = d * x.denominator // gcd(d, x.denominator)
        return d

    def to_int(self):
        if not self.is_integral():
            raise ValueError("matrix not integral")
        return self

    # -- determinants and inverses ----------------------------------------
    def det(self):
        """Exact determinant.  Integer matrices go through fraction-free Bareiss."""
        if self.rows != self.cols:
            raise ValueError("det of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        d = self.denominator()
        if d == 1:
            return _bareiss_det([list(r) for r in self.a])
        scaled = [[int(x * d) for x in row] for row in self.a]
        return _norm(Fraction(_bareiss_det(scaled), d ** n))

    def inverse(self):
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of non-square matrix")
        aug = [[Fraction(self.a[i][j]) for j in range(n)] +
               [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if aug[r][col] != 0:
                    piv = r
                    break
            if piv is None:
                raise ValueError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return Mat([row[n:] for row in aug])

    def solve_left(self, target):
        """Solve x * self = target (target a Mat); returns Mat or None."""
        st = self.transpose()
        tt = target.transpose()
        sol = st.solve_right(tt)
        return None if sol is None else sol.transpose()

    def solve_right(self, target):
        """Solve self * x = target over Q; returns Mat or None if inconsistent."""
        m, n = self.rows, self.cols
        k = target.cols
        aug = [[Fraction(self.a[i][j]) for j in range(n)] +
               [Fraction(target.a[i][j]) for j in range(k)] for i in range(m)]
        pivots = []
        r = 0
        for c in range(n):
            piv = None
            for rr in range(r, m):
                if aug[rr][c] != 0:
                    piv = rr
                    break
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            pv = aug[r][c]
            aug[r] = [x / pv for x in aug[r]]
            for rr in range(m):
                if rr != r and aug[rr][c] != 0:
                    f = aug[rr][c]
                    aug[rr] = [a - f * b for a, b in zip(aug[rr], aug[r])]
            pivots.append(c)
            r += 1
            if r == m:
                break
        for rr in range(r, m):
            if any(aug[rr][n + j] != 0 for j in range(k)) and \
               all(aug[rr][c] == 0 for c in range(n)):
                return None
        out = [[0] * k for _ in range(n)]
        for idx, c in enumerate(pivots):
            for j in range(k):
                out[c][j] = aug[idx][n + j]
        return Mat(out)

    def rank(self):
        m = [[Fraction(x) for x in row] for row in self.a]
        r = 0
        for c in range(self.cols):
            piv = None
            for rr in range(r, self.rows):
                if m[rr][c] != 0:
                    piv = rr
                    break
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for rr in range(self.rows):
                if rr != r and m[rr][c] != 0:
                    f = m[rr][c]
                    m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
            r += 1
            if r == self.rows:
                break
        return r


def _bareiss_det(m):
    """Fraction-free Bareiss determinant of an integer matrix (destroys m)."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = None
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    piv = r
                    break
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pkk - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms
# ---------------------------------------------------------------------------

def hnf_row(M, with_transform=False):
    """Row-style Hermite normal form of an integer matrix.

    Returns H (or (H, U) with U unimodular, U*M = H).  H is upper echelon with
    positive pivots and entries above a pivot reduced into [0, pivot).
    Zero rows are moved to the bottom.
    """
    a = [list(r) for r in M.a]
    n, m = M.rows, M.cols
    if not M.is_integral():
        raise ValueError("HNF needs an integer matrix")
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if with_transform else None
    r = 0
    for c in range(m):
        # find pivot with smallest absolute value to limit growth
        piv = None
        best = None
        for rr in range(r, n):
            v = a[rr][c]
            if v != 0 and (best is None or abs(v) < best):
                best = abs(v)
                piv = rr
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if u is not None:
            u[r], u[piv] = u[piv], u[r]
        # eliminate below by gcd steps
        changed = True
        while changed:
            changed = False
            for rr in range(r + 1, n):
                if a[rr][c] != 0:
                    q = a[rr][c] // a[r][c]
                    if q:
                        a[rr] = [x - q * y for x, y in zip(a[rr], a[r])]
                        if u is not None:
                            u[rr] = [x - q * y for x, y in zip(u[rr], u[r])]
                    if a[rr][c] != 0:
                        a[r], a[rr] = a[rr], a[r]
                        if u is not None:
                            u[r], u[rr] = u[rr], u[r]
                        changed = True
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        for rr in range(r):
            q = a[rr][c] // a[r][c]
            if q:
                a[rr] = [x - q * y for x, y in zip(a[rr], a[r])]
                if u is not None:
                    u[rr] = [x - q * y for x, y in zip(u[rr], u[r])]
        r += 1
        if r == n:
            break
    H = Mat(a)
    if with_transform:
        return H, Mat(u)
    return H


def smith_normal_form(M):
    """Smith normal form with transforms: returns (S, U, V), U*M*V = S.

    S is diagonal with d_1 | d_2 | ..., all d_i >= 0; U, V unimodular.
    Pivoting picks the entry of smallest absolute value.
    """
    if not M.is_integral():
        raise ValueError("SNF needs an integer matrix")
    n, m = M.rows, M.cols
    a = [list(r) for r in M.a]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(n, m):
        # locate smallest nonzero entry in the remaining block
        piv = None
        best = None
        for i in range(t, n):
            for j in range(t, m):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, m):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry; if not, mix the row in
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            addmul_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return Mat(a), Mat(u), Mat(v)


def elementary_divisors(M):
    S, _, _ = smith_normal_form(M)
    return [S.a[i][i] for i in range(min(S.rows, S.cols)) if S.a[i][i] != 0]


def kernel_basis(M):
    """Basis of the integer kernel {x : x*M = 0}, saturated in Z^rows.

    Rows of the result form a primitive basis (the span is its own saturation).
    """
    if not M.is_integral():
        den = M.denominator()
        M = Mat([[int(x * den) for x in row] for row in M.a])
    S, U, V = smith_normal_form(M)
    r = sum(1 for i in range(min(S.rows, S.cols)) if S.a[i][i] != 0)
    # rows r..n-1 of U span the kernel; SNF transform keeps them primitive
    rows = [U.row(i) for i in range(r, M.rows)]
    if not rows:
        return Mat.zero(0, M.rows)
    return hnf_row(Mat(rows))


def saturate(B):
    """Primitive closure of the row span of B inside Z^cols.

    Rows must be independent.  Returns an HNF basis of (B x Q) cap Z^n.
    """
    if B.rows == 0:
        return B
    if not B.is_integral():
        den = B.denominator()
        B = Mat([[int(x * den) for x in row] for row in B.a])
    if B.rank() != B.rows:
        raise ValueError("rank deficient")
    # kernel of the transpose map, twice: saturation = ker(ker(B)^T)^T trick,
    # done via SNF directly: B = U^-1 * S * V^-1, saturation basis = first r
    # rows of V^-1 scaled to primitive.
    S, U, V = smith_normal_form(B)
    r = B.rows
    Vi = V.inverse()
    rows = [Vi.row(i) for i in range(r)]
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        row = [int(x * den) for x in row]
        g = 0
        for x in row:
            g = gcd(g, x)
        if g > 1:
            row = [x // g for x in row]
        out.append(row)
    return hnf_row(Mat(out))


def span_index(sub, sup):
    """Index [sup_span : sub_span] of row spans (must be finite)."""
    X = sup.solve_left(sub) if sup.rows else None
    # sub = X * sup with X integral of full rank
    if X is None:
        raise ValueError("sub not contained in span of sup")
    if not X.is_integral():
        raise ValueError("sub not contained in integer span of sup")
    d = abs(X.det())
    if d == 0:
        raise ValueError("infinite index")
    return d
