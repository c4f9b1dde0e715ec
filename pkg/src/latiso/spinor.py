"""Spinor norms via constructive reflection factorization.

Convention: the reflection tau_v has spinor norm Q(v) = v^2/2, as a square
class.  Square classes of Q are represented by squarefree integers (signed);
local classes at p by (valuation mod 2, unit class).
"""

from fractions import Fraction
from math import gcd

from .matrix import Mat


def squarefree_part(x):
    """Signed squarefree integer representing the square class of x in Q^x."""
    if x == 0:
        raise ValueError("zero has no square class")
    fr = Fraction(x)
    n = fr.numerator * fr.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
        if n % d == 0:
            out *= d
            n //= d
        d += 1
    return sign * out * n


def legendre(a, p):
    """Legendre symbol (a/p) for odd prime p."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else 1


def vp(x, p):
    """p-adic valuation of a nonzero rational."""
    fr = Fraction(x)
    v = 0
    n = fr.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = fr.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x, p):
    """x / p^{v_p(x)} as a Fraction."""
    return Fraction(x) / Fraction(p) ** vp(x, p)


class SquareClassQp:
    """Square class of Q_p^x: (valuation mod 2, unit class).

    Odd p: unit class in {1, u} with u a non-residue, stored as +1/-1 legendre.
    p = 2: unit class mod 8 in {1, 3, 5, 7}.
    """

    __slots__ = ("p", "val", "unit")

    def __init__(self, p, val, unit):
        self.p = p
        self.val = val % 2
        self.unit = unit

    @staticmethod
    def of(x, p):
        v = vp(x, p)
        u = unit_part(x, p)
        if p == 2:
            # unit class mod 8 of a 2-adic unit rational u = a/b
            a, b = u.numerator, u.denominator
            cls = (a * pow(b, -1, 8)) % 8
            return SquareClassQp(2, v, cls)
        num = (u.numerator * pow(u.denominator, -1, p)) % p
        return SquareClassQp(p, v, legendre(num, p))

    def __mul__(self, other):
        if self.p != other.p:
            raise ValueError("mixed primes")
        if self.p == 2:
            return SquareClassQp(2, self.val + other.val, (self.unit * other.unit) % 8)
        return SquareClassQp(self.p, self.val + other.val, self.unit * other.unit)

    def is_trivial(self):
        return self.val == 0 and self.unit == 1

    def key(self):
        return (self.p, self.val, self.unit)

    def __eq__(self, other):
        return isinstance(other, SquareClassQp) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Qp(%d)^x class (val %d, unit %s)" % (self.p, self.val, self.unit)


def orthogonal_basis(G):
    """Vectors (as coordinate rows over Q) orthogonal w.r.t. G, anisotropic."""
    n = G.rows
    basis = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]

    def b(v, w):
        s = Fraction(0)
        for i, x in enumerate(v):
            if x:
                s += x * sum(G[i, j] * w[j] for j in range(n) if w[j])
        return s

    out = []
    pool = [list(v) for v in basis]
    while pool:
        v = None
        for cand in pool:
            if b(cand, cand) != 0:
                v = cand
                break
        if v is None:
            # mix two with nonzero pairing
            found = None
            for i in range(len(pool)):
                for j in range(len(pool)):
                    if i != j and b(pool[i], pool[j]) != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                raise ValueError("degenerate form")
            i, j = found
            pool[i] = [x + y for x, y in zip(pool[i], pool[j])]
            continue
        pool.remove(v)
        out.append(v)
        qv = b(v, v)
        pool = [[x - (b(w, v) / qv) * y for x, y in zip(w, v)] for w in pool]
        pool = [w for w in pool if any(w)]
    return out


def reflection_matrix(G, v):
    """Matrix of tau_v (column action) on the space with gram G."""
    n = G.rows
    qv = Fraction(0)
    for i, x in enumerate(v):
        if x:
            qv += x * sum(G[i, j] * v[j] for j in range(n) if v[j])
    if qv == 0:
        raise ValueError("isotropic reflection vector")
    cols = []
    for k in range(n):
        e = [Fraction(1 if i == k else 0) for i in range(n)]
        be = Fraction(0)
        for i in range(n):
            if e[i]:
                be += e[i] * sum(G[i, j] * v[j] for j in range(n) if v[j])
        coeff = 2 * be / qv
        cols.append([e[i] - coeff * v[i] for i in range(n)])
    return Mat(cols).transpose()


def reflection_factorization(G, F):
    """Vectors v_1, ..., v_k with F = tau_{v_1} ... tau_{v_k} (column action)."""
    n = G.rows
    if F.transpose() * G * F != G:
        raise ValueError("not an isometry")

    def b(v, w):
        s = Fraction(0)
        for i, x in enumerate(v):
            if x:
                s += x * sum(G[i, j] * w[j] for j in range(n) if w[j])
        return s

    obasis = orthogonal_basis(G)
    M = F
    vecs = []
    for o in obasis:
        x = [sum(M[i, j] * o[j] for j in range(n)) for i in range(n)]
        if x == o:
            continue
        w = [a - c for a, c in zip(x, o)]
        if b(w, w) != 0:
            T = reflection_matrix(G, w)
            M = T * M
            vecs.append(w)
        else:
            w2 = [a + c for a, c in zip(x, o)]
            T1 = reflection_matrix(G, w2)
            T2 = reflection_matrix(G, o)
            M = T2 * T1 * M
            vecs.append(w2)
            vecs.append(o)
    if M != Mat.identity(n):
        raise AssertionError("factorization failed to reach identity")
    # with S_k ... S_1 F = I and involutions S_i, F = S_1 S_2 ... S_k
    return vecs


def spinor_norm_rational(G, F):
    """Spinor norm of F in Q^x/(Q^x)^2, as a signed squarefree integer.

    Normalized so tau_v has spinor norm Q(v) = b(v, v)/2.
    """
    vecs = reflection_factorization(G, F)
    n = G.rows
    acc = Fraction(1)
    for v in vecs:
        qv = Fraction(0)
        for i, x in enumerate(v):
            if x:
                qv += x * sum(G[i, j] * v[j] for j in range(n) if v[j])
        acc *= qv / 2
    return squarefree_part(acc)


def spinor_norm_at(G, F, place):
    """Spinor norm as a local square class; place = prime p or 'inf'."""
    s = spinor_norm_rational(G, F)
    if place == "inf":
        return 1 if s > 0 else -1
    return SquareClassQp.of(s, place)


def det_spin(G, F, p):
    """(det, spinor class) of an isometry at prime p."""
    return (F.det(), spinor_norm_at(G, F, p))
