"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are coefficient tuples over the power basis 1, z, ..., z^{phi(n)-1}
modulo Phi_n, with Fraction coefficients.  Z[zeta_n] is the maximal order for
every n, so integrality is just coefficient integrality.
"""

from fractions import Fraction
from math import gcd

from .matrix import Mat, hnf_row


def euler_phi(n):
    out = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            out -= out // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out -= out // m
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    q = [0] * max(1, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            c = Fraction(c) / b[-1]
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


_cyclotomic_cache = {}


def cyclotomic_poly(n):
    """Coefficients of Phi_n, ascending."""
    if n in _cyclotomic_cache:
        return _cyclotomic_cache[n]
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(poly, cyclotomic_poly(d))
            assert all(x == 0 for x in r)
            poly = q
    poly = [int(x) if Fraction(x).denominator == 1 else x for x in poly]
    _cyclotomic_cache[n] = poly
    return poly


class CyclotomicField:
    _cache = {}

    def __new__(cls, n):
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        self.n = n
        self.phi = euler_phi(n)
        self.modulus = cyclotomic_poly(n)
        self._red_cache = {}
        cls._cache[n] = self
        return self

    # -- element creation ---------------------------------------------------
    def el(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        if len(c) < self.phi:
            c += [Fraction(0)] * (self.phi - len(c))
        if len(c) > self.phi:
            c = self._reduce(c)
        return CycEl(self, tuple(c))

    def zero(self):
        return self.el([0])

    def one(self):
        return self.el([1])

    def zeta(self, k=1):
        k %= self.n
        return CycEl(self, self.zeta_power_coeffs(k))

    def from_rational(self, x):
        return self.el([Fraction(x)])

    def _reduce(self, coeffs):
        # reduce a long coefficient list mod Phi_n
        q, r = _poly_divmod(list(coeffs), self.modulus)
        r = list(r) + [Fraction(0)] * (self.phi - len(r))
        return [Fraction(x) for x in r[: self.phi]]

    def zeta_power_coeffs(self, k):
        k %= self.n
        if k in self._red_cache:
            return self._red_cache[k]
        raw = [0] * k + [1]
        red = tuple(self._reduce(raw)) if k >= self.phi else tuple(
            [Fraction(0)] * k + [Fraction(1)] + [Fraction(0)] * (self.phi - k - 1))
        self._red_cache[k] = red
        return red

    def galois(self, x, a):
        """zeta -> zeta^a (a coprime to n)."""
        out = [Fraction(0)] * self.phi
        for k, c in enumerate(x.c):
            if c:
                pw = self.zeta_power_coeffs((k * a) % self.n)
                out = [o + c * p for o, p in zip(out, pw)]
        return CycEl(self, tuple(out))


class CycEl:
    __slots__ = ("K", "c")

    def __init__(self, K, c):
        self.K = K
        self.c = c

    def __add__(self, o):
        o = self._coerce(o)
        return CycEl(self.K, tuple(a + b for a, b in zip(self.c, o.c)))

    def __sub__(self, o):
        o = self._coerce(o)
        return CycEl(self.K, tuple(a - b for a, b in zip(self.c, o.c)))

    def __neg__(self):
        return CycEl(self.K, tuple(-a for a in self.c))

    def _coerce(self, o):
        if isinstance(o, CycEl):
            if o.K is not self.K:
                raise ValueError("mixed fields")
            return o
        return self.K.from_rational(o)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return CycEl(self.K, tuple(a * o for a in self.c))
        o = self._coerce(o)
        prod = _poly_mul(list(self.c), list(o.c))
        return CycEl(self.K, tuple(self.K._reduce(prod)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return CycEl(self.K, tuple(a / o for a in self.c))
        return self * o.inverse()

    def inverse(self):
        # solve x * self = 1 by linear algebra over Q
        K = self.K
        cols = []
        for k in range(K.phi):
            e = [Fraction(0)] * K.phi
            e[k] = Fraction(1)
            prod = _poly_mul(e, list(self.c))
            cols.append(K._reduce(prod))
        M = Mat(cols).transpose()
        target = Mat([[1 if i == 0 else 0] for i in range(K.phi)])
        sol = M.solve_right(target)
        if sol is None:
            raise ZeroDivisionError("not invertible")
        return CycEl(K, tuple(sol[i, 0] for i in range(K.phi)))

    def conj(self):
        """Complex conjugation zeta -> zeta^{-1}."""
        return self.K.galois(self, self.K.n - 1)

    def mult_matrix(self):
        K = self.K
        cols = []
        for k in range(K.phi):
            e = [Fraction(0)] * K.phi
            e[k] = Fraction(1)
            cols.append(K._reduce(_poly_mul(e, list(self.c))))
        return Mat(cols).transpose()

    def norm(self):
        return self.mult_matrix().det()

    def trace(self):
        M = self.mult_matrix()
        return sum(M[i, i] for i in range(self.K.phi))

    def is_zero(self):
        return all(x == 0 for x in self.c)

    def is_rational(self):
        return all(x == 0 for x in self.c[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.c[0]

    def is_integral(self):
        return all(Fraction(x).denominator == 1 for x in self.c)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.is_rational() and self.c[0] == o
        return isinstance(o, CycEl) and self.K is o.K and self.c == o.c

    def __hash__(self):
        return hash((self.K.n, self.c))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.c):
            if c:
                terms.append("%s*z^%d" % (c, k))
        return " + ".join(terms) if terms else "0"

    def real_sign(self, margin=Fraction(1, 10 ** 9)):
        """Sign of a real (conj-invariant) element; exact-margin float eval."""
        if self != self.conj():
            raise ValueError("not real")
        if self.is_zero():
            return 0
        import math
        n = self.K.n
        val = 0.0
        size = 0.0
        for k, c in enumerate(self.c):
            fc = float(c)
            val += fc * math.cos(2 * math.pi * k / n)
            size += abs(fc)
        guard = max(size, 1.0) * 1e-9
        if abs(val) <= guard:
            # fall back to exact scaled re-evaluation at higher precision
            return self._exact_sign()
        return 1 if val > 0 else -1

    def _exact_sign(self):
        # interval arithmetic with rational cos approximations
        from fractions import Fraction as F
        n = self.K.n
        prec = F(1, 10 ** 30)
        lo = F(0)
        hi = F(0)
        for k, c in enumerate(self.c):
            if c == 0:
                continue
            clo, chi = _cos_interval(F(2 * k, n), prec)
            if c > 0:
                lo += c * clo
                hi += c * chi
            else:
                lo += c * chi
                hi += c * clo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        return 0


def _cos_interval(x_of_pi, eps):
    """Interval for cos(pi * x) with rational x, width <= 2*eps."""
    from fractions import Fraction as F
    # range-reduce x into [0, 2)
    x = x_of_pi - 2 * (x_of_pi.numerator // (2 * x_of_pi.denominator))
    # pi interval (enough digits)
    PI_LO = F(3141592653589793238462643383279502884197, 10 ** 39)
    PI_HI = PI_LO + F(1, 10 ** 38)
    tlo = x * PI_LO
    thi = x * PI_HI
    # cos monotone pieces ignored: use Taylor at 0 with |t| <= 2*pi bound
    def cos_taylor(t, terms=60):
        acc = F(0)
        term = F(1)
        for k in range(terms):
            acc += term
            term = -term * t * t / ((2 * k + 1) * (2 * k + 2))
        return acc, abs(term)
    clo, e1 = cos_taylor(tlo)
    chi, e2 = cos_taylor(thi)
    lo = min(clo, chi) - e1 - e2 - eps
    hi = max(clo, chi) + e1 + e2 + eps
    return lo, hi


# ---------------------------------------------------------------------------
# Gauss sums / Milgram invariants of torsion quadratic modules
# ---------------------------------------------------------------------------

def milgram_invariant(T):
    """sigma in Z/8 with GaussSum(q) = |T|^{1/2} e^{2 pi i sigma / 8}.

    For the discriminant form of an even lattice, sigma = signature mod 8.
    Direct exact summation; |T| should stay desk-sized.
    """
    if T.group_order() == 1:
        return 0
    # common denominator of q-values over 2: q(x)/2 in Q/Z drives e^{2 pi i .}
    den = 1
    vals = []
    for x in T.elements():
        v = Fraction(T.q(x)) / 2
        vals.append(v)
        den = den * v.denominator // gcd(den, v.denominator)
    M = den if den % 8 == 0 else den * (8 // gcd(8, den))
    K = CyclotomicField(M)
    S = K.zero()
    for v in vals:
        k = int(v * M) % M
        S = S + K.zeta(k)
    # S = sqrt(|T|) * zeta_8^sigma; test each sigma
    size = T.group_order()
    for sigma in range(8):
        u = S * K.zeta((M // 8) * ((8 - sigma) % 8))
        if u == u.conj():
            sq = u * u
            if sq.is_rational() and sq.rational_value() == size:
                if u.real_sign() > 0:
                    return sigma
    raise AssertionError("Milgram phase extraction failed")
