"""Orthogonal groups of binary indefinite lattices.

The ambient space of a rank-2 indefinite lattice is a 2-dimensional etale
algebra Q(sqrt(D)) (Q x Q when D is a square); the lattice corresponds to a
module over the quadratic order of discriminant D/g^2 (g the form content),
and SO(L) is the image of the norm-one unit group of that order.  Improper
isometries are found by a bounded representation search.
"""

from fractions import Fraction
from math import gcd, isqrt

from .matrix import Mat


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def _pell_pm1(D):
    """Minimal (x, y), y > 0, with x^2 - D y^2 = +-1 via CF of sqrt(D)."""
    a0 = isqrt(D)
    P, Q = 0, 1
    a = a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    for _ in range(10 ** 6):
        if h * h - D * k * k in (1, -1):
            return h, k
        P = a * Q - P
        Q = (D - P * P) // Q
        a = (a0 + P) // Q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    raise RuntimeError("Pell search did not terminate")


def _icbrt(n):
    if n < 0:
        return 0
    x = int(round(n ** (1.0 / 3))) + 2
    while x * x * x > n:
        x -= 1
    return x


def pell_fundamental(D):
    """Smallest (t, u), u > 0, with t^2 - D u^2 = +-4 (D > 0 nonsquare).

    Integer-coordinate solutions come from the CF of sqrt(D); a strictly
    smaller half-integer solution (t, u both odd, D = 5 mod 8) can only be a
    cube root of the integer one, so the odd search range is tiny.
    """
    if D <= 0 or is_square(D):
        raise ValueError("need positive nonsquare discriminant")
    if D % 4 == 0:
        # t is forced even: (t/2)^2 - (D/4) u^2 = +-1
        x, y = _pell_pm1(D // 4)
        return 2 * x, y
    x1, y1 = _pell_pm1(D)
    best = (2 * x1, 2 * y1)
    if D % 8 == 5:
        ub = 2 * _icbrt(16 * (x1 + y1 * (isqrt(D) + 1))) // max(isqrt(D), 1) + 3
        ub = min(ub, 2 * y1)
        for u in range(1, ub + 1, 2):
            for s in (-4, 4):
                tt = D * u * u + s
                if tt > 0 and is_square(tt) and isqrt(tt) % 2 == 1:
                    if u < best[1]:
                        best = (isqrt(tt), u)
                    break
            if best[1] == u:
                break
    return best


def _form_of(G):
    """Integral form [a, b, c] with Q ~ a x^2 + b x y + c y^2 (possibly scaled)."""
    a2, b2, c2 = Fraction(G[0, 0], 2), Fraction(G[0, 1]), Fraction(G[1, 1], 2)
    den = 1
    for v in (a2, b2, c2):
        den = den * v.denominator // gcd(den, v.denominator)
    return int(a2 * den), int(b2 * den), int(c2 * den)


def representations(a, b, c, m, D=None):
    """All essentially distinct (x, y) with a x^2 + b x y + c y^2 = m.

    Indefinite forms only.  Complete up to the action of the proper
    automorphism group: every solution orbit meets the returned list.
    """
    D = b * b - 4 * a * c if D is None else D
    if D <= 0:
        raise ValueError("not indefinite")
    out = []
    if is_square(D):
        s = isqrt(D)
        if a == 0:
            # form = y (b x + c y)
            if m == 0:
                out = [(1, 0), (0, 0)] if False else [(1, 0)]
                if c == 0:
                    out.append((0, 1))
                return out
            for y in _divisors_signed(m):
                rem = m // y - c * y
                if b != 0 and rem % b == 0:
                    out.append((rem // b, y))
            return out
        # 4 a m = (2 a x + (b - s) y)(2 a x + (b + s) y)
        tgt = 4 * a * m
        if tgt == 0:
            # isotropic lines: y free along two rational lines; primitive reps
            for (p, q) in _isotropic_lines(a, b, c, s):
                out.append((p, q))
            return out
        for d in _divisors_signed(tgt):
            e = tgt // d
            if s and (e - d) % (2 * s) == 0:
                y = (e - d) // (2 * s)
                num = d - (b - s) * y
                if num % (2 * a) == 0:
                    x = num // (2 * a)
                    if a * x * x + b * x * y + c * y * y == m:
                        out.append((x, y))
        return out
    t, u = pell_fundamental(D)
    if t * t - D * u * u == -4:
        t, u = (t * t + D * u * u) // 2, t * u  # pass to the norm +1 unit
    sD = isqrt(D) + 1
    eps_ceiling = (abs(t) + u * sD) // 2 + 2
    bound = ((isqrt(abs(4 * a * m)) + 1) * eps_ceiling) // max(isqrt(D), 1) + 2
    for y in range(-bound, bound + 1):
        disc = (b * y) ** 2 - 4 * a * (c * y * y - m)
        if disc < 0 or not is_square(disc):
            continue
        r = isqrt(disc)
        for pm in (r, -r) if r else (0,):
            num = -b * y + pm
            if a != 0 and num % (2 * a) == 0:
                x = num // (2 * a)
                if a * x * x + b * x * y + c * y * y == m:
                    out.append((x, y))
    return out


def _divisors_signed(n):
    n = abs(n)
    ds = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            ds.extend([d, n // d])
    ds = sorted(set(ds))
    return [s * d for d in ds for s in (1, -1)]


def _isotropic_lines(a, b, c, s):
    # primitive integer directions with a x^2 + b x y + c y^2 = 0
    lines = []
    for (p, q) in (((s - b), 2 * a), ((-s - b), 2 * a)):
        g = gcd(p, q)
        if g:
            lines.append((p // g, q // g))
    return lines


class BinaryIndefinite:
    """O(L) description for a rank-2 indefinite lattice L.

    Attributes:
      form: integral [a, b, c] of the (scaled) quadratic form
      D: form discriminant; D0 = D / content^2 is the order discriminant
      split: True when D is a square (ambient algebra Q x Q)
      so_gens: generators of SO(L) as matrices (column action)
      so_infinite: True when SO(L) is infinite
      improper: a det = -1 element of O(L), or None
      order_disc: discriminant of the multiplier order
    """

    def __init__(self, L):
        sp, sm = L.signature()
        if (sp, sm) != (1, 1):
            raise ValueError("not an indefinite binary lattice")
        G = L.gram()
        a, b, c = _form_of(G)
        self.gram = G
        if a == 0:
            # move an anisotropic vector first: basis change (1,0) -> (1,1)
            if c != 0:
                self.change = Mat([[0, 1], [1, 0]])
            else:
                self.change = Mat([[1, 1], [0, 1]])
            GG = self.change * G * self.change.transpose()
            a, b, c = _form_of(GG)
        else:
            self.change = Mat.identity(2)
        assert a != 0
        self.form = (a, b, c)
        D = b * b - 4 * a * c
        self.D = D
        g = gcd(gcd(abs(a), abs(b)), abs(c))
        self.content = g
        self.order_disc = D // (g * g)
        self.split = is_square(self.order_disc)
        self.so_gens, self.so_infinite = self._so_gens()
        self.improper = self._find_improper()

    def _module_mult_matrix(self, p, q):
        """Matrix on lattice coords of multiplication by p + q*omega0.

        omega0 = (-b' + sqrt(D0))/2 with [a', b', c'] the content-free form;
        on the module basis (a, omega') multiplication by omega0 acts as
        [[0, -c'], [a', -b']], and lattice coordinates differ by y -> -y.
        """
        a, b, c = self.form
        g = self.content
        M = Mat([[0, -(c // g)], [a // g, -(b // g)]])
        U = Mat.identity(2).scale(p) + M.scale(q)
        J = Mat.diagonal([1, -1])
        U = J * U * J
        B = self.change
        if B != Mat.identity(2):
            U = B.inverse() * U * B
        return Mat([[int(x) for x in row] for row in U.a])

    def _so_gens(self):
        gens = [Mat.identity(2).scale(-1)]
        if self.split:
            return gens, False
        t, u = pell_fundamental(self.order_disc)
        x, y = t, u
        if x * x - self.order_disc * y * y == -4:
            # square the unit to reach norm +1
            x, y = (x * x + self.order_disc * y * y) // 2, x * y
        assert x * x - self.order_disc * y * y == 4
        # epsilon = (x + y sqrt(D0))/2 = p + y*omega0 with p = (x + y b')/2
        bp = self.form[1] // self.content
        if (x + y * bp) % 2:
            raise AssertionError("unit parity failure")
        U = self._module_mult_matrix((x + y * bp) // 2, y)
        if U.transpose() * self.gram * U != self.gram:
            raise AssertionError("norm-one unit does not preserve the gram")
        gens.append(U)
        return gens, True

    def _find_improper(self):
        """Determinant -1 isometry by bounded column search."""
        G = self.gram
        a, b, c = _form_of(G)
        # work in the original basis: columns w, v with the gram conditions
        n00, n01, n11 = G[0, 0], G[0, 1], G[1, 1]
        aa, bb, cc = _form_of(G)
        cands1 = representations(aa, bb, cc, aa)
        # saturate candidate list with a few unit translates for completeness
        cands1 = self._unit_saturate(cands1)
        for w in cands1:
            # second column v: b(w, v) = n01, Q(v) = n11/2; linear + quadratic
            # param: solve b(w, v) = n01 for v on a line, then intersect.
            sols = self._second_column(w, G)
            for v in sols:
                S = Mat([[w[0], v[0]], [w[1], v[1]]])
                if S.det() == -1 and S.transpose() * G * S == G:
                    return S
        return None

    def _unit_saturate(self, cands):
        out = set(cands)
        for U in self.so_gens:
            more = set()
            for w in out:
                img = (U[0, 0] * w[0] + U[0, 1] * w[1], U[1, 0] * w[0] + U[1, 1] * w[1])
                more.add(img)
            out |= more
        return sorted(out)

    def _second_column(self, w, G):
        # integer v with w^T G v = G01 and v^T G v = G11
        r0 = [G[0, 0] * w[0] + G[1, 0] * w[1], G[0, 1] * w[0] + G[1, 1] * w[1]]
        target = G[0, 1]
        sols = []
        # parametrize integer solutions of r0 . v = target
        g = gcd(r0[0], r0[1]) if (r0[0] or r0[1]) else 0
        if g == 0 or target % g:
            return []
        # particular solution via extended gcd
        x0, y0 = _ext_gcd_pair(r0[0] // g, r0[1] // g)
        x0 *= target // g
        y0 *= target // g
        # direction vector
        dx, dy = -r0[1] // g, r0[0] // g
        # Q(v(t)) = quadratic in t; find integer roots
        A = (G[0, 0] * dx * dx + 2 * G[0, 1] * dx * dy + G[1, 1] * dy * dy)
        B = 2 * (G[0, 0] * x0 * dx + G[0, 1] * (x0 * dy + y0 * dx) + G[1, 1] * y0 * dy)
        C = (G[0, 0] * x0 * x0 + 2 * G[0, 1] * x0 * y0 + G[1, 1] * y0 * y0) - G[1, 1]
        ts = _int_roots_quadratic(A, B, C)
        for t in ts:
            sols.append((x0 + t * dx, y0 + t * dy))
        return sols

    def order_of_O(self):
        """|O(L)| when finite, else None."""
        if self.so_infinite:
            return None
        base = 2  # {+-1}
        return base * (2 if self.improper is not None else 1)

    def generators_of_O(self):
        gens = list(self.so_gens)
        if self.improper is not None:
            gens.append(self.improper)
        return gens


def _ext_gcd_pair(p, q):
    # x, y with p x + q y = 1 for coprime p, q
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _int_roots_quadratic(A, B, C):
    if A == 0:
        if B == 0:
            return [0] if C == 0 else []
        return [-C // B] if C % B == 0 else []
    disc = B * B - 4 * A * C
    if disc < 0 or not is_square(disc):
        return []
    r = isqrt(disc)
    out = []
    for pm in (r, -r) if r else (0,):
        if (-B + pm) % (2 * A) == 0:
            out.append((-B + pm) // (2 * A))
    return sorted(set(out))
