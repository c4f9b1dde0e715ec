"""Definite-lattice machinery: short vector enumeration, automorphism groups
by gram-pruned backtracking with a stabilizer chain, isometry testing, and the
equivariant variants used for lattices with isometry.

All vectors here are coordinate tuples with respect to the lattice basis;
isometries are matrices acting on column coordinate vectors.
"""

from fractions import Fraction
from math import isqrt

from .matrix import Mat
from .permgroup import PermGroup


def _cholesky(G):
    """Rational Cholesky data: Q(x) = sum_i d_i (x_i + sum_{j>i} u[i][j] x_j)^2."""
    n = G.rows
    a = [[Fraction(G[i, j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("form not positive definite")
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= d[i] * u[i][k] * u[i][l]
                a[l][k] = a[k][l]
    return d, u


def _floor_sqrt_frac(x):
    if x < 0:
        return -1
    return isqrt(x.numerator * x.denominator) // x.denominator


def short_vectors(G, max_norm):
    """All v != 0 with v G v^T <= max_norm, one per +-pair, G positive definite.

    Canonical representative: first nonzero coordinate positive.
    Returns a list of (coords tuple, norm).
    """
    n = G.rows
    if n == 0:
        return []
    d, u = _cholesky(G)
    out = []
    x = [0] * n

    def rec(i, remaining):
        # remaining budget for coordinates 0..i
        if i < 0:
            if any(x):
                v = tuple(x)
                norm = max_norm - remaining
                out.append((v, norm))
            return
        t = sum(u[i][j] * x[j] for j in range(i + 1, n))
        bound = remaining / d[i]
        r = _floor_sqrt_frac(bound)
        import math
        lo = math.floor(-t) - r - 1
        hi = math.ceil(-t) + r + 1
        for xi in range(lo, hi + 1):
            val = d[i] * (xi + t) ** 2
            if val <= remaining:
                x[i] = xi
                rec(i - 1, remaining - val)
        x[i] = 0

    rec(n - 1, Fraction(max_norm))
    # filter to canonical signs, drop zero, recompute exact norms
    canon = []
    seen = set()
    for v, norm in out:
        w = v
        for c in v:
            if c < 0:
                w = tuple(-y for y in v)
                break
            if c > 0:
                break
        if w in seen:
            continue
        seen.add(w)
        canon.append((w, norm))
    canon.sort()
    return canon


def vectors_of_norm(L, value, both_signs=False):
    """Vectors of given self-pairing in a definite lattice (coordinate tuples).

    Canonical sign (first nonzero coordinate positive) unless both_signs.
    """
    G = L.gram()
    sp, sm = L.signature()
    if sp and sm:
        raise ValueError("not definite")
    sign = 1 if sm == 0 else -1
    if value == 0:
        return []
    if sign * value < 0:
        return []
    Gp = G.scale(sign)
    vs = [v for v, norm in short_vectors(Gp, sign * value) if norm == sign * value]
    if both_signs:
        vs = vs + [tuple(-x for x in v) for v in vs]
    return vs


class _Backtracker:
    """Gram-pruned search for isometries between definite lattices.

    Optionally equivariant: push(v) lists forced images, i.e. assigning
    x -> y also forces f(x) -> g(y) for lattice isometries f, g.
    """

    def __init__(self, G_src, G_dst, f_src=None, f_dst=None):
        self.Gs = G_src
        self.Gd = G_dst
        self.n = G_src.rows
        self.fs = f_src
        self.fd = f_dst
        from .lattice import signature_of
        sp, sm = signature_of(G_dst)
        if sp and sm:
            raise ValueError("backtracking needs a definite target")
        self.sign = 1 if sm == 0 else -1
        self._pools = {}

    def _pool(self, norm):
        if norm not in self._pools:
            Gp = self.Gd.scale(self.sign)
            target = self.sign * norm
            if target < 0:
                self._pools[norm] = []
            else:
                vs = [v for v, nn in short_vectors(Gp, target) if nn == target]
                vs = vs + [tuple(-x for x in v) for v in vs]
                self._pools[norm] = vs
        return self._pools[norm]

    @staticmethod
    def _pair(G, v, w):
        s = 0
        for i, x in enumerate(v):
            if x:
                row = G.a[i]
                s += x * sum(row[j] * w[j] for j in range(len(w)) if w[j])
        return s

    def _apply(self, F, v):
        # F acts on columns: (F @ v)
        return tuple(sum(F.a[i][j] * v[j] for j in range(self.n) if v[j])
                     for i in range(self.n))

    def search(self, prescribed, find_all=False, collect=None, limit=None):
        """Extend prescribed partial map {src tuple: dst tuple} to isometries.

        Returns list of matrices (columns = images of unit vectors).
        """
        n = self.n
        unit = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        results = []

        # maintain: dom (list of independent src vectors), img (their images)
        def close_pairs(pairs, dom, img):
            """Insert pairs with forced equivariant closure; gram+linear checks.

            Returns updated (dom, img) or None on conflict.
            """
            queue = list(pairs)
            dom = list(dom)
            img = list(img)
            while queue:
                x, y = queue.pop()
                # linear consistency
                M = Mat([list(v) for v in dom]) if dom else None
                sol = None
                if dom:
                    sol = M.transpose().solve_right(Mat([[c] for c in x]))
                if sol is not None:
                    coeffs = [sol[i, 0] for i in range(len(dom))]
                    yy = tuple(sum(coeffs[k] * img[k][i] for k in range(len(dom)))
                               for i in range(n))
                    if tuple(yy) != tuple(y):
                        return None
                    continue
                # gram compatibility with existing independents
                if self._pair(self.Gs, x, x) != self._pair(self.Gd, y, y):
                    return None
                for v, w in zip(dom, img):
                    if self._pair(self.Gs, x, v) != self._pair(self.Gd, y, w):
                        return None
                dom.append(x)
                img.append(y)
                if self.fs is not None:
                    fx = self._apply(self.fs, x)
                    fy = self._apply(self.fd, y)
                    queue.append((fx, fy))
            return dom, img

        start = close_pairs(list(prescribed.items()), [], [])
        if start is None:
            return []

        def finish(dom, img):
            # solve F with F x = y for all pairs; need full rank
            M = Mat([list(v) for v in dom]).transpose()
            Y = Mat([list(w) for w in img]).transpose()
            X = M.solve_right(Mat.identity(n)) if len(dom) == n else None
            if X is None:
                return None
            F = Y * X
            if not F.is_integral():
                return None
            Fi = F.inverse()
            if not Fi.is_integral():
                return None
            return F

        def rec(dom, img):
            if limit is not None and len(results) >= limit:
                return
            # find first unit vector not in span
            M = Mat([list(v) for v in dom]) if dom else None
            nxt = None
            for e in unit:
                if not dom:
                    nxt = e
                    break
                sol = M.transpose().solve_right(Mat([[c] for c in e]))
                if sol is None:
                    nxt = e
                    break
            if nxt is None:
                F = finish(dom, img)
                if F is not None:
                    results.append(F)
                    if collect is not None:
                        collect(F)
                return
            norm = self._pair(self.Gs, nxt, nxt)
            for w in self._pool(norm):
                upd = close_pairs([(nxt, w)], dom, img)
                if upd is None:
                    continue
                rec(*upd)
                if limit is not None and len(results) >= limit:
                    return
                if not find_all and results:
                    return

        rec(*start)
        return results


def isometry_definite(L, M, equivariant=None):
    """One isometry L -> M (definite), as a coordinate matrix X: G_L = X^T G_M X.

    equivariant: optional pair (f, g) of isometries; then X f = g X.
    """
    if L.rank != M.rank:
        return None
    GL, GM = L.gram(), M.gram()
    if GL.det() != GM.det():
        return None
    f = g = None
    if equivariant is not None:
        f, g = equivariant
    bt = _Backtracker(GL, GM, f, g)
    res = bt.search({}, find_all=False, limit=1)
    return res[0] if res else None


def all_isometries(L, M, equivariant=None):
    GL, GM = L.gram(), M.gram()
    f = g = None
    if equivariant is not None:
        f, g = equivariant
    bt = _Backtracker(GL, GM, f, g)
    return bt.search({}, find_all=True)


def automorphism_group_definite(L, centralizing=None):
    """Generators and order of O(L) (or of the centralizer of an isometry).

    Returns (gens, order) with gens a list of matrices acting on columns.
    Stabilizer-chain: fix coordinate unit vectors one at a time; at each level
    the candidate images found by backtracking either lie in the known orbit
    or contribute a new generator.
    """
    n = L.rank
    if n == 0:
        return [], 1
    G = L.gram()
    f = centralizing
    bt = _Backtracker(G, G, f, f)
    unit = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    gens = []
    order = 1

    def apply(F, v):
        return tuple(sum(F.a[i][j] * v[j] for j in range(n) if v[j]) for i in range(n))

    # chain from the last level upwards
    for level in range(n - 1, -1, -1):
        fixed = {unit[i]: unit[i] for i in range(level)}
        base_pt = unit[level]
        # candidate images: correct norm + products with fixed vectors
        norm = G[level, level]
        cands = []
        for w in bt._pool(norm):
            ok = all(bt._pair(G, unit[i], base_pt) == bt._pair(G, unit[i], w)
                     for i in range(level))
            if ok:
                cands.append(w)
        # orbit of base_pt under current gens (which all fix unit[0..level-1])
        level_gens = [g for g in gens]
        orbit = {base_pt}
        queue = [base_pt]
        while queue:
            a = queue.pop()
            for gmat in level_gens:
                b = apply(gmat, a)
                if b not in orbit:
                    orbit.add(b)
                    queue.append(b)
        for w in cands:
            if w in orbit:
                continue
            pres = dict(fixed)
            pres[base_pt] = w
            found = bt.search(pres, find_all=False, limit=1)
            if found:
                gens.append(found[0])
                level_gens.append(found[0])
                queue = list(orbit)
                while queue:
                    a = queue.pop()
                    for gmat in level_gens:
                        b = apply(gmat, a)
                        if b not in orbit:
                            orbit.add(b)
                            queue.append(b)
        order *= len(orbit)
    if not gens:
        gens = [Mat.identity(n)]
    return gens, order


def group_elements(gens, n, cap=2000000):
    """All elements of the matrix group generated by gens (column action)."""
    one = Mat.identity(n)
    seen = {one.key(): one}
    frontier = [one]
    while frontier:
        nxt = []
        for A in frontier:
            for g in gens:
                B = A * g
                k = B.key()
                if k not in seen:
                    seen[k] = B
                    nxt.append(B)
                    if len(seen) > cap:
                        raise RuntimeError("group too large for enumeration")
        frontier = nxt
    return list(seen.values())
