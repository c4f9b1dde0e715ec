"""Finite quadratic/bilinear modules: discriminant forms, orthogonal groups,
anti-isometries, rho modules, subspace orbits.

A module is presented by generators g_1..g_r with orders d_1 | ... | d_r,
a quadratic form q(g_i) in Q/2Z and bilinear form b(g_i, g_j) in Q/Z with
b(x, y) = (q(x+y) - q(x) - q(y))/2.  Elements are coordinate tuples mod the
orders.  Bilinear-only modules (the bound rho case at p = 2) carry
quadratic=False and all q-related checks degrade to b.
"""

import itertools
from fractions import Fraction
from math import gcd


def _mod(x, m):
    """Reduce a Fraction into [0, m)."""
    fr = Fraction(x)
    num = fr.numerator % (m * fr.denominator)
    return Fraction(num, fr.denominator)


class TorsionQuadraticModule:
    def __init__(self, orders, qdiag, bmat, quadratic=True):
        self.orders = list(orders)
        self.r = len(orders)
        self.q_diag = [_mod(x, 2) for x in qdiag] if quadratic else [None] * self.r
        self.b_mat = [[_mod(bmat[i][j], 1) for j in range(self.r)]
                      for i in range(self.r)]
        self.quadratic = quadratic
        for d in self.orders:
            if d < 2:
                raise ValueError("orders must be > 1")

    # -- constructors ----------------------------------------------------
    @staticmethod
    def trivial():
        return TorsionQuadraticModule([], [], [])

    @staticmethod
    def from_q_matrix(orders, qmat, quadratic=True):
        """qmat: symmetric rational matrix, diagonal = q values, off = b."""
        r = len(orders)
        qd = [qmat[i][i] for i in range(r)]
        bm = [[qmat[i][j] if i != j else _mod(Fraction(qmat[i][i]) / 2 * 1, 1)
               for j in range(r)] for i in range(r)]
        # b(g_i, g_i) = q(g_i) mod Z
        for i in range(r):
            bm[i][i] = _mod(qd[i], 1)
        return TorsionQuadraticModule(orders, qd, bm, quadratic)

    @staticmethod
    def cyclic(n, qval):
        return TorsionQuadraticModule([n], [qval], [[_mod(qval, 1)]])

    def group_order(self):
        o = 1
        for d in self.orders:
            o *= d
        return o

    # -- element arithmetic -------------------------------------------------
    def reduce(self, x):
        return tuple(int(c) % d for c, d in zip(x, self.orders))

    def zero(self):
        return tuple([0] * self.r)

    def gens(self):
        return [tuple(1 if j == i else 0 for j in range(self.r))
                for i in range(self.r)]

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def smul(self, c, x):
        return tuple((c * a) % d for a, d in zip(x, self.orders))

    def elements(self):
        for tup in itertools.product(*[range(d) for d in self.orders]):
            yield tup

    def element_order(self, x):
        o = 1
        for c, d in zip(x, self.orders):
            if c:
                o = o * (d // gcd(d, c)) // gcd(o, d // gcd(d, c))
        return o

    def q(self, x):
        if not self.quadratic:
            raise ValueError("bilinear-only module")
        acc = Fraction(0)
        for i in range(self.r):
            if x[i]:
                acc += x[i] * x[i] * self.q_diag[i]
        for i in range(self.r):
            for j in range(i + 1, self.r):
                if x[i] and x[j]:
                    acc += 2 * x[i] * x[j] * self.b_mat[i][j]
        return _mod(acc, 2)

    def b(self, x, y):
        acc = Fraction(0)
        for i in range(self.r):
            for j in range(self.r):
                if x[i] and y[j]:
                    acc += x[i] * y[j] * self.b_mat[i][j]
        return _mod(acc, 1)

    # -- structure ---------------------------------------------------------
    def is_nondegenerate(self):
        for x in self.elements():
            if x == self.zero():
                continue
            if all(self.b(x, y) == 0 for y in self.gens()):
                return False
        return True

    def radical_gens(self):
        out = []
        for x in self.elements():
            if x != self.zero() and all(self.b(x, g) == 0 for g in self.gens()):
                out.append(x)
        return out

    def orthogonal_gens(self, sub_gens):
        """Generators of the orthogonal complement of a subgroup (brute)."""
        out = [x for x in self.elements()
               if all(self.b(x, s) == 0 for s in sub_gens)]
        return out

    def submodule(self, gens_list, quadratic=None):
        """Subgroup generated by the given elements, as a fresh module.

        Returns (module, embedding) with embedding mapping new generators to
        elements of self.
        """
        quadratic = self.quadratic if quadratic is None else quadratic
        if not gens_list:
            return TorsionQuadraticModule.trivial(), []
        size_bound = self.group_order()
        if size_bound <= 1048576:
            elems = {self.zero()}
            frontier = [self.zero()]
            gl = [self.reduce(g) for g in gens_list]
            while frontier:
                nxt = []
                for e in frontier:
                    for g in gl:
                        s = self.add(e, g)
                        if s not in elems:
                            elems.add(s)
                            nxt.append(s)
                frontier = nxt
            return self._module_on_elements(elems, quadratic)
        raise ValueError("submodule too large for enumeration")

    def _module_on_elements(self, elems, quadratic):
        """Build a presented module from an explicit subgroup element set."""
        n = len(elems)
        if n == 1:
            return TorsionQuadraticModule.trivial(), []
        # find invariant-factor generators greedily
        elems = set(elems)
        gens = []
        sub = {self.zero()}
        while len(sub) < n:
            best = None
            for e in elems:
                if e in sub:
                    continue
                o = self.element_order(e)
                if best is None or o > best[0]:
                    best = (o, e)
            o, e = best
            gens.append((e, o))
            new = set()
            for s in sub:
                acc = s
                for _ in range(o):
                    new.add(acc)
                    acc = self.add(acc, e)
            sub = new
        gens.reverse()  # increasing orders
        orders = [o for _, o in gens]
        embed = [e for e, _ in gens]
        qd = [self.q(e) if quadratic and self.quadratic else Fraction(0)
              for e in embed]
        bm = [[self.b(x, y) for y in embed] for x in embed]
        mod = TorsionQuadraticModule(orders, qd, bm,
                                     quadratic and self.quadratic)
        return mod, embed

    def primary_part(self, p):
        """(module, embedding) of the p-part."""
        gens = []
        for i, d in enumerate(self.orders):
            pk = 1
            while d % p == 0:
                d //= p
                pk *= p
            if pk > 1:
                g = [0] * self.r
                g[i] = self.orders[i] // pk
                gens.append(tuple(g))
        if not gens:
            return TorsionQuadraticModule.trivial(), []
        return self.submodule(gens)

    def primes(self):
        ps = set()
        for d in self.orders:
            dd = d
            f = 2
            while f * f <= dd:
                if dd % f == 0:
                    ps.add(f)
                    while dd % f == 0:
                        dd //= f
                f += 1
            if dd > 1:
                ps.add(dd)
        return sorted(ps)

    def orthogonal_sum(self, other):
        orders = self.orders + other.orders
        qd = list(self.q_diag) + list(other.q_diag)
        r1, r2 = self.r, other.r
        bm = [[Fraction(0)] * (r1 + r2) for _ in range(r1 + r2)]
        for i in range(r1):
            for j in range(r1):
                bm[i][j] = self.b_mat[i][j]
        for i in range(r2):
            for j in range(r2):
                bm[r1 + i][r1 + j] = other.b_mat[i][j]
        quadratic = self.quadratic and other.quadratic
        if not quadratic:
            qd = [Fraction(0)] * (r1 + r2)
        return TorsionQuadraticModule(orders, qd, bm, quadratic)

    def twist(self, c):
        """Forms multiplied by the integer c."""
        qd = [x * c for x in self.q_diag] if self.quadratic else self.q_diag
        bm = [[x * c for x in row] for row in self.b_mat]
        return TorsionQuadraticModule(self.orders, qd, bm, self.quadratic)

    def key(self):
        qpart = tuple(self.q_diag) if self.quadratic else ("b-only",)
        return (tuple(self.orders), qpart,
                tuple(tuple(row) for row in self.b_mat))


class TorsionIsometry:
    """Map of torsion modules given by images of the source generators."""

    __slots__ = ("src", "dst", "images")

    def __init__(self, src, dst, images):
        self.src = src
        self.dst = dst
        self.images = [dst.reduce(im) for im in images]

    def __call__(self, x):
        acc = self.dst.zero()
        for c, im in zip(x, self.images):
            if c:
                acc = self.dst.add(acc, self.dst.smul(c, im))
        return acc

    def compose(self, other):
        """self o other (apply other first)."""
        return TorsionIsometry(other.src, self.dst,
                               [self(im) for im in other.images])

    def inverse(self):
        # brute inversion via solving on generators (small modules)
        src, dst = self.src, self.dst
        images = []
        table = {}
        for x in src.elements():
            table[self(x)] = x
        for g in dst.gens():
            if g not in table:
                raise ValueError("not invertible")
            images.append(table[g])
        return TorsionIsometry(dst, src, images)

    def is_identity(self):
        return self.src is self.dst and \
            self.images == self.src.gens()

    def key(self):
        return tuple(self.images)

    def preserves_q(self, sign=1):
        src, dst = self.src, self.dst
        if not (src.quadratic and dst.quadratic):
            return self.preserves_b(sign)
        for g in src.gens():
            if _mod(sign * src.q(g), 2) != dst.q(self(g)):
                return False
        for i, g in enumerate(src.gens()):
            for h in src.gens()[i + 1:]:
                if _mod(sign * src.b(g, h), 1) != dst.b(self(g), self(h)):
                    return False
        return True

    def preserves_b(self, sign=1):
        src, dst = self.src, self.dst
        for i, g in enumerate(src.gens()):
            for h in src.gens()[i:]:
                if _mod(sign * src.b(g, h), 1) != dst.b(self(g), self(h)):
                    return False
        return True

    def is_group_hom(self):
        # orders must be respected
        for g, im, d in zip(self.src.gens(), self.images, self.src.orders):
            if self.dst.element_order(im) not in _divisors(d):
                return False
        return True


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.extend([d, n // d])
        d += 1
    return sorted(set(out))


# ---------------------------------------------------------------------------
# isometry search (backtracking with forced equivariant closure)
# ---------------------------------------------------------------------------

def find_isometry(A, B, sign=1, equivariant_with=None, find_all=False,
                  budget=4000000):
    """Isometries A -> B with q_B(phi x) = sign * q_A(x).

    equivariant_with: optional (f_A, f_B) TorsionIsometries; then
    phi o f_A = f_B o phi.  Returns one TorsionIsometry (or list if find_all);
    None/[] when none exists.  Exhaustive within the budget.
    """
    if A.group_order() != B.group_order():
        return [] if find_all else None
    if A.group_order() > budget:
        raise ValueError("module too large for isometry search")
    if A.r == 0:
        phi = TorsionIsometry(A, B, [])
        return [phi] if find_all else phi
    fA, fB = (equivariant_with if equivariant_with else (None, None))
    bilinear_only = not (A.quadratic and B.quadratic)

    # candidate images per generator: matching order and q-value
    gens = A.gens()
    Bels = list(B.elements())
    cand = []
    for i, g in enumerate(gens):
        want_o = A.element_order(g)
        opts = []
        for y in Bels:
            if B.element_order(y) != want_o:
                continue
            if not bilinear_only:
                if B.q(y) != _mod(sign * A.q(g), 2):
                    continue
            else:
                if B.b(y, y) != _mod(sign * A.b(g, g), 1):
                    continue
            opts.append(y)
        cand.append(opts)

    results = []

    def compatible(assign, g, y):
        for h, z in assign.items():
            if B.b(y, z) != _mod(sign * A.b(g, h), 1):
                return False
        if not bilinear_only and B.q(y) != _mod(sign * A.q(g), 2):
            return False
        return True

    def push_closure(assign, g, y):
        """Add g -> y plus equivariant consequences; None on conflict."""
        new = dict(assign)
        stack = [(g, y)]
        while stack:
            x, im = stack.pop()
            x = A.reduce(x)
            im = B.reduce(im)
            if x in new:
                if new[x] != im:
                    return None
                continue
            if not compatible(new, x, im):
                return None
            # order check
            if B.element_order(im) != A.element_order(x) and x in gens:
                return None
            new[x] = im
            if fA is not None:
                stack.append((fA(x), fB(im)))
        return new

    def rec(i, assign):
        if i == len(gens):
            phi = TorsionIsometry(A, B, [assign[g] for g in gens])
            # verify bijectivity: image subgroup order equals |B|
            imgs = set()
            frontier = [B.zero()]
            imgs.add(B.zero())
            while frontier:
                nx = []
                for e in frontier:
                    for g in gens:
                        s = B.add(e, assign[g])
                        if s not in imgs:
                            imgs.add(s)
                            nx.append(s)
                frontier = nx
            if len(imgs) != B.group_order():
                return False
            if fA is not None:
                # full equivariance check on generators
                for g in gens:
                    if phi(fA(g)) != fB(phi(g)):
                        return False
            results.append(phi)
            return not find_all
        g = gens[i]
        if g in assign:
            return rec(i + 1, assign)
        for y in cand[i]:
            upd = push_closure(assign, g, y)
            if upd is not None:
                if rec(i + 1, upd):
                    return True
        return False

    rec(0, {})
    if find_all:
        return results
    return results[0] if results else None


def find_anti_isometry(A, B, equivariant_with=None):
    """phi with q_A(x) = -q_B(phi(x)); bilinear-only when either side is."""
    return find_isometry(A, B, sign=-1, equivariant_with=equivariant_with)


def _reduce_generating_set(T, elements):
    """Greedy small generating set for a full list of isometries of T."""
    order = len(elements)
    gens = []
    seen = {tuple(T.gens())}
    for phi in sorted(elements, key=lambda m: m.key()):
        if phi.key() in seen:
            continue
        gens.append(phi)
        changed = True
        while changed:
            changed = False
            for k in list(seen):
                base = TorsionIsometry(T, T, list(k))
                for g in gens:
                    comp = g.compose(base).key()
                    if comp not in seen:
                        seen.add(comp)
                        changed = True
        if len(seen) == order:
            break
    return gens, order


def orthogonal_group_gens(T, budget=6561):
    """Generators of O(T) with certified order (exhaustive backtracking).

    Raises for |T| beyond the budget; callers with larger modules go
    through the normal-form generator path instead.
    """
    if T.group_order() > budget:
        raise ValueError("too large")
    if T.r == 0:
        return [], 1
    els = find_isometry(T, T, sign=1, find_all=True)
    return _reduce_generating_set(T, els)


def centralizer_gens(T, Df, budget=6561):
    """Generators of the centralizer of Df in O(T), with order."""
    if T.group_order() > budget:
        raise ValueError("too large")
    if T.r == 0:
        return [], 1
    els = find_isometry(T, T, sign=1, equivariant_with=(Df, Df), find_all=True)
    return _reduce_generating_set(T, els)


# ---------------------------------------------------------------------------
# subgroup orbit machinery
# ---------------------------------------------------------------------------

def subgroups_fp(T, p, dim, f=None, must_contain=()):
    """All subgroups of T killed by p, of F_p-dimension dim, f-stable,
    containing the given elements.  Returned as sorted tuples of elements.
    """
    # p-torsion subspace
    V = [x for x in T.elements() if T.smul(p, x) == T.zero()]
    V = sorted(V)
    base = set()
    base.add(T.zero())
    for m in must_contain:
        cur = list(base)
        for c in range(1, p):
            for e in cur:
                base.add(T.add(e, T.smul(c, m)))
    out = []
    seen = set()

    def span_of(gens_list):
        elems = {T.zero()}
        frontier = [T.zero()]
        while frontier:
            nxt = []
            for e in frontier:
                for g in gens_list:
                    s = T.add(e, g)
                    if s not in elems:
                        elems.add(s)
                        nxt.append(s)
            frontier = nxt
        return frozenset(elems)

    must_span = span_of(list(must_contain)) if must_contain else frozenset({T.zero()})
    dim0 = 0
    sz = len(must_span)
    while sz > 1:
        sz //= p
        dim0 += 1

    def rec(current_span, current_dim):
        if current_dim == dim:
            key = current_span
            if key not in seen:
                seen.add(key)
                if f is None or _stable_under(T, current_span, f):
                    out.append(key)
            return
        for v in V:
            if v in current_span:
                continue
            new_span = span_of(list(current_span) + [v])
            rec(new_span, current_dim + 1)

    rec(must_span, dim0)
    return out


def _stable_under(T, span, f):
    return all(f(x) in span for x in span)


def stable_subgroup_orbits(T, p, dim, f=None, must_contain=(),
                           acting_gens=()):
    """Orbit representatives (with stabilizer generators) of f-stable
    dimension-dim subgroups under the acting group.

    acting_gens: TorsionIsometries of T.  Returns list of
    (subgroup elements frozenset, stabilizer generator list).
    """
    subs = subgroups_fp(T, p, dim, f=f, must_contain=must_contain)
    subs_set = set(subs)
    identity = TorsionIsometry(T, T, T.gens())
    orbits = []
    unseen = set(subs_set)
    while unseen:
        s0 = sorted(unseen, key=lambda fs: tuple(sorted(fs)))[0]
        # orbit with transversal, Schreier generators for the stabilizer
        transversal = {s0: identity}
        frontier = [s0]
        schreier = []
        seen_keys = set()
        while frontier:
            nxt = []
            for s in frontier:
                for g in acting_gens:
                    img = frozenset(g(x) for x in s)
                    if img not in transversal:
                        transversal[img] = g.compose(transversal[s])
                        nxt.append(img)
                    else:
                        # Schreier generator: t_img^{-1} g t_s stabilizes s0
                        cand = transversal[img].inverse().compose(
                            g.compose(transversal[s]))
                        k = cand.key()
                        if k not in seen_keys and not cand.is_identity():
                            seen_keys.add(k)
                            schreier.append(cand)
            frontier = nxt
        orbits.append((s0, schreier, len(transversal)))
        unseen -= set(transversal)
    return orbits
