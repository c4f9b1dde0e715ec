"""Small permutation group kernel: Schreier-Sims chains for orders and
membership, plus closure of finite matrix groups.  Degrees stay in the
hundreds here (short-vector actions, discriminant groups), so the plain
deterministic algorithm is enough.
"""


def mulclose(gens, mul, one, cap=2000000):
    """Closure of a finite set of group elements (hashable) under mul."""
    seen = {one}
    frontier = [one]
    gens = [g for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > cap:
                        raise RuntimeError("group closure exceeds cap")
        frontier = nxt
    return seen


class PermGroup:
    """Permutation group on 0..n-1 with a Schreier-Sims stabilizer chain."""

    def __init__(self, gens, degree):
        self.degree = degree
        self.gens = [tuple(g) for g in gens]
        self._chain = None

    @staticmethod
    def _mul(p, q):
        # apply p first, then q
        return tuple(q[p[i]] for i in range(len(p)))

    @staticmethod
    def _inv(p):
        out = [0] * len(p)
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)

    def _build(self):
        n = self.degree
        identity = tuple(range(n))
        base = []
        strong = [g for g in self.gens if g != identity]
        # chain data: list of (point, {image: transversal perm}, gens at level)
        chain = []

        def orbit_transversal(pt, gens):
            trans = {pt: identity}
            queue = [pt]
            while queue:
                a = queue.pop()
                for g in gens:
                    b = g[a]
                    if b not in trans:
                        trans[b] = self._mul(trans[a], g)
                        queue.append(b)
            return trans

        def sift(level, perm):
            for lv in range(level, len(chain)):
                pt, trans, _ = chain[lv]
                img = perm[pt]
                if img not in trans:
                    return perm, lv
                perm = self._mul(perm, self._inv(trans[img]))
            return perm, len(chain)

        def add_generator(level, perm):
            if perm == identity:
                return
            residue, lv = sift(level, perm)
            if residue == identity:
                return
            if lv == len(chain):
                # start a new level at a moved point
                pt = next(i for i in range(n) if residue[i] != i)
                chain.append((pt, {pt: identity}, []))
            pt, trans, lgens = chain[lv]
            lgens.append(residue)
            # rebuild orbit/transversal and push Schreier generators down
            newtrans = orbit_transversal(pt, lgens)
            chain[lv] = (pt, newtrans, lgens)
            for a, ta in list(newtrans.items()):
                for g in lgens:
                    sg = self._mul(ta, g)
                    b = g[a]
                    schreier = self._mul(sg, self._inv(newtrans[b]))
                    if schreier != identity:
                        add_generator(lv + 1, schreier)

        for g in strong:
            add_generator(0, g)
        self._chain = chain

    def order(self):
        if self._chain is None:
            self._build()
        o = 1
        for _, trans, _ in self._chain:
            o *= len(trans)
        return o

    def contains(self, perm):
        if self._chain is None:
            self._build()
        n = self.degree
        identity = tuple(range(n))
        p = tuple(perm)
        for pt, trans, _ in self._chain:
            img = p[pt]
            if img not in trans:
                return False
            p = self._mul(p, self._inv(trans[img]))
        return p == identity


def matrix_group_order(gens_mats, points, act):
    """Order of the group generated by matrices via a faithful action.

    points: list of hashable points closed under the action; act(M, pt) -> pt.
    """
    index = {p: i for i, p in enumerate(points)}
    perms = []
    for M in gens_mats:
        perm = [0] * len(points)
        for p, i in index.items():
            q = act(M, p)
            perm[i] = index[q]
        perms.append(tuple(perm))
    return PermGroup(perms, len(points)).order()
