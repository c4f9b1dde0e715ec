"""p-adic Jordan decompositions of symmetric rational matrices, 2-adic block
normalization, and the rho_k modules attached to Jordan scales.

All arithmetic is rational; pivot choices are governed by p-adic valuations,
which makes the results valid over Z_p.
"""

from fractions import Fraction

from .matrix import Mat
from .spinor import legendre, unit_part, vp
from .torsion import TorsionQuadraticModule


def _val(x, p):
    if x == 0:
        return None
    return vp(x, p)


def jordan_decomposition(G, p, with_transform=False):
    """Jordan splitting of a nondegenerate symmetric rational matrix over Z_p.

    Returns a list of (scale, block) with strictly increasing scales and each
    block p-unimodular (p-integral entries, unit determinant), plus the
    transformation T (rows = new basis) with T G T^T = blockdiag(p^k block_k)
    when with_transform is set.
    """
    n = G.rows
    a = [[Fraction(G[i, j]) for j in range(n)] for i in range(n)]
    T = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    active = list(range(n))
    pieces = []  # (scale, [indices])

    def addrow(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        for k in range(n):
            a[k][dst] = a[k][dst] + c * a[k][src]
        T[dst] = [x + c * y for x, y in zip(T[dst], T[src])]

    while active:
        vmin = None
        pos = None
        for i in active:
            for j in active:
                v = _val(a[i][j], p)
                if v is not None and (vmin is None or v < vmin):
                    vmin = v
                    pos = (i, j)
        if pos is None:
            raise ValueError("degenerate form")
        i, j = pos
        diag_pos = None
        for k in active:
            if _val(a[k][k], p) == vmin:
                diag_pos = k
                break
        if diag_pos is None and p != 2:
            addrow(i, j, 1)
            diag_pos = i
        if diag_pos is not None:
            piv = diag_pos
            d = a[piv][piv]
            for k in list(active):
                if k != piv and a[k][piv] != 0:
                    addrow(k, piv, -a[k][piv] / d)
            pieces.append((vmin, [piv]))
            active.remove(piv)
        else:
            # p = 2, minimal valuation strictly off-diagonal: 2x2 pivot
            if i == j:
                raise AssertionError("pivot bookkeeping")
            B = Mat([[a[i][i], a[i][j]], [a[j][i], a[j][j]]])
            Binv = B.inverse()
            for k in list(active):
                if k in (i, j):
                    continue
                ci, cj = a[k][i], a[k][j]
                if ci or cj:
                    x = -(ci * Binv[0, 0] + cj * Binv[1, 0])
                    y = -(ci * Binv[0, 1] + cj * Binv[1, 1])
                    if x:
                        addrow(k, i, x)
                    if y:
                        addrow(k, j, y)
            pieces.append((vmin, [i, j]))
            active.remove(i)
            active.remove(j)

    # group pieces by scale
    by_scale = {}
    order = []
    for scale, idxs in pieces:
        if scale not in by_scale:
            by_scale[scale] = []
            order.append(scale)
        by_scale[scale].extend(idxs)
    out = []
    perm = []
    for scale in sorted(by_scale):
        idxs = by_scale[scale]
        blk = Mat([[a[x][y] / Fraction(p) ** scale for y in idxs] for x in idxs])
        out.append((scale, blk))
        perm.extend(idxs)
    if with_transform:
        Tm = Mat([T[i] for i in perm])
        return out, Tm
    return out


def two_adic_diagonalize(U):
    """Diagonal unit entries of a 2-adically unimodular matrix of odd type.

    Returns (units, even_remainder) where units is the list of odd diagonal
    values (2-adic units, as Fractions) of a diagonalization and
    even_remainder is an even-type unimodular block (or None).  Uses the
    mixing move f -> f + e to pull even vectors into odd pivots whenever an
    odd diagonal is available somewhere.
    """
    n = U.rows
    a = [[Fraction(U[i, j]) for j in range(n)] for i in range(n)]
    active = list(range(n))
    units = []

    def addrow(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        for k in range(n):
            a[k][dst] = a[k][dst] + c * a[k][src]

    last_odd = None
    while active:
        piv = None
        for k in active:
            if vp(a[k][k], 2) == 0 if a[k][k] != 0 else False:
                piv = k
                break
        if piv is None:
            if last_odd is None:
                break  # fully even type
            # mix the last odd pivot back in to create an odd diagonal
            k = active[0]
            addrow(k, last_odd, 1)
            # re-orthogonalize the previous pivot against k
            d = a[last_odd][last_odd]
            addrow(k, last_odd, -a[k][last_odd] / d)
            continue
        d = a[piv][piv]
        for k in list(active):
            if k != piv and a[k][piv] != 0:
                addrow(k, piv, -a[k][piv] / d)
        units.append(unit_part(d, 2) if False else d)
        last_odd = piv
        active.remove(piv)
    if not active:
        return units, None
    rem = Mat([[a[x][y] for y in active] for x in active])
    return units, rem


def two_adic_block_data(U):
    """(parity, det_unit_mod8, oddity_mod8) of a 2-adic unimodular block.

    parity is 'odd' or 'even'; oddity is None for even type.
    """
    n = U.rows
    if n == 0:
        return ("even", 1, None)
    det = U.det()
    u = unit_part(det, 2)
    det8 = (u.numerator * pow(u.denominator, -1, 8)) % 8
    odd_diag = any(vp(U[i, i], 2) == 0 for i in range(n) if U[i, i] != 0)
    if not odd_diag:
        return ("even", det8, None)
    units, rem = two_adic_diagonalize(U)
    if rem is not None:
        raise AssertionError("odd-type block failed to diagonalize")
    t = 0
    for d in units:
        ud = unit_part(d, 2)
        t += (ud.numerator * pow(ud.denominator, -1, 8)) % 8
    return ("odd", det8, t % 8)


def rho_module(G, p, k):
    """rho_k of the Z_p-lattice with gram G: an F_p quadratic/bilinear module.

    Returns a TorsionQuadraticModule of exponent p whose bilinear form is
    b_k (values in (1/p)Z/Z) and whose quadratic form, when free (p = 2 with
    both neighbours even), is q_k in (1/p)Z/2Z-shape; bound modules are
    flagged bilinear-only.
    """
    blocks = jordan_decomposition(G, p)
    by_scale = {s: b for s, b in blocks}
    blk = by_scale.get(k)
    if blk is None or blk.rows == 0:
        return TorsionQuadraticModule.trivial(), True
    r = blk.rows
    if p == 2:
        def is_even(mat):
            return all(vp(mat[i, i], 2) >= 1 for i in range(mat.rows)
                       if mat[i, i] != 0) and all(
                mat[i, i] == 0 or True for i in range(mat.rows))
        free = True
        for adj in (k - 1, k + 1):
            nb = by_scale.get(adj)
            if nb is not None and nb.rows:
                parity, _, _ = two_adic_block_data(nb)
                if parity == "odd":
                    free = False
    else:
        free = True
    orders = [p] * r
    if p == 2 and free:
        qd = [Fraction(blk[i, i]) for i in range(r)]  # q_k = U_ii/2 * 2 mod 2
        # q_k(x) = 2^{k-1} x^2 with x = 2^{-k} u: value U_uu / 2 mod 2Z
        qd = [Fraction(blk[i, i], 2) for i in range(r)]
        bm = [[Fraction(blk[i, j], p) for j in range(r)] for i in range(r)]
        # b(g_i, g_i) must be q/... mod 1
        M = TorsionQuadraticModule(orders, [q % 2 for q in qd], bm, True)
        return M, True
    bm = [[Fraction(blk[i, j], p) for j in range(r)] for i in range(r)]
    M = TorsionQuadraticModule(orders, [Fraction(0)] * r, bm, False)
    return M, free
