"""Small exact linear algebra helpers used across the package.

Matrices are lists of rows.  Pivot selection is deterministic everywhere:
lowest usable row index first, then lowest column index, so results are
reproducible across runs.
"""

from .fields import RF, poly_gcd, poly_mul, poly_divmod, poly_sub


def kernel_basis(F, rows, ncols):
    """Right kernel basis of a matrix over a field handle F.

    Entries must support field arithmetic; returns a list of length-ncols
    vectors, reduced so each has a 1 in its free coordinate.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = {}  # col -> row
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = _inv(F, rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots[c] = r
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [F.zero()] * ncols
        vec[fc] = F.one()
        for c, pr in pivots.items():
            vec[c] = -rows[pr][fc]
        basis.append(vec)
    return basis


def _inv(F, x):
    if hasattr(x, "inverse"):
        return x.inverse()
    return F.one() / x


def solve_linear(F, rows, rhs):
    """Solve M x = rhs over a field handle; returns one solution or None."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    basis = None
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, n) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = _inv(F, aug[r][c])
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots[c] = r
        r += 1
    for i in range(r, n):
        if aug[i][-1]:
            return None
    sol = [F.zero()] * ncols
    for c, pr in pivots.items():
        sol[c] = aug[pr][-1]
    return sol


def det(F, rows):
    """Determinant over a field handle, by ordinary elimination."""
    n = len(rows)
    rows = [list(r) for r in rows]
    out = F.one()
    sign = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c]), None)
        if pr is None:
            return F.zero()
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign = -sign
        piv = rows[c][c]
        out = out * piv
        inv = _inv(F, piv)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return out if sign == 1 else -out


def kernel_fraction_free(K, rows, ncols):
    """Right kernel over a rational function field K, computed fraction-free.

    Rows are cleared to polynomial entries (lists over K.base), eliminated
    without division, with the F_q-polynomial content of each row stripped
    after every elimination step; the kernel is then read off over K.
    Pivots: lowest row, then lowest column.
    """
    B = K.base
    prows = []
    for row in rows:
        den = [B.one()]
        for x in row:
            den = poly_mul(B, den, x.den)
        cleared = []
        for x in row:
            q, r = poly_divmod(B, poly_mul(B, x.num, den), x.den)
            assert not r
            cleared.append(q)
        prows.append(_strip_content(B, cleared))
    prows = [r for r in prows if any(r)]
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(prows)) if prows[i][c]), None)
        if pr is None:
            continue
        prows[r], prows[pr] = prows[pr], prows[r]
        piv = prows[r][c]
        for i in range(len(prows)):
            if i != r and prows[i][c]:
                f = prows[i][c]
                prows[i] = [poly_sub(B, poly_mul(B, piv, a), poly_mul(B, f, b))
                            for a, b in zip(prows[i], prows[r])]
                prows[i] = _strip_content(B, prows[i])
        pivots[c] = r
        r += 1
        if r == len(prows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [K.zero()] * ncols
        vec[fc] = K.one()
        for c, pr in pivots.items():
            vec[c] = -RF(K, prows[pr][fc], prows[pr][c])
        basis.append(vec)
    return basis


def _strip_content(B, row):
    g = []
    for x in row:
        if x:
            g = poly_gcd(B, g, x) if g else list(x)
        if len(g) == 1:
            break
    if len(g) > 1:
        row = [poly_divmod(B, x, g)[0] if x else x for x in row]
    return row
