"""Pure-Python twin of the compiled elimination kernels."""

from __future__ import annotations

from math import gcd


def rank_exact(rows, ncols):
    """Rank over the rationals of an integer matrix (fraction-free elimination)."""
    a = [list(row) for row in rows]
    nrows = len(a)
    used = [False] * nrows
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(nrows) if not used[r] and a[r][c]), -1)
        if piv < 0:
            continue
        used[piv] = True
        rank += 1
        prow = a[piv]
        pv = prow[c]
        for r in range(nrows):
            row = a[r]
            if used[r] or not row[c]:
                continue
            g = gcd(pv, row[c])
            mp, mf = pv // g, row[c] // g
            content = 0
            for k in range(c, ncols):
                x = mp * row[k] - mf * prow[k]
                row[k] = x
                if x:
                    content = gcd(content, x)
            if content > 1:
                for k in range(c + 1, ncols):
                    row[k] //= content
    return rank


def rank_mod_p(rows, ncols, p):
    """Rank over GF(p) of an integer matrix."""
    a = [[x % p for x in row] for row in rows]
    nrows = len(a)
    used = [False] * nrows
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(nrows) if not used[r] and a[r][c]), -1)
        if piv < 0:
            continue
        used[piv] = True
        rank += 1
        prow = a[piv]
        inv = pow(prow[c], -1, p)
        for k in range(c, ncols):
            prow[k] = prow[k] * inv % p
        for r in range(nrows):
            row = a[r]
            f = row[c]
            if used[r] or not f:
                continue
            for k in range(c, ncols):
                row[k] = (row[k] - f * prow[k]) % p
    return rank
