"""Pure-Python exact kernels.

Two hot loops live here: the product of complex integer matrices stored as
separate real/imaginary numerator lists, and sparse fraction-free
Gauss-Jordan elimination over the integers.  ``_kernel_c.pyx`` is a line-for-line
Cython port; both must return identical results.
"""

from __future__ import annotations

from math import gcd


def cmatmul(ar, ai, br, bi, m, k, n):
    """Multiply an ``m x k`` by a ``k x n`` complex integer matrix.

    Inputs are flat row-major lists of Python ints (real and imaginary
    numerators).  Zero entries of the left factor are skipped, which is
    what makes the block-sparse matrices of this package cheap.
    """
    cr = [0] * (m * n)
    ci = [0] * (m * n)
    for i in range(m):
        row = i * k
        out = i * n
        for t in range(k):
            xr = ar[row + t]
            xi = ai[row + t]
            if not xr and not xi:
                continue
            base = t * n
            for j in range(n):
                yr = br[base + j]
                yi = bi[base + j]
                if not yr and not yi:
                    continue
                cr[out + j] += xr * yr - xi * yi
                ci[out + j] += xr * yi + xi * yr
    return cr, ci


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def rref(rows):
    """Reduced row echelon form of a sparse integer matrix.

    ``rows`` is an iterable of ``{column: int}`` dicts (zero entries absent).
    Returns ``(basis, pivots)`` where ``basis[r]`` is a primitive integer row
    whose pivot ``pivots[r]`` is positive and whose other pivot columns are
    all zero.  Rows are sorted by pivot column.
    """
    basis = []
    pivots = []
    where = {}
    for src in rows:
        row = {c: v for c, v in src.items() if v}
        if not row:
            continue
        for c in [c for c in row if c in where]:
            b = row.get(c)
            if not b:
                continue
            prow = basis[where[c]]
            a = prow[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                for cc in row:
                    row[cc] *= a
            for cc, v in prow.items():
                nv = row.get(cc, 0) - b * v
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        if not row:
            continue
        _primitive(row)
        piv = min(row)
        if row[piv] < 0:
            for cc in row:
                row[cc] = -row[cc]
        a = row[piv]
        for idx in range(len(basis)):
            other = basis[idx]
            b = other.get(piv)
            if not b:
                continue
            g = gcd(a, b)
            aa = a // g
            bb = b // g
            if aa != 1:
                for cc in other:
                    other[cc] *= aa
            for cc, v in row.items():
                nv = other.get(cc, 0) - bb * v
                if nv:
                    other[cc] = nv
                else:
                    other.pop(cc, None)
            _primitive(other)
        where[piv] = len(basis)
        basis.append(row)
        pivots.append(piv)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]
