# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact kernels.  Same contract as ``_kernel_py``."""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc
from math import gcd

# |sum of k terms x*y - x'*y'| must stay below 2**63 on the int64 path
cdef object _I64_LIMIT = 1 << 62


cdef object _maxabs(list xs):
    cdef object best = 0
    for x in xs:
        if x > best:
            best = x
        elif -x > best:
            best = -x
    return best


cdef tuple _cmatmul_i64(list ar, list ai, list br, list bi, Py_ssize_t m, Py_ssize_t k, Py_ssize_t n):
    cdef Py_ssize_t sa = m * k, sb = k * n, sc = m * n
    cdef int64_t *buf = <int64_t *> malloc((2 * sa + 2 * sb + 2 * sc) * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    cdef int64_t *xr = buf
    cdef int64_t *xi = buf + sa
    cdef int64_t *yr = buf + 2 * sa
    cdef int64_t *yi = buf + 2 * sa + sb
    cdef int64_t *zr = buf + 2 * sa + 2 * sb
    cdef int64_t *zi = zr + sc
    cdef Py_ssize_t i, t, j, row, out, base
    cdef int64_t a, b, c, d
    try:
        for i in range(sa):
            xr[i] = ar[i]
            xi[i] = ai[i]
        for i in range(sb):
            yr[i] = br[i]
            yi[i] = bi[i]
        for i in range(sc):
            zr[i] = 0
            zi[i] = 0
        for i in range(m):
            row = i * k
            out = i * n
            for t in range(k):
                a = xr[row + t]
                b = xi[row + t]
                if a == 0 and b == 0:
                    continue
                base = t * n
                for j in range(n):
                    c = yr[base + j]
                    d = yi[base + j]
                    zr[out + j] += a * c - b * d
                    zi[out + j] += a * d + b * c
        return [zr[i] for i in range(sc)], [zi[i] for i in range(sc)]
    finally:
        free(buf)


def cmatmul(list ar, list ai, list br, list bi, Py_ssize_t m, Py_ssize_t k, Py_ssize_t n):
    cdef object ma = max(_maxabs(ar), _maxabs(ai))
    cdef object mb = max(_maxabs(br), _maxabs(bi))
    if 2 * k * ma * mb < _I64_LIMIT:
        return _cmatmul_i64(ar, ai, br, bi, m, k, n)
    cdef list cr = [0] * (m * n)
    cdef list ci = [0] * (m * n)
    cdef Py_ssize_t i, t, j, row, out, base
    cdef object xr, xi, yr, yi
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


cdef dict _primitive(dict row):
    cdef object g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        for c in row:
            row[c] //= g
    return row


cdef void _axpy(dict dst, dict src, object b):
    # dst -= b * src, dropping cancelled entries
    cdef object nv
    for cc, v in src.items():
        nv = dst.get(cc, 0) - b * v
        if nv:
            dst[cc] = nv
        else:
            dst.pop(cc, None)


def rref(rows):
    cdef list basis = []
    cdef list pivots = []
    cdef dict where = {}
    cdef dict row, prow, other
    cdef object a, b, g, aa, bb
    cdef Py_ssize_t idx, nb, piv
    for src in rows:
        row = {c: v for c, v in src.items() if v}
        if not row:
            continue
        for c in [c for c in row if c in where]:
            b = row.get(c)
            if not b:
                continue
            prow = <dict>basis[<Py_ssize_t>where[c]]
            a = prow[c]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                for cc in row:
                    row[cc] *= a
            _axpy(row, prow, b)
        if not row:
            continue
        _primitive(row)
        piv = min(row)
        if row[piv] < 0:
            for cc in row:
                row[cc] = -row[cc]
        a = row[piv]
        nb = len(basis)
        for idx in range(nb):
            other = <dict>basis[idx]
            b = other.get(piv)
            if not b:
                continue
            g = gcd(a, b)
            aa = a // g
            bb = b // g
            if aa != 1:
                for cc in other:
                    other[cc] *= aa
            _axpy(other, row, bb)
            _primitive(other)
        where[piv] = len(basis)
        basis.append(row)
        pivots.append(piv)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]
