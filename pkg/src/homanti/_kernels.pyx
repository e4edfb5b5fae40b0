# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled elimination kernels.

Same contracts as ``_kernels_py``.  Bareiss keeps Python integers (entries
grow without bound) but avoids interpreter overhead in the loops; the modular
rank works on a flat C array of 64-bit words, which is safe because every
supported modulus is below 2**32 so products fit in 64 bits.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t


def bareiss_echelon(rows, Py_ssize_t ncols):
    cdef list a = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(a)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef object prev = 1, pv, f
    cdef list prow, row
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>a[i])[c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = <list>a[r]
        pv = prow[c]
        for i in range(r + 1, nrows):
            row = <list>a[i]
            f = row[c]
            if f == 0:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j] - f * prow[j]) // prev
                row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return a[:r], pivots


cdef uint64_t _powmod(uint64_t b, uint64_t e, uint64_t p):
    cdef uint64_t res = 1
    b %= p
    while e:
        if e & 1:
            res = (res * b) % p
        b = (b * b) % p
        e >>= 1
    return res


def modular_rank(rows, Py_ssize_t ncols, p):
    if p >= 2 ** 32 or p < 2:
        raise ValueError("modulus must lie in [2, 2**32)")
    cdef uint64_t P = p
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    cdef uint64_t *a = <uint64_t *> malloc(nrows * ncols * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef uint64_t inv, f, t, x
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = <uint64_t>(row[j] % p)
        for c in range(ncols):
            if r >= nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if a[i * ncols + c]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = a[r * ncols + j]
                    a[r * ncols + j] = a[piv * ncols + j]
                    a[piv * ncols + j] = t
            inv = _powmod(a[r * ncols + c], P - 2, P)
            for i in range(r + 1, nrows):
                f = a[i * ncols + c]
                if f:
                    f = (f * inv) % P
                    for j in range(c, ncols):
                        x = (f * a[r * ncols + j]) % P
                        a[i * ncols + j] = (a[i * ncols + j] + P - x) % P
            r += 1
    finally:
        free(a)
    return r
