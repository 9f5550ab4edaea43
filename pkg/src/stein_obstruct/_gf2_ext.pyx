# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) elimination kernel.

Same contract as ``_gf2_py``: rows are Python ints (bit j = column j), the
pivot is the lowest available column, output is reduced row echelon form.
Rows are packed into 64-bit words and eliminated with word-level XOR.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef uint64_t _MASK = 0xFFFFFFFFFFFFFFFF


cdef uint64_t* _pack(rows, Py_ssize_t nrows, Py_ssize_t nwords) except NULL:
    cdef uint64_t* buf = <uint64_t*> malloc(max(nrows * nwords, 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, w
    for i in range(nrows):
        r = rows[i]
        if r < 0:
            free(buf)
            raise ValueError("rows must be nonnegative ints")
        for w in range(nwords):
            buf[i * nwords + w] = <uint64_t> (r & _MASK)
            r >>= 64
    return buf


cdef object _unpack(uint64_t* row, Py_ssize_t nwords):
    out = 0
    cdef Py_ssize_t w
    for w in range(nwords - 1, -1, -1):
        out = (out << 64) | row[w]
    return out


cdef Py_ssize_t _eliminate(uint64_t* buf, Py_ssize_t nrows, Py_ssize_t nwords,
                           Py_ssize_t ncols, Py_ssize_t* pivots, bint reduce_up) nogil:
    cdef Py_ssize_t col, r, w, prow, top = 0
    cdef Py_ssize_t word
    cdef uint64_t bit, tmp
    for col in range(ncols):
        if top == nrows:
            break
        word = col >> 6
        bit = (<uint64_t> 1) << (col & 63)
        prow = -1
        for r in range(top, nrows):
            if buf[r * nwords + word] & bit:
                prow = r
                break
        if prow < 0:
            continue
        if prow != top:
            for w in range(nwords):
                tmp = buf[prow * nwords + w]
                buf[prow * nwords + w] = buf[top * nwords + w]
                buf[top * nwords + w] = tmp
        for r in range(top + 1 if not reduce_up else 0, nrows):
            if r != top and buf[r * nwords + word] & bit:
                for w in range(word, nwords):
                    buf[r * nwords + w] ^= buf[top * nwords + w]
        pivots[top] = col
        top += 1
    return top


def echelon(rows, Py_ssize_t ncols):
    """Reduced row echelon form: ``(basis, pivots)``, pivots increasing."""
    rows = list(rows)
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t nwords = max((ncols + 63) // 64, 1)
    if nrows == 0 or ncols == 0:
        return [], []
    cdef uint64_t* buf = _pack(rows, nrows, nwords)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(nrows * sizeof(Py_ssize_t))
    cdef Py_ssize_t k, rk
    if piv == NULL:
        free(buf)
        raise MemoryError()
    try:
        with nogil:
            rk = _eliminate(buf, nrows, nwords, ncols, piv, True)
        basis = [_unpack(buf + k * nwords, nwords) for k in range(rk)]
        pivots = [piv[k] for k in range(rk)]
    finally:
        free(buf)
        free(piv)
    return basis, pivots


def rank(rows, Py_ssize_t ncols):
    rows = list(rows)
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t nwords = max((ncols + 63) // 64, 1)
    if nrows == 0 or ncols == 0:
        return 0
    cdef uint64_t* buf = _pack(rows, nrows, nwords)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(nrows * sizeof(Py_ssize_t))
    cdef Py_ssize_t rk
    if piv == NULL:
        free(buf)
        raise MemoryError()
    try:
        with nogil:
            rk = _eliminate(buf, nrows, nwords, ncols, piv, False)
    finally:
        free(buf)
        free(piv)
    return rk
