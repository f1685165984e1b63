# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C kernels for polynomial arithmetic over GF(p) with p < 2**63.

Same contract as ``_pykernels``; the dispatcher in ``kernels.py`` only
routes word-sized moduli here.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    """
    typedef unsigned __int128 flexenc_u128;
    """
    # declared as a 64-bit type for Cython; C sees the real 128-bit typedef
    ctypedef unsigned long long u128 "flexenc_u128"

MAX_MODULUS = 1 << 63


cdef inline u64 mulmod(u64 x, u64 y, u64 p) nogil:
    return <u64>((<u128>x * y) % p)


cdef u64* _load(object a, Py_ssize_t n) except NULL:
    cdef u64* buf = <u64*>malloc((n if n > 0 else 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <u64>a[i]
    return buf


cdef list _store(u64* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


def mul(a, b, p):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef u64 m = p
    cdef Py_ssize_t nc = na + nb - 1, i, j
    cdef u64* x = _load(a, na)
    cdef u64* y = NULL
    cdef u64* c = NULL
    cdef u64 xi, s
    try:
        y = _load(b, nb)
        c = <u64*>malloc(nc * sizeof(u64))
        if c == NULL:
            raise MemoryError()
        with nogil:
            for i in range(nc):
                c[i] = 0
            for i in range(na):
                xi = x[i]
                if xi == 0:
                    continue
                for j in range(nb):
                    s = c[i + j] + mulmod(xi, y[j], m)
                    if s >= m:
                        s -= m
                    c[i + j] = s
        return _store(c, nc)
    finally:
        free(x)
        free(y)
        free(c)


def divmod_(a, b, p):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if na < nb:
        return [], [v for v in a]
    cdef u64 m = p
    cdef u64 inv = pow(int(b[nb - 1]), -1, p)
    cdef Py_ssize_t db = nb - 1, nq = na - db, k, j
    cdef u64* r = _load(a, na)
    cdef u64* d = NULL
    cdef u64* q = NULL
    cdef u64 c, t
    try:
        d = _load(b, nb)
        q = <u64*>malloc(nq * sizeof(u64))
        if q == NULL:
            raise MemoryError()
        with nogil:
            for k in range(nq - 1, -1, -1):
                c = mulmod(r[k + db], inv, m)
                q[k] = c
                if c != 0:
                    for j in range(db + 1):
                        t = mulmod(c, d[j], m)
                        r[k + j] = r[k + j] - t if r[k + j] >= t else r[k + j] + (m - t)
        return _store(q, nq), _store(r, db)
    finally:
        free(r)
        free(d)
        free(q)


def evaluate(a, x, p):
    cdef Py_ssize_t n = len(a), i
    cdef u64 m = p
    cdef u64 xx = x % p
    cdef u64 y = 0
    cdef u64 s
    for i in range(n - 1, -1, -1):
        s = mulmod(y, xx, m) + <u64>a[i]
        y = s - m if s >= m else s
    return y
