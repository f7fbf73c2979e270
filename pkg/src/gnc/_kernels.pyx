# cython: boundscheck=False, wraparound=False, cdivision=True
"""Dense integer elimination kernels (compiled twin of ``_kernels_py``).

Both functions take a matrix as a list of equal-length rows of Python ints.
``rank_exact`` raises ``OverflowError`` when an intermediate value leaves the
signed 64-bit range; the caller is expected to retry with the pure-Python
implementation.
"""

from libc.stdlib cimport calloc, free

cdef extern from *:
    """
    static inline int gnc_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int gnc_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int gnc_mul_ovf(long long a, long long b, long long *r) nogil
    int gnc_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _abs(long long a) nogil:
    return -a if a < 0 else a


cdef inline long long _gcd(long long a, long long b) nogil:
    a = _abs(a)
    b = _abs(b)
    while b:
        a, b = b, a % b
    return a


cdef long long _inverse_mod(long long a, long long p) nogil:
    cdef long long t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


cdef long long *_load(rows, Py_ssize_t nrows, Py_ssize_t ncols) except NULL:
    cdef long long *a = <long long *> calloc(nrows * ncols + 1, sizeof(long long))
    cdef Py_ssize_t i, j
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = row[j]
    except BaseException:
        free(a)
        raise
    return a


cdef int _eliminate_exact(long long *a, char *used, Py_ssize_t nrows,
                          Py_ssize_t ncols, Py_ssize_t *rank) nogil:
    cdef Py_ssize_t c, r, k, piv
    cdef long long pv, f, g, mp, mf, x, y, content
    rank[0] = 0
    for c in range(ncols):
        piv = -1
        for r in range(nrows):
            if not used[r] and a[r * ncols + c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        used[piv] = 1
        rank[0] += 1
        pv = a[piv * ncols + c]
        for r in range(nrows):
            if used[r] or a[r * ncols + c] == 0:
                continue
            f = a[r * ncols + c]
            g = _gcd(pv, f)
            mp = pv // g
            mf = f // g
            content = 0
            for k in range(c, ncols):
                if gnc_mul_ovf(mp, a[r * ncols + k], &x):
                    return 1
                if gnc_mul_ovf(mf, a[piv * ncols + k], &y):
                    return 1
                if gnc_sub_ovf(x, y, &x):
                    return 1
                a[r * ncols + k] = x
                if x != 0:
                    content = _gcd(content, x)
            if content > 1:
                for k in range(c + 1, ncols):
                    a[r * ncols + k] //= content
    return 0


def rank_exact(rows, Py_ssize_t ncols):
    """Rank over the rationals of an integer matrix (fraction-free elimination)."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t rank = 0
    cdef int status
    if nrows == 0 or ncols == 0:
        return 0
    cdef long long *a = _load(rows, nrows, ncols)
    cdef char *used = <char *> calloc(nrows, sizeof(char))
    if used == NULL:
        free(a)
        raise MemoryError()
    with nogil:
        status = _eliminate_exact(a, used, nrows, ncols, &rank)
    free(a)
    free(used)
    if status:
        raise OverflowError("intermediate value exceeds 64 bits")
    return rank


def rank_mod_p(rows, Py_ssize_t ncols, long long p):
    """Rank over GF(p) of an integer matrix; ``p`` must be a prime below 2**31."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t c, r, k, piv, rank = 0
    cdef long long inv, f
    if nrows == 0 or ncols == 0:
        return 0
    reduced = [[x % p for x in row] for row in rows]
    cdef long long *a = _load(reduced, nrows, ncols)
    cdef char *used = <char *> calloc(nrows, sizeof(char))
    if used == NULL:
        free(a)
        raise MemoryError()
    with nogil:
        for c in range(ncols):
            piv = -1
            for r in range(nrows):
                if not used[r] and a[r * ncols + c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            used[piv] = 1
            rank += 1
            inv = _inverse_mod(a[piv * ncols + c], p)
            for k in range(c, ncols):
                a[piv * ncols + k] = (a[piv * ncols + k] * inv) % p
            for r in range(nrows):
                if used[r] or a[r * ncols + c] == 0:
                    continue
                f = a[r * ncols + c]
                for k in range(c, ncols):
                    if a[piv * ncols + k] == 0:
                        continue
                    a[r * ncols + k] = (a[r * ncols + k] + (p - f) * a[piv * ncols + k]) % p
    free(a)
    free(used)
    return rank
