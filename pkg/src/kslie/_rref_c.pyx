# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``kslie._rref_py``; identical algorithm and output.

Reduction runs on C ``long long`` with overflow checks and restarts on
Python integers the moment any entry would overflow.
"""

from fractions import Fraction
from math import gcd, lcm

from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    static int kslie_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int kslie_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    bint kslie_mul(long long a, long long b, long long *r) nogil
    bint kslie_sub(long long a, long long b, long long *r) nogil

cdef long long LL_LIMIT = 1LL << 62
ZERO = Fraction(0)


cdef inline long long _gcd_ll(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef list _integer_row(list row):
    cdef object den = 1
    if row:
        den = lcm(*[x.denominator for x in row])
    return [x.numerator * (den // x.denominator) for x in row]


cdef bint _reduce_ll(long long *m, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t *order,
                     Py_ssize_t *pivots, Py_ssize_t *npiv) nogil:
    """Fraction-free Gauss-Jordan in place; False on overflow."""
    cdef Py_ssize_t prow = 0, c, r, best, j, t
    cdef long long v, best_abs, pv, f, g, a, b, x, y, content
    cdef long long *p
    cdef long long *row
    npiv[0] = 0
    for c in range(ncols):
        if prow == nrows:
            break
        best = -1
        best_abs = 0
        for r in range(prow, nrows):
            v = m[order[r] * ncols + c]
            if v < 0:
                v = -v
            if v and (best < 0 or v < best_abs):
                best = r
                best_abs = v
        if best < 0:
            continue
        if best != prow:
            t = order[prow]
            order[prow] = order[best]
            order[best] = t
        p = m + order[prow] * ncols
        pv = p[c]
        for r in range(nrows):
            if r == prow:
                continue
            row = m + order[r] * ncols
            f = row[c]
            if not f:
                continue
            g = _gcd_ll(pv, f)
            a = pv // g
            b = f // g
            content = 0
            for j in range(ncols):
                if kslie_mul(a, row[j], &x) or kslie_mul(b, p[j], &y) or kslie_sub(x, y, &x):
                    return False
                if x >= LL_LIMIT or x <= -LL_LIMIT:
                    return False
                row[j] = x
                if content != 1:
                    content = _gcd_ll(content, x)
            if content > 1:
                for j in range(ncols):
                    row[j] = row[j] // content
        pivots[npiv[0]] = c
        npiv[0] += 1
        prow += 1
    return True


cdef tuple _rref_fast(list work, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(work), i, j, npiv = 0
    cdef long long *m = <long long *>malloc(max(nrows * ncols, 1) * sizeof(long long))
    cdef Py_ssize_t *order = <Py_ssize_t *>malloc(max(nrows, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *piv = <Py_ssize_t *>malloc(max(ncols, 1) * sizeof(Py_ssize_t))
    cdef bint ok
    cdef object pv
    cdef list out
    if m == NULL or order == NULL or piv == NULL:
        free(m); free(order); free(piv)
        raise MemoryError()
    try:
        for i in range(nrows):
            order[i] = i
            for j in range(ncols):
                m[i * ncols + j] = (<list>work[i])[j]
        with nogil:
            ok = _reduce_ll(m, nrows, ncols, order, piv, &npiv)
        if not ok:
            return None
        out = []
        for i in range(npiv):
            pv = m[order[i] * ncols + piv[i]]
            out.append([Fraction(m[order[i] * ncols + j], pv) if m[order[i] * ncols + j] else ZERO
                        for j in range(ncols)])
        return out, [piv[i] for i in range(npiv)]
    finally:
        free(m)
        free(order)
        free(piv)


cdef tuple _rref_objects(list work, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(work), prow = 0, c, r, best, i, j
    cdef list row, p, new
    cdef object v, best_abs, pv, f, g, a, b, content
    cdef list pivots = []
    for c in range(ncols):
        if prow == nrows:
            break
        best = -1
        best_abs = 0
        for r in range(prow, nrows):
            v = (<list>work[r])[c]
            if v and (best < 0 or abs(v) < best_abs):
                best = r
                best_abs = abs(v)
        if best < 0:
            continue
        if best != prow:
            work[prow], work[best] = work[best], work[prow]
        p = <list>work[prow]
        pv = p[c]
        for r in range(nrows):
            if r == prow:
                continue
            row = <list>work[r]
            f = row[c]
            if not f:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            new = [None] * ncols
            for j in range(ncols):
                new[j] = a * row[j] - b * p[j]
            content = gcd(*new)
            if content > 1:
                for j in range(ncols):
                    new[j] = new[j] // content
            work[r] = new
        pivots.append(c)
        prow += 1
    cdef list out = []
    for i in range(len(pivots)):
        c = pivots[i]
        row = <list>work[i]
        pv = row[c]
        out.append([Fraction(x, pv) for x in row])
    return out, pivots


def rref_rows(rows, Py_ssize_t ncols):
    cdef list work = []
    cdef list ints
    cdef bint small = True
    cdef tuple res
    for row in rows:
        ints = _integer_row(list(row))
        if any(ints):
            work.append(ints)
            if small:
                for x in ints:
                    if x >= LL_LIMIT or x <= -LL_LIMIT:
                        small = False
                        break
    if small:
        res = _rref_fast(work, ncols)
        if res is not None:
            return res
    return _rref_objects(work, ncols)
