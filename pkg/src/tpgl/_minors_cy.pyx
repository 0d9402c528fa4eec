# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of tpgl._minors_py; same functions, same witness order.

Entries are arbitrary-precision Python ints, so arithmetic stays on
PyObjects; the win over the pure twin is loop and indexing overhead.
"""
from itertools import combinations

BACKEND = "cython"


cpdef det_int(list mat):
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    cdef Py_ssize_t n = len(mat)
    cdef Py_ssize_t i, j, k
    cdef list a = [list(row) for row in mat]
    cdef int sign = 1
    cdef object prev = 1
    cdef object pivot, lead
    cdef list row_i, row_k
    for k in range(n - 1):
        row_k = a[k]
        if row_k[k] == 0:
            for i in range(k + 1, n):
                if (<list>a[i])[k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
            row_k = a[k]
        pivot = row_k[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * (<list>a[n - 1])[n - 1]


cdef dict _minor_table_level(list mat, Py_ssize_t n, Py_ssize_t k, dict prev):
    cdef dict cur = {}
    cdef Py_ssize_t t
    cdef int base_sign = 1 if (k - 1) % 2 == 0 else -1
    cdef int sign
    cdef object acc, entry, sub
    cdef tuple rows, cols, rrest
    cdef list row
    for rows in combinations(range(n), k):
        rrest = rows[:-1]
        row = mat[rows[k - 1]]
        for cols in combinations(range(n), k):
            acc = 0
            sign = base_sign
            for t in range(k):
                entry = row[cols[t]]
                if entry != 0:
                    sub = prev[(rrest, cols[:t] + cols[t + 1:])]
                    if sub != 0:
                        acc = acc + sign * entry * sub
                sign = -sign
            cur[(rows, cols)] = acc
    return cur


def scan_total_positivity(list mat):
    """First minor <= 0 as (rows, cols), or None if all minors positive."""
    cdef Py_ssize_t n = len(mat)
    cdef Py_ssize_t k
    cdef dict prev = {((), ()): 1}
    cdef dict cur
    cdef tuple rows, cols
    for k in range(1, n + 1):
        cur = _minor_table_level(mat, n, k, prev)
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                if cur[(rows, cols)] <= 0:
                    return rows, cols
        prev = cur
    return None


def scan_solid_positivity(list mat):
    """Like scan_total_positivity but only over consecutive-index minors."""
    cdef Py_ssize_t n = len(mat)
    cdef Py_ssize_t i, j, k, r, c
    cdef list sub
    for k in range(1, n + 1):
        for i in range(n - k + 1):
            for j in range(n - k + 1):
                sub = [[(<list>mat[r])[c] for c in range(j, j + k)]
                       for r in range(i, i + k)]
                if det_int(sub) <= 0:
                    return tuple(range(i, i + k)), tuple(range(j, j + k))
    return None


cdef bint _vanishes_on_triangle(tuple rows, tuple cols, bint lower):
    cdef Py_ssize_t t
    if lower:
        for t in range(len(rows)):
            if cols[t] > rows[t]:
                return True
        return False
    for t in range(len(rows)):
        if cols[t] < rows[t]:
            return True
    return False


def scan_unitriangular(list mat, bint lower):
    """Sign-pattern scan for unitriangular matrices; see the pure twin."""
    cdef Py_ssize_t n = len(mat)
    cdef Py_ssize_t k
    cdef dict prev = {((), ()): 1}
    cdef dict cur
    cdef tuple rows, cols
    cdef object value
    for k in range(1, n + 1):
        cur = _minor_table_level(mat, n, k, prev)
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                value = cur[(rows, cols)]
                if _vanishes_on_triangle(rows, cols, lower):
                    if value != 0:
                        return rows, cols, True
                elif value <= 0:
                    return rows, cols, False
        prev = cur
    return None
