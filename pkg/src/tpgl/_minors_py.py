"""Pure-Python minor-enumeration kernels over integer matrices.

These are the hot loops behind every positivity test: given an n x n
integer matrix (callers clear rational denominators first, which scales
each k x k minor by a positive constant and so preserves signs), they
enumerate minors and report the first one violating the requested sign
pattern.

Witness order is fixed: minors are visited by size k = 1..n, then by
row tuple, then by column tuple, both in lexicographic order.  The
Cython twin `tpgl._minors_cy` implements the same contract.

All-minor scans use a shared-subproblem Laplace expansion: every size-k
minor is expanded along its last row into size-(k-1) minors computed at
the previous level, so the whole table costs O(sum_k C(n,k)^2 k) big-int
multiplies instead of one elimination per minor.
"""
from __future__ import annotations

from itertools import combinations

BACKEND = "python"


def det_int(mat):
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    n = len(mat)
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _minor_table_level(mat, n, k, prev):
    """All size-k minors from the size-(k-1) table; yields with the table."""
    cur = {}
    for rows in combinations(range(n), k):
        rlast = rows[-1]
        rrest = rows[:-1]
        row = mat[rlast]
        for cols in combinations(range(n), k):
            acc = 0
            sign = 1 if (k - 1) % 2 == 0 else -1
            for t in range(k):
                entry = row[cols[t]]
                if entry != 0:
                    sub = prev[(rrest, cols[:t] + cols[t + 1 :])]
                    if sub != 0:
                        acc += sign * entry * sub
                sign = -sign
            cur[(rows, cols)] = acc
    return cur


def scan_total_positivity(mat):
    """First minor <= 0 as (rows, cols), or None if all minors positive."""
    n = len(mat)
    prev = {((), ()): 1}
    for k in range(1, n + 1):
        cur = _minor_table_level(mat, n, k, prev)
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                if cur[(rows, cols)] <= 0:
                    return rows, cols
        prev = cur
    return None


def scan_solid_positivity(mat):
    """Like scan_total_positivity but only over consecutive-index minors."""
    n = len(mat)
    for k in range(1, n + 1):
        for i in range(n - k + 1):
            rows = tuple(range(i, i + k))
            for j in range(n - k + 1):
                cols = tuple(range(j, j + k))
                sub = [[mat[r][c] for c in cols] for r in rows]
                if det_int(sub) <= 0:
                    return rows, cols
    return None


def _vanishes_on_triangle(rows, cols, lower):
    """True when the minor is identically zero on the (uni)triangular group."""
    if lower:
        return any(c > r for r, c in zip(rows, cols))
    return any(c < r for r, c in zip(rows, cols))


def scan_unitriangular(mat, lower):
    """Check the sign pattern of a unitriangular matrix's minors.

    Minors identically zero on the triangular group (for lower: some
    sorted column index exceeds its row index) must be exactly 0; every
    other minor must be strictly positive.  Returns None on success or
    (rows, cols, expected_zero) for the first violation.
    """
    n = len(mat)
    prev = {((), ()): 1}
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
