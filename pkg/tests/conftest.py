"""Shared independent oracles and sampling helpers for the tests.

The oracles here deliberately avoid the code paths they check:
`cofactor_det` is plain Laplace recursion (vs. Bareiss elimination and
the shared-subproblem minor tables), and `faddeev_leverrier` builds the
characteristic polynomial from trace powers (vs. evaluation and
interpolation).
"""
from fractions import Fraction

from tpgl.linalg import SquareMatrix
from tpgl.sampling import SplitMix64


def cofactor_det(rows):
    """Determinant by first-row Laplace expansion; exact and slow."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        sub = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(sub)
    return total


def faddeev_leverrier(m: SquareMatrix):
    """Characteristic polynomial coefficients (monic, leading first) from
    the trace-power recurrence."""
    n = m.n
    coeffs = [Fraction(1)]
    acc = SquareMatrix.identity(n).scaled(0)
    for k in range(1, n + 1):
        acc = m * (acc + SquareMatrix.identity(n).scaled(coeffs[-1]))
        trace = sum(acc.entries[i][i] for i in range(n))
        coeffs.append(-trace / k)
    return tuple(coeffs)


def int_matrix(rng: SplitMix64, n: int, span: int = 3) -> SquareMatrix:
    return SquareMatrix.from_rows(
        [[rng.next_below(2 * span + 1) - span for _ in range(n)] for _ in range(n)])


def int_rows(rng: SplitMix64, n: int, span: int = 3):
    return [[rng.next_below(2 * span + 1) - span for _ in range(n)] for _ in range(n)]
