"""Exact rational linear algebra: scalars, dense matrices, minors,
kernels, and characteristic polynomials.

The scalar type is `fractions.Fraction` (re-exported as `Rational`):
always reduced, positive denominator, totally ordered.  Every operation
in this module is a pure function over immutable values and is exact;
there is no tolerance anywhere.

>>> m = SquareMatrix.from_rows([[1, 2], [3, 4]])
>>> determinant(m)
Fraction(-2, 1)
>>> inverse(m) * m == SquareMatrix.identity(2)
True
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from tpgl import kernels
from tpgl.errors import SingularMatrixError

Rational = Fraction


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/4', floats, and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class SquareMatrix:
    """Dense n x n matrix of Fractions; equality is exact and entrywise."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1 or any(len(row) != n for row in self.entries):
            raise ValueError("entries must form a nonempty square grid")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "SquareMatrix":
        return cls(tuple(tuple(rat(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n))
                         for i in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence) -> "SquareMatrix":
        d = [rat(x) for x in diag]
        zero = Fraction(0)
        return cls(tuple(tuple(d[i] if i == j else zero for j in range(len(d)))
                         for i in range(len(d))))

    @property
    def n(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def __mul__(self, other: "SquareMatrix") -> "SquareMatrix":
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        n = self.n
        if other.n != n:
            raise ValueError("dimension mismatch")
        cols = other.transpose().entries
        return SquareMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries))

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix(tuple(tuple(a + b for a, b in zip(r1, r2))
                                  for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix(tuple(tuple(a - b for a, b in zip(r1, r2))
                                  for r1, r2 in zip(self.entries, other.entries)))

    def scaled(self, k) -> "SquareMatrix":
        k = rat(k)
        return SquareMatrix(tuple(tuple(k * x for x in row) for row in self.entries))

    def minus_scalar(self, lam) -> "SquareMatrix":
        """self - lam * identity."""
        lam = rat(lam)
        return SquareMatrix(tuple(
            tuple(x - lam if i == j else x for j, x in enumerate(row))
            for i, row in enumerate(self.entries)))

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(tuple(zip(*self.entries)))

    def mul_vector(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def to_floats(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.entries]


@dataclass(frozen=True)
class MinorIndex:
    """1-based, strictly increasing row/column index lists of equal length."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.cols) or not self.rows:
            raise ValueError("rows and cols must be nonempty and equally long")
        for seq in (self.rows, self.cols):
            if any(i < 1 for i in seq) or any(a >= b for a, b in zip(seq, seq[1:])):
                raise ValueError("indices must be >= 1 and strictly increasing")

    @property
    def size(self) -> int:
        return len(self.rows)


def clear_denominators(g: SquareMatrix) -> tuple[list[list[int]], int]:
    """Integer matrix scale*g and the positive scale factor.

    Multiplying by a positive scalar multiplies every k x k minor by
    scale**k, so signs and zero-patterns of all minors are unchanged.
    """
    scale = math.lcm(*(x.denominator for row in g.entries for x in row))
    mat = [[int(x * scale) for x in row] for row in g.entries]
    return mat, scale


def minor(g: SquareMatrix, idx: MinorIndex) -> Fraction:
    """Exact determinant of the submatrix selected by `idx`."""
    n = g.n
    if idx.rows[-1] > n or idx.cols[-1] > n:
        raise IndexError(f"minor index out of range for a {n}x{n} matrix")
    sub = SquareMatrix(tuple(
        tuple(g.entries[i - 1][j - 1] for j in idx.cols) for i in idx.rows))
    return determinant(sub)


def determinant(g: SquareMatrix) -> Fraction:
    """Exact determinant via fraction-free elimination on cleared integers."""
    mat, scale = clear_denominators(g)
    return Fraction(kernels.det_int(mat), scale**g.n)


def inverse(g: SquareMatrix) -> SquareMatrix:
    """Exact inverse (Gauss-Jordan); raises SingularMatrixError if singular."""
    n = g.n
    a = [list(row) for row in g.entries]
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            inv[k], inv[pivot_row] = inv[pivot_row], inv[k]
        pivot = a[k][k]
        a[k] = [x / pivot for x in a[k]]
        inv[k] = [x / pivot for x in inv[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
    return SquareMatrix(tuple(tuple(row) for row in inv))


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Solve a square system exactly; raises SingularMatrixError if singular."""
    n = len(rows)
    a = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("linear system is singular")
        a[k], a[pivot_row] = a[pivot_row], a[k]
        pivot = a[k][k]
        a[k] = [x / pivot for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return tuple(a[i][n] for i in range(n))


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot column indices."""
    rows = [list(r) for r in rows]
    m = len(rows)
    width = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        rows[r] = [x / pivot for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank_of_rows(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    _, pivots = _rref([list(r) for r in rows])
    return len(pivots)


def rank_of_columns(cols: Sequence[Sequence[Fraction]]) -> int:
    return rank_of_rows([list(c) for c in cols])


def kernel_basis(g: SquareMatrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the right null space; empty iff g is invertible.

    Basis vectors follow the standard free-variable convention: each free
    column contributes a vector with a 1 there and pivot entries solved.
    """
    n = g.n
    rref, pivots = _rref([list(row) for row in g.entries])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(tuple(v))
    return basis


def char_poly(g: SquareMatrix) -> tuple[Fraction, ...]:
    """Monic characteristic polynomial det(x*I - g), leading coefficient
    first.  Computed by exact evaluation at x = 0..n and Newton
    interpolation.
    """
    n = g.n
    xs = [Fraction(k) for k in range(n + 1)]
    ys = [determinant(SquareMatrix.identity(n).scaled(x) - g) for x in xs]
    # Newton divided differences
    coef = list(ys)
    for level in range(1, n + 1):
        for i in range(n, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    # expand Newton form to monomial coefficients (ascending), then flip
    poly = [Fraction(0)] * (n + 1)
    acc = [Fraction(1)]  # product (x - x0)...(x - xk), ascending coefficients
    for k in range(n + 1):
        for d, a in enumerate(acc):
            poly[d] += coef[k] * a
        shifted = [Fraction(0)] + acc
        acc = [s - xs[k] * a for s, a in zip(shifted, acc + [Fraction(0)])]
    return tuple(reversed(poly))


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_eval_matrix(coeffs: Sequence[Fraction], g: SquareMatrix) -> SquareMatrix:
    """Evaluate a polynomial at a matrix argument (Horner)."""
    acc = SquareMatrix.identity(g.n).scaled(coeffs[0])
    for c in coeffs[1:]:
        acc = acc * g + SquareMatrix.identity(g.n).scaled(c)
    return acc


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots (with multiplicity, ascending) of a monic
    polynomial with rational coefficients.

    Exact factorization over the rationals is delegated to sympy; only
    the linear factors are consumed.
    """
    coeffs = [rat(c) for c in coeffs]
    if not coeffs or coeffs[0] != 1:
        raise ValueError("polynomial must be monic")
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(
        sum(sympy.Rational(c.numerator, c.denominator) * x**e
            for e, c in enumerate(reversed(coeffs))),
        x,
        domain="QQ",
    )
    roots: list[Fraction] = []
    for factor, mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            lead, const = factor.all_coeffs()
            root = sympy.Rational(-const, lead)
            roots.extend([Fraction(root.p, root.q)] * mult)
    return sorted(roots)


def is_lower_unitriangular(g: SquareMatrix) -> bool:
    return all(
        (x == 1 if i == j else (x == 0 if j > i else True))
        for i, row in enumerate(g.entries) for j, x in enumerate(row))


def is_upper_unitriangular(g: SquareMatrix) -> bool:
    return is_lower_unitriangular(g.transpose())


def is_upper_triangular(g: SquareMatrix, invertible: bool = False) -> bool:
    if any(x != 0 for i, row in enumerate(g.entries) for j, x in enumerate(row) if j < i):
        return False
    return not invertible or all(g.entries[i][i] != 0 for i in range(g.n))


def is_anti_lower_triangular(g: SquareMatrix, invertible: bool = False) -> bool:
    """Zeros strictly above the anti-diagonal (column j supported on the
    last j+1 rows); with `invertible`, the anti-diagonal itself nonzero."""
    n = g.n
    if any(g.entries[i][j] != 0 for j in range(n) for i in range(n - 1 - j)):
        return False
    return not invertible or all(g.entries[n - 1 - j][j] != 0 for j in range(n))
