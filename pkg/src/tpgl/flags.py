"""Complete flags and Borel subgroups.

A Borel subgroup is stored as a `BorelPoint`: an invertible basis matrix
whose leading-column spans define the flag (subspace k = span of the
first k columns), together with an eagerly computed lower-unitriangular
canonical representative when the flag is graphable over the standard
one.  The positive part of the flag variety consists of the flags whose
canonical representative is totally positive; the negative part of those
whose representative has a totally positive inverse.

`tilde_map` carries a lower-unitriangular u (with totally positive
inverse) to the upper-unitriangular matrix presenting the same flag over
the anti-standard one, by solving span-matching constraints column by
column.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from tpgl.errors import (
    InvariantViolationError,
    MembershipError,
    NotUnitriangularError,
    SingularMatrixError,
)
from tpgl.linalg import (
    SquareMatrix,
    determinant,
    inverse,
    is_lower_unitriangular,
    rank_of_rows,
    solve_linear,
)
from tpgl.pinning import LOWER, is_in_U_pos


@dataclass(frozen=True)
class BorelPoint:
    """A complete flag: basis matrix modulo upper-triangular column
    operations, with the canonical lower-unitriangular representative
    when one exists."""

    basis: SquareMatrix
    canonical_lower: SquareMatrix | None

    @property
    def n(self) -> int:
        return self.basis.n


def canonical_lower_of(m: SquareMatrix) -> SquareMatrix | None:
    """Unit lower-triangular L with the same flag as m (m = L * upper),
    or None when some leading principal minor vanishes."""
    n = m.n
    a = [list(row) for row in m.entries]
    lower = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] == 0:
            return None
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            lower[i][k] = f
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return SquareMatrix(tuple(tuple(row) for row in lower))


def borel_from_basis(m: SquareMatrix) -> BorelPoint:
    if determinant(m) == 0:
        raise SingularMatrixError("flag basis must be invertible")
    return BorelPoint(m, canonical_lower_of(m))


def borel_from_lower(u: SquareMatrix) -> BorelPoint:
    """Flag of the columns of a lower-unitriangular matrix; u is its own
    canonical representative."""
    if not is_lower_unitriangular(u):
        raise NotUnitriangularError("expected a lower-unitriangular matrix")
    return BorelPoint(u, u)


def standard_flag(n: int) -> BorelPoint:
    return borel_from_lower(SquareMatrix.identity(n))


def antistandard_flag(n: int) -> BorelPoint:
    """Flag spanned by e_n, then e_n, e_{n-1}, and so on."""
    ident = SquareMatrix.identity(n).entries
    return borel_from_basis(SquareMatrix(tuple(ident[n - 1 - i] for i in range(n))).transpose())


def is_in_B_pos(b: BorelPoint) -> bool:
    """True iff the flag has a totally positive lower-unitriangular
    representative."""
    return b.canonical_lower is not None and bool(is_in_U_pos(b.canonical_lower, LOWER))


def is_in_B_neg(b: BorelPoint) -> bool:
    """True iff the flag's lower-unitriangular representative has a
    totally positive inverse."""
    return b.canonical_lower is not None and bool(
        is_in_U_pos(inverse(b.canonical_lower), LOWER))


@dataclass(frozen=True)
class FlagPairClass:
    """A pair (positive flag, negative flag); membership of both
    components is certified at construction."""

    first: BorelPoint
    second: BorelPoint

    def __post_init__(self):
        if not is_in_B_pos(self.first):
            raise MembershipError("first flag is not in the positive part")
        if not is_in_B_neg(self.second):
            raise MembershipError("second flag is not in the negative part")


def tilde_map(u: SquareMatrix, check: bool = True) -> SquareMatrix:
    """Upper-unitriangular matrix presenting u's flag over the
    anti-standard flag: span(first k columns of u) = span(last k columns
    of the result) for every k.

    Preconditions (verified unless `check=False`): u lower unitriangular
    with u^-1 totally positive.  Column n-k+1 of the result is found by
    solving, inside span(first k columns of u), for the vector with unit
    entry at row n-k+1 and zeros below; the flag equalities are then
    re-verified by exact rank computations.
    """
    if not is_lower_unitriangular(u):
        raise NotUnitriangularError("expected a lower-unitriangular matrix")
    if check and not is_in_U_pos(inverse(u), LOWER):
        raise MembershipError("inverse of input must be totally positive")
    n = u.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        j = n - k  # 0-based target column
        system = [[u.entries[i][c] for c in range(k)] for i in range(j, n)]
        rhs = [Fraction(1)] + [Fraction(0)] * (k - 1)
        try:
            alpha = solve_linear(system, rhs)
        except SingularMatrixError as exc:
            raise InvariantViolationError(
                "flag is not graphable over the anti-standard flag") from exc
        for i in range(n):
            out[i][j] = sum(alpha[c] * u.entries[i][c] for c in range(k))
    result = SquareMatrix(tuple(tuple(row) for row in out))
    for k in range(1, n + 1):
        combined = [list(u.col(c)) for c in range(k)]
        combined += [list(result.col(n - 1 - c)) for c in range(k)]
        if rank_of_rows(combined) != k:
            raise InvariantViolationError("span-matching postcondition failed")
    return result


def flags_equal(b1: BorelPoint, b2: BorelPoint) -> bool:
    """Exact flag equality: for each k the combined first k columns of
    both bases still span a k-dimensional space."""
    if b1.n != b2.n:
        return False
    for k in range(1, b1.n):
        combined = [list(b1.basis.col(c)) for c in range(k)]
        combined += [list(b2.basis.col(c)) for c in range(k)]
        if rank_of_rows(combined) != k:
            return False
    return True


def are_opposed(b1: BorelPoint, b2: BorelPoint) -> bool:
    """Flag transversality: for every k, the first k columns of b1's
    basis and the first n-k columns of b2's basis assemble to an
    invertible matrix."""
    n = b1.n
    if b2.n != n:
        raise ValueError("dimension mismatch")
    for k in range(1, n):
        cols = [b1.basis.col(c) for c in range(k)]
        cols += [b2.basis.col(c) for c in range(n - k)]
        assembled = SquareMatrix(tuple(zip(*cols)))
        if determinant(assembled) == 0:
            return False
    return True
