"""Eigenflags of totally positive matrices.

A totally positive g has a real, positive, simple spectrum; sorting its
eigenvectors by descending eigenvalue yields a flag in the positive part
of the flag variety, and ascending order yields one in the negative
part.  `pi_prime` returns that certified pair, and `pi` returns the
diagonalizing frame, i.e. the connected centralizer of g as a maximal
torus.  Both agree with the frame obtained by intersecting the two
eigenflags.

Eigendecomposition is exact whenever the characteristic polynomial
splits over the rationals (roots via exact factorization, eigenvectors
via exact kernels).  Otherwise a floating path takes over: eigenvalues
and eigenvectors from numpy, validated against the residual and
separation tolerances below, with the vectors then carried exactly (a
float is a binary rational) so downstream certificates run unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from tpgl.errors import EigenSplitError, InvariantViolationError, MembershipError
from tpgl.flags import (
    BorelPoint,
    FlagPairClass,
    borel_from_basis,
    is_in_B_neg,
    is_in_B_pos,
)
from tpgl.linalg import (
    SquareMatrix,
    char_poly,
    inverse,
    kernel_basis,
    rank_of_rows,
    rational_roots,
)
from tpgl.pinning import is_in_G_pos
from tpgl.tori import TorusFrame

RESIDUAL_TOL = 1e-10
SEPARATION_TOL = 1e-9


@dataclass(frozen=True)
class EigenData:
    """Spectrum and eigenvectors of a totally positive matrix.

    `values` are sorted strictly descending and are Fractions on the
    exact path, floats on the floating path; `vectors` holds the
    matching eigenvectors as columns (always exact Fractions; floating
    results are converted bit-exactly).
    """

    values: tuple
    vectors: SquareMatrix
    exact: bool


def _require_member(g: SquareMatrix) -> None:
    report = is_in_G_pos(g)
    if not report:
        raise MembershipError(
            f"input is not totally positive; minor {report.witness.index.rows}x"
            f"{report.witness.index.cols} = {report.witness.value}")


def _normalized(v: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


def _exact_eigen(g: SquareMatrix, roots: list[Fraction]) -> EigenData:
    if len(set(roots)) != len(roots):
        raise EigenSplitError(
            "repeated eigenvalue contradicts total positivity of the input")
    values = tuple(sorted(roots, reverse=True))
    columns = []
    for lam in values:
        basis = kernel_basis(g.minus_scalar(lam))
        if len(basis) != 1:
            raise EigenSplitError("eigenspace dimension is not 1")
        columns.append(_normalized(basis[0]))
    vectors = SquareMatrix(tuple(zip(*columns)))
    return EigenData(values, vectors, exact=True)


def _float_eigen(g: SquareMatrix) -> EigenData:
    import numpy as np

    gf = np.array(g.to_floats(), dtype=float)
    values, vectors = np.linalg.eig(gf)
    scale = float(max(abs(values)))
    if np.max(np.abs(values.imag)) > SEPARATION_TOL * scale:
        raise EigenSplitError("complex eigenvalues contradict total positivity")
    order = np.argsort(-values.real)
    values = values.real[order]
    vectors = vectors.real[:, order]
    if any(values[i] - values[i + 1] <= SEPARATION_TOL for i in range(len(values) - 1)):
        raise EigenSplitError("eigenvalue separation below tolerance")
    if values[-1] <= 0:
        raise EigenSplitError("nonpositive eigenvalue contradicts total positivity")
    cols = []
    for k in range(g.n):
        v = vectors[:, k]
        pivot = v[int(np.argmax(np.abs(v)))]
        v = v / pivot
        residual = float(np.max(np.abs(gf @ v - values[k] * v)) / np.max(np.abs(v)))
        if residual > RESIDUAL_TOL:
            raise EigenSplitError(f"eigen residual {residual:.3e} exceeds tolerance")
        cols.append(tuple(Fraction(x) for x in v))
    return EigenData(tuple(float(x) for x in values),
                     SquareMatrix(tuple(zip(*cols))), exact=False)


def eigen_split(g: SquareMatrix) -> EigenData:
    """Full eigendecomposition of a totally positive matrix.

    Exact when the characteristic polynomial splits over the rationals;
    floating (with validated residuals) otherwise.
    """
    _require_member(g)
    poly = char_poly(g)
    roots = rational_roots(poly)
    if len(roots) == g.n:
        return _exact_eigen(g, roots)
    return _float_eigen(g)


def _flag_of_columns(eigen: EigenData, order: range) -> BorelPoint:
    cols = [eigen.vectors.col(k) for k in order]
    return borel_from_basis(SquareMatrix(tuple(zip(*cols))))


def pi_prime(g: SquareMatrix) -> FlagPairClass:
    """Eigenflag pair of g: eigenvectors by descending eigenvalue give the
    positive flag, ascending give the negative one.  Both memberships are
    re-verified; a failure is an invariant violation, not bad input."""
    eigen = eigen_split(g)
    first = _flag_of_columns(eigen, range(g.n))
    second = _flag_of_columns(eigen, range(g.n - 1, -1, -1))
    try:
        pair = FlagPairClass(first, second)
    except MembershipError as exc:
        raise InvariantViolationError(
            f"eigenflag membership assertion failed: {exc}") from exc
    if eigen.exact and not (stabilizes_flag(g, first) and stabilizes_flag(g, second)):
        raise InvariantViolationError("input does not stabilize its eigenflags")
    return pair


def stabilizes_flag(g: SquareMatrix, b: BorelPoint, tol: float | None = None) -> bool:
    """Whether g maps each leading column span of b's basis into itself.

    Exact rank computation by default; pass `tol` to rank numerically
    (for flags generated by the floating eigen path).
    """
    n = g.n
    for k in range(1, n):
        cols = [list(b.basis.col(c)) for c in range(k)]
        cols += [list(g.mul_vector(b.basis.col(c))) for c in range(k)]
        if tol is None:
            if rank_of_rows(cols) != k:
                return False
        else:
            import numpy as np

            mat = np.array([[float(x) for x in row] for row in cols], dtype=float)
            if np.linalg.matrix_rank(mat, tol=tol) != k:
                return False
    return True


def verify_unique_borel(g: SquareMatrix, b: BorelPoint, tol: float | None = None) -> bool:
    """True iff g stabilizes b's flag and b lies in the matching part of
    the flag variety.

    For totally positive g the matching part is the positive one: the
    positive eigenflag is the unique positive flag containing g.  The
    same characterization holds for inverses of members with the
    negative part (that is how the second eigenflag of `pi_prime` is
    checked: pass g^-1 and the descending-order flag's partner).  Any
    other g fails the precondition.
    """
    if is_in_G_pos(g):
        side_ok = is_in_B_pos(b)
    elif is_in_G_pos(inverse(g)):
        side_ok = is_in_B_neg(b)
    else:
        raise MembershipError(
            "neither the input nor its inverse is totally positive")
    return side_ok and stabilizes_flag(g, b, tol=tol)


def pi(g: SquareMatrix) -> TorusFrame:
    """Diagonalizing frame of g: its connected centralizer as a maximal
    torus.  Equals (up to frame equivalence) the intersection of the two
    eigenflags of `pi_prime`."""
    eigen = eigen_split(g)
    return TorusFrame(eigen.vectors, provenance=None)
