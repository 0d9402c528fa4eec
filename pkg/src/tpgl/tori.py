"""Maximal tori presented by diagonalizing frames.

A maximal torus is stored as a `TorusFrame`: an invertible matrix S with
the torus equal to S * (diagonals) * S^-1.  Two frames present the same
torus exactly when one is the other times a monomial matrix (permutation
times diagonal), which is the equality test `same_torus`.

The positive part of the space of tori is represented through frames
with provenance: `intersect_borels` realizes the intersection of a
positive flag B = u B+ u^-1 and a negative flag B' = v^-1 B+ v as the
frame S = u * tilde(u^-1 v^-1), and `iota` is the same construction on a
certified flag pair.  No membership test for arbitrary frames is
offered; positivity of a torus means being in the image of `iota`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from tpgl.errors import InvariantViolationError, MembershipError, TorusDomainError
from tpgl.flags import (
    BorelPoint,
    FlagPairClass,
    is_in_B_neg,
    is_in_B_pos,
    tilde_map,
)
from tpgl.linalg import (
    SquareMatrix,
    inverse,
    is_anti_lower_triangular,
    is_upper_triangular,
    rat,
)
from tpgl.pinning import TorusElement, is_in_T_p_pos


@dataclass(frozen=True)
class TorusFrame:
    """Invertible column frame S presenting the torus S * diag * S^-1.

    `provenance` records the (u, v) pair of totally positive
    lower-unitriangular matrices when the frame came from a flag-pair
    intersection, else None.
    """

    S: SquareMatrix
    provenance: tuple[SquareMatrix, SquareMatrix] | None = field(default=None)

    @property
    def n(self) -> int:
        return self.S.n

    @cached_property
    def S_inv(self) -> SquareMatrix:
        return inverse(self.S)


def intersect_borels(b: BorelPoint, b_neg: BorelPoint) -> TorusFrame:
    """Frame of the maximal torus B ∩ B' for a positive/negative flag pair.

    Preconditions: `b` in the positive part (canonical representative u),
    `b_neg` in the negative part (canonical representative v^-1).  The
    returned frame is S = u * tilde(u^-1 v^-1); as a certificate, S^-1
    carries `b`'s basis to the standard flag and `b_neg`'s basis to the
    anti-standard flag, both checked exactly.
    """
    if not is_in_B_pos(b):
        raise MembershipError("first flag is not in the positive part")
    if not is_in_B_neg(b_neg):
        raise MembershipError("second flag is not in the negative part")
    u = b.canonical_lower
    v = inverse(b_neg.canonical_lower)
    z = inverse(u) * inverse(v)
    frame = TorusFrame(u * tilde_map(z, check=False), provenance=(u, v))
    if not is_upper_triangular(frame.S_inv * b.basis, invertible=True):
        raise InvariantViolationError("frame certificate failed for the positive flag")
    if not is_anti_lower_triangular(frame.S_inv * b_neg.basis, invertible=True):
        raise InvariantViolationError("frame certificate failed for the negative flag")
    return frame


def iota(pair: FlagPairClass) -> TorusFrame:
    """Torus of a certified flag pair; injective up to frame equivalence."""
    return intersect_borels(pair.first, pair.second)


def torus_element(frame: TorusFrame, d: TorusElement) -> SquareMatrix:
    """The torus point S * diag(d) * S^-1, exactly."""
    if d.n != frame.n:
        raise ValueError("dimension mismatch")
    return frame.S * d.matrix() * frame.S_inv


def is_monomial(m: SquareMatrix) -> bool:
    """Exactly one nonzero entry in every row and every column."""
    n = m.n
    row_counts = [sum(1 for x in row if x != 0) for row in m.entries]
    col_counts = [sum(1 for i in range(n) if m.entries[i][j] != 0) for j in range(n)]
    return all(c == 1 for c in row_counts) and all(c == 1 for c in col_counts)


def same_torus(f1: TorusFrame, f2: TorusFrame) -> bool:
    """Frames present the same torus iff f2^-1 * f1 is monomial."""
    if f1.n != f2.n:
        return False
    return is_monomial(f2.S_inv * f1.S)


def diagonal_in_frame(frame: TorusFrame, g: SquareMatrix) -> TorusElement:
    """Diagonal coordinates of g on the frame's torus.

    Raises TorusDomainError unless S^-1 g S is exactly diagonal with
    nonzero entries.
    """
    conj = frame.S_inv * g * frame.S
    n = conj.n
    if any(conj.entries[i][j] != 0 for i in range(n) for j in range(n) if i != j):
        raise TorusDomainError("element does not lie on this torus")
    diag = tuple(conj.entries[i][i] for i in range(n))
    if any(x == 0 for x in diag):
        raise TorusDomainError("element is singular on this torus")
    return TorusElement(diag)


def cone_membership(frame: TorusFrame, g: SquareMatrix, p) -> bool:
    """True iff g lies on the frame's torus with every simple character of
    its diagonal exceeding p."""
    return is_in_T_p_pos(diagonal_in_frame(frame, g), rat(p))
