"""The standard pinning of GL_n.

Chevalley generators x_i(a) (upper) and y_i(a) (lower), reduced words for
the longest permutation, positive parameterizations of the unipotent
groups and of the totally positive semigroup, exhaustive and solid-minor
membership tests, torus characters, and the cones where every character
exceeds a threshold.

Membership ground truth is the exhaustive scan over all minors
(`is_in_G_pos`); `is_in_G_pos_solid` is the consecutive-minor shortcut
and must agree with it — a disagreement is a bug, never a fallback.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from tpgl import kernels
from tpgl.errors import (
    MembershipError,
    NotReducedWordError,
    NotUnitriangularError,
)
from tpgl.linalg import (
    MinorIndex,
    SquareMatrix,
    clear_denominators,
    is_lower_unitriangular,
    is_upper_unitriangular,
    minor,
    rat,
)

UPPER = "upper"
LOWER = "lower"


def x_gen(n: int, i: int, a) -> SquareMatrix:
    """Upper Chevalley generator: identity plus `a` in entry (i, i+1), 1-based."""
    if not 1 <= i <= n - 1:
        raise IndexError(f"generator index {i} out of range for GL_{n}")
    rows = [[Fraction(1) if r == c else Fraction(0) for c in range(n)] for r in range(n)]
    rows[i - 1][i] = rat(a)
    return SquareMatrix(tuple(tuple(r) for r in rows))


def y_gen(n: int, i: int, a) -> SquareMatrix:
    """Lower Chevalley generator: transpose of x_gen(n, i, a)."""
    return x_gen(n, i, a).transpose()


def coxeter_length(n: int) -> int:
    """Length of the longest permutation of n letters: n(n-1)/2."""
    return n * (n - 1) // 2


@dataclass(frozen=True)
class ReducedWord:
    """A candidate word in the simple transpositions s_1..s_{n-1}.

    Letter bounds are enforced here; whether the word is actually reduced
    for the longest permutation is a separate check
    (`validate_reduced_word`), so invalid words are representable.
    """

    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if any(not 1 <= i <= self.n - 1 for i in self.letters):
            raise ValueError("letters must lie in 1..n-1")

    @property
    def target_length(self) -> int:
        return coxeter_length(self.n)


def standard_word(n: int) -> ReducedWord:
    """The reduced word (1, 2,1, 3,2,1, ...) for the longest permutation."""
    letters: list[int] = []
    for k in range(1, n):
        letters.extend(range(k, 0, -1))
    return ReducedWord(n, tuple(letters))


def word_permutation(w: ReducedWord) -> tuple[int, ...]:
    """One-line permutation of the product s_{i_1} ... s_{i_k} (0-based values)."""
    perm = list(range(w.n))
    for i in w.letters:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
               if perm[i] > perm[j])


def validate_reduced_word(w: ReducedWord) -> bool:
    """True iff the word has length n(n-1)/2 and its product is the longest
    permutation (inversion count equal to the length)."""
    nu = w.target_length
    return len(w.letters) == nu and inversions(word_permutation(w)) == nu


@dataclass(frozen=True)
class ChevalleyWord:
    """A reduced word with one positive parameter per letter and a sign
    selecting x-generators (upper) or y-generators (lower)."""

    word: ReducedWord
    params: tuple[Fraction, ...]
    sign: str

    def __post_init__(self):
        if self.sign not in (UPPER, LOWER):
            raise ValueError("sign must be 'upper' or 'lower'")
        if len(self.params) != len(self.word.letters):
            raise ValueError("need one parameter per letter")
        object.__setattr__(self, "params", tuple(rat(p) for p in self.params))
        if any(p <= 0 for p in self.params):
            raise ValueError("parameters must be strictly positive")


def unipotent_from_word(c: ChevalleyWord) -> SquareMatrix:
    """Ordered product of generators along the word.

    Raises NotReducedWordError unless the word is reduced for the longest
    permutation; the result is unitriangular of the word's sign.
    """
    if not validate_reduced_word(c.word):
        raise NotReducedWordError(f"{c.word.letters} is not reduced for GL_{c.word.n}")
    gen = x_gen if c.sign == UPPER else y_gen
    result = SquareMatrix.identity(c.word.n)
    for i, a in zip(c.word.letters, c.params):
        result = result * gen(c.word.n, i, a)
    return result


def _braid_adjacent(p, q, r):
    """Parameter rule for s_i s_j s_i = s_j s_i s_j with |i-j| = 1:
    (p, q, r) on (i, j, i) maps to (qr/(p+r), p+r, pq/(p+r)) on (j, i, j)."""
    total = p + r
    return (q * r / total, total, p * q / total)


def transform_params(
    word_from: ReducedWord, params: Sequence[Fraction], word_to: ReducedWord
) -> tuple[Fraction, ...]:
    """Exact positive parameters on `word_to` giving the same unipotent
    element as `params` on `word_from`.

    Walks the graph of reduced words under commutation moves (distant
    letters swap, parameters swap) and braid moves (adjacent letters, the
    rational rule above), breadth-first from `word_from`.  Both rules
    preserve positivity, so the output parameters are positive exactly
    when the inputs are.  Intended for small n; the word graph for
    GL_5 already has 768 vertices.
    """
    if word_from.n != word_to.n:
        raise ValueError("words must belong to the same GL_n")
    for w in (word_from, word_to):
        if not validate_reduced_word(w):
            raise NotReducedWordError(f"{w.letters} is not reduced")
    start = tuple(word_from.letters)
    goal = tuple(word_to.letters)
    state: dict[tuple[int, ...], tuple[Fraction, ...]] = {start: tuple(rat(p) for p in params)}
    frontier = [start]
    while frontier:
        if goal in state:
            return state[goal]
        next_frontier = []
        for letters in frontier:
            ps = state[letters]
            k = len(letters)
            for i in range(k - 1):
                a, b = letters[i], letters[i + 1]
                if abs(a - b) >= 2:
                    new_letters = letters[:i] + (b, a) + letters[i + 2:]
                    if new_letters not in state:
                        state[new_letters] = ps[:i] + (ps[i + 1], ps[i]) + ps[i + 2:]
                        next_frontier.append(new_letters)
            for i in range(k - 2):
                a, b, c = letters[i], letters[i + 1], letters[i + 2]
                if a == c and abs(a - b) == 1:
                    new_letters = letters[:i] + (b, a, b) + letters[i + 3:]
                    if new_letters not in state:
                        state[new_letters] = (
                            ps[:i] + _braid_adjacent(ps[i], ps[i + 1], ps[i + 2]) + ps[i + 3:]
                        )
                        next_frontier.append(new_letters)
        frontier = next_frontier
    raise NotReducedWordError("target word not reachable by braid moves")  # unreachable for valid input


@dataclass(frozen=True)
class TorusElement:
    """Diagonal matrix given by its nonzero diagonal entries."""

    diag: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(rat(d) for d in self.diag))
        if any(d == 0 for d in self.diag):
            raise ValueError("diagonal entries must be nonzero")

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def is_positive(self) -> bool:
        return all(d > 0 for d in self.diag)

    def matrix(self) -> SquareMatrix:
        return SquareMatrix.diagonal(self.diag)


@dataclass(frozen=True)
class MinorWitness:
    index: MinorIndex
    value: Fraction


@dataclass(frozen=True)
class PositivityReport:
    """Verdict of a membership scan; a failed verdict carries the first
    violating minor (scan order: size, then rows, then columns)."""

    verdict: bool
    witness: MinorWitness | None = None

    def __post_init__(self):
        if not self.verdict and self.witness is None:
            raise ValueError("a negative verdict requires a witness")

    def __bool__(self) -> bool:
        return self.verdict


def _witness(g: SquareMatrix, rows: tuple[int, ...], cols: tuple[int, ...]) -> MinorWitness:
    idx = MinorIndex(tuple(i + 1 for i in rows), tuple(j + 1 for j in cols))
    return MinorWitness(idx, minor(g, idx))


def is_in_G_pos(g: SquareMatrix) -> PositivityReport:
    """Exhaustive total positivity: every minor of every size is > 0."""
    mat, _ = clear_denominators(g)
    hit = kernels.scan_total_positivity(mat)
    if hit is None:
        return PositivityReport(True)
    return PositivityReport(False, _witness(g, *hit))


def is_in_G_pos_solid(g: SquareMatrix) -> PositivityReport:
    """Optimized membership test scanning only consecutive-index (solid)
    minors; agrees with `is_in_G_pos` on every matrix (Fekete-style
    reduction) and is cross-asserted against it in the test suite."""
    mat, _ = clear_denominators(g)
    hit = kernels.scan_solid_positivity(mat)
    if hit is None:
        return PositivityReport(True)
    return PositivityReport(False, _witness(g, *hit))


def is_in_U_pos(u: SquareMatrix, sign: str) -> PositivityReport:
    """Membership in the totally positive part of the unipotent group.

    Requires `u` unitriangular of the stated sign.  A minor is checked
    against its generic behaviour on that triangular group: minors that
    are identically zero there (for lower-triangular: some sorted column
    index exceeds its row index) must vanish exactly, every other minor
    must be strictly positive.
    """
    if sign not in (UPPER, LOWER):
        raise ValueError("sign must be 'upper' or 'lower'")
    lower = sign == LOWER
    ok = is_lower_unitriangular(u) if lower else is_upper_unitriangular(u)
    if not ok:
        raise NotUnitriangularError(f"input is not {sign} unitriangular")
    mat, _ = clear_denominators(u)
    hit = kernels.scan_unitriangular(mat, lower)
    if hit is None:
        return PositivityReport(True)
    rows, cols, _expected_zero = hit
    return PositivityReport(False, _witness(u, rows, cols))


def g_pos_from_factors(
    u_plus: ChevalleyWord, t: TorusElement, u_minus: ChevalleyWord
) -> SquareMatrix:
    """Element of the totally positive semigroup as an ordered product
    (upper unipotent) * (positive torus) * (lower unipotent)."""
    if u_plus.sign != UPPER or u_minus.sign != LOWER:
        raise ValueError("factors must be an upper and a lower word, in that order")
    if not t.is_positive:
        raise MembershipError("torus factor must be strictly positive")
    if not (u_plus.word.n == t.n == u_minus.word.n):
        raise ValueError("dimension mismatch between factors")
    return unipotent_from_word(u_plus) * t.matrix() * unipotent_from_word(u_minus)


def chi(i: int, t: TorusElement) -> Fraction:
    """The i-th simple character t_i / t_{i+1}: the unique scalar with
    t * x_i(a) * t^-1 = x_i(chi_i(t) * a)."""
    if not 1 <= i <= t.n - 1:
        raise IndexError(f"character index {i} out of range")
    return t.diag[i - 1] / t.diag[i]


def is_in_T_p_pos(t: TorusElement, p) -> bool:
    """True iff t is strictly positive and every simple character exceeds p."""
    p = rat(p)
    if p <= 0:
        raise ValueError("threshold p must be positive")
    return t.is_positive and all(chi(i, t) > p for i in range(1, t.n))
