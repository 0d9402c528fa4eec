from fractions import Fraction as F

import pytest

from tpgl.errors import MembershipError, NotUnitriangularError, SingularMatrixError
from tpgl.flags import (
    FlagPairClass,
    antistandard_flag,
    are_opposed,
    borel_from_basis,
    borel_from_lower,
    flags_equal,
    is_in_B_neg,
    is_in_B_pos,
    standard_flag,
    tilde_map,
)
from tpgl.linalg import SquareMatrix, inverse, rank_of_rows
from tpgl.pinning import (
    LOWER,
    ChevalleyWord,
    is_in_U_pos,
    standard_word,
    unipotent_from_word,
    y_gen,
)
from tpgl.sampling import SplitMix64, positive_tuple


def lower_member(rng, n, lo=F(1, 4), hi=F(4)):
    w = standard_word(n)
    return unipotent_from_word(
        ChevalleyWord(w, positive_tuple(rng, len(w.letters), lo, hi), LOWER))


class TestBorelConstruction:
    def test_identity_gives_standard_flag(self):
        b = borel_from_lower(SquareMatrix.identity(3))
        assert flags_equal(b, standard_flag(3))

    def test_gl2_line(self):
        b = borel_from_lower(y_gen(2, 1, 1))
        assert b.basis.col(0) == (F(1), F(1))

    def test_canonical_representative_roundtrip(self):
        rng = SplitMix64(41)
        u = lower_member(rng, 3)
        upper = SquareMatrix.from_rows([[2, 5, 1], [0, 1, 3], [0, 0, 7]])
        b = borel_from_basis(u * upper)  # same flag, scrambled basis
        assert b.canonical_lower == u

    def test_rejects_non_unitriangular(self):
        with pytest.raises(NotUnitriangularError):
            borel_from_lower(SquareMatrix.from_rows([[1, 1], [0, 1]]))

    def test_rejects_singular_basis(self):
        with pytest.raises(SingularMatrixError):
            borel_from_basis(SquareMatrix.from_rows([[1, 1], [1, 1]]))

    def test_antistandard_not_graphable(self):
        assert antistandard_flag(3).canonical_lower is None


class TestMembership:
    def test_word_product_flag_is_positive(self):
        u = unipotent_from_word(
            ChevalleyWord(standard_word(3), (F(1), F(1), F(1)), LOWER))
        assert is_in_B_pos(borel_from_lower(u))

    def test_standard_flag_not_positive(self):
        assert not is_in_B_pos(standard_flag(3))

    def test_inverse_flag_is_negative(self):
        rng = SplitMix64(43)
        u = lower_member(rng, 3)
        assert is_in_B_neg(borel_from_lower(inverse(u)))
        assert not is_in_B_neg(borel_from_lower(u))

    def test_roundtrip_matches_representative(self):
        rng = SplitMix64(47)
        for n in (2, 3, 4):
            for _ in range(8):
                u = lower_member(rng, n)
                assert is_in_B_pos(borel_from_lower(u)) == bool(is_in_U_pos(u, LOWER))

    def test_flag_pair_certificates(self):
        rng = SplitMix64(53)
        u, v = lower_member(rng, 3), lower_member(rng, 3)
        FlagPairClass(borel_from_lower(u), borel_from_lower(inverse(v)))
        with pytest.raises(MembershipError):
            FlagPairClass(borel_from_lower(u), borel_from_lower(v))


class TestTildeMap:
    def test_gl3_worked_example(self):
        u = SquareMatrix.from_rows([[1, 0, 0], [-2, 1, 0], [1, -2, 1]])
        expected = SquareMatrix.from_rows(
            [[1, F(-2, 3), 1], [0, 1, -2], [0, 0, 1]])
        assert tilde_map(u) == expected

    def test_gl2_line_matching(self):
        x = F(-5, 2)
        u = SquareMatrix.from_rows([[1, 0], [x, 1]])
        assert tilde_map(u) == SquareMatrix.from_rows([[1, 1 / x], [0, 1]])

    def test_flags_coincide(self):
        # conjugating the anti-standard flag by the image gives the same flag
        # as conjugating the standard flag by the input
        rng = SplitMix64(59)
        u = inverse(lower_member(rng, 3))
        ut = tilde_map(u)
        left = borel_from_basis(u)
        right_cols = [ut.col(2), ut.col(1), ut.col(0)]  # anti-standard order
        right = borel_from_basis(SquareMatrix(tuple(zip(*right_cols))))
        assert flags_equal(left, right)

    def test_precondition(self):
        with pytest.raises(MembershipError):
            tilde_map(y_gen(2, 1, 1))  # inverse is not totally positive
        with pytest.raises(NotUnitriangularError):
            tilde_map(SquareMatrix.identity(2).scaled(2))

    def test_gl3_closed_form_on_admissible_samples(self):
        rng = SplitMix64(61)
        for _ in range(30):
            u = inverse(lower_member(rng, 3))
            x, y, z = u.entries[1][0], u.entries[2][1], u.entries[2][0]
            assert x < 0 and y < 0 and z > 0 and x * y - z > 0
            expected = SquareMatrix.from_rows([
                [1, y / (x * y - z), 1 / z],
                [0, 1, x / z],
                [0, 0, 1]])
            assert tilde_map(u) == expected

    def test_span_matching_on_seeded_samples(self):
        rng = SplitMix64(67)
        for n in (3, 4):
            for _ in range(100):
                u = inverse(lower_member(rng, n, F(1, 8), F(8)))
                ut = tilde_map(u)
                for k in range(1, n + 1):
                    combined = [list(u.col(c)) for c in range(k)]
                    combined += [list(ut.col(n - 1 - c)) for c in range(k)]
                    assert rank_of_rows(combined) == k


class TestOpposedness:
    def test_standard_vs_antistandard(self):
        assert are_opposed(standard_flag(3), antistandard_flag(3))

    def test_flag_vs_itself(self):
        assert not are_opposed(standard_flag(2), standard_flag(2))

    def test_certified_pairs_are_opposed(self):
        rng = SplitMix64(71)
        for n in (2, 3, 4):
            for _ in range(10):
                u, v = lower_member(rng, n), lower_member(rng, n)
                pair = FlagPairClass(borel_from_lower(u), borel_from_lower(inverse(v)))
                assert are_opposed(pair.first, pair.second)
