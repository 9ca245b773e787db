from fractions import Fraction

import mpmath as mp
import pytest

from multitangent.errors import NumericRecheckError
from multitangent.exact import CoeffExpr, PiRational
from multitangent.mzv import NumericContext, mzv_numeric
from multitangent.reduction import (
    assert_clean,
    b_coeff,
    bounded_compositions,
    delta,
    reduce,
    te1_identity_residual,
    z_coeff,
)
from multitangent.words import Composition, enumerate_compositions, repeat, stuffle

C = Composition.of
CTX = NumericContext(target_abs_error=1e-10)


def sym(*parts):
    return CoeffExpr.symbol(C(*parts))


class TestBCoeff:
    def test_length_one_is_one(self):
        assert b_coeff(1, C(7), (0,)) == 1

    def test_mixed_signs(self):
        # signs: (-1)^(k_1) * (-1)^(s_3), binomials C(2,1) * C(1,1)
        assert b_coeff(2, C(2, 1, 2), (1, 0, 0)) == (-1) * (+1) * 2 * 1 == -2

    def test_simple_pair(self):
        assert b_coeff(1, C(2, 2), (0, 0)) == 1

    def test_enumeration_order(self):
        got = list(bounded_compositions(2, 2))
        assert got == [(0, 2), (1, 1), (2, 0)]


class TestZCoeff:
    def test_right_fragment_empty(self):
        assert z_coeff(2, 0, C(2, 2)) == sym(2)

    def test_single_pivot_trivial(self):
        assert z_coeff(1, 0, C(9)) == CoeffExpr.scalar(1)

    def test_left_fragment_empty(self):
        assert z_coeff(1, 0, C(2, 2)) == sym(2)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            z_coeff(1, 2, C(2, 2))
        with pytest.raises(ValueError):
            z_coeff(3, 0, C(2, 2))


class TestDelta:
    def test_pair_of_ones(self):
        assert delta(C(1, 1)) == PiRational({2: Fraction(-1, 2)})

    def test_odd_run_is_zero(self):
        assert not delta(C(1, 1, 1))

    def test_non_ones_is_zero(self):
        assert not delta(C(2, 1))

    def test_four_ones(self):
        assert delta(repeat(1, 4)) == PiRational({4: Fraction(1, 24)})


class TestReduce:
    def test_two_two_exact(self):
        red = reduce(C(2, 2))
        assert not red.constant
        assert red.coeffs == {2: sym(2).scale(2)}

    def test_two_one_two_vanishes_numerically(self):
        red = reduce(C(2, 1, 2))
        for k, expr in red.coeffs.items():
            assert abs(mzv_numeric(expr, NumericContext(target_abs_error=1e-9))) <= 1e-9

    def test_divergent_pairs_vanish_exactly(self):
        assert reduce(C(1, 2)).is_zero()
        assert reduce(C(2, 1)).is_zero()

    def test_all_ones_pair(self):
        red = reduce(C(1, 1))
        assert red.constant == PiRational({2: Fraction(-1, 2)})
        assert not red.coeffs

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            reduce(Composition())

    def test_te1_coefficient_of_212_matches_hand_expansion(self):
        # the order-1 coefficient is (Ze2)^2 - 2 Ze[2,2] - 4 Ze[3,1]
        expected = sym(2) * sym(2) - sym(2, 2).scale(2) - sym(3, 1).scale(4)
        assert reduce(C(2, 1, 2)).coefficient(1) == expected

    def test_weight_homogeneity_to_weight_ten(self):
        for w in range(1, 11):
            for s in enumerate_compositions(w, "all"):
                assert reduce(s).is_weight_homogeneous(), s

    def test_symmetric_odd_weight_12_sequences_vanish(self):
        # symmetric {1,2}-sequences of odd weight and length > 1 reduce to 0
        ctx = NumericContext(target_abs_error=1e-9)
        checked = 0
        for w in range(3, 10, 2):
            for s in enumerate_compositions(w, "convergent"):
                if (
                    s.length > 1
                    and s.reverse() == s
                    and all(p in (1, 2) for p in s.parts)
                ):
                    for k, expr in reduce(s).coeffs.items():
                        assert abs(mzv_numeric(expr, ctx)) <= 1e-8, (s, k)
                    checked += 1
        assert checked >= 3  # (2,1,2), (2,1,1,1,2), (2,1,2,1,2), ...

    def test_eisenstein_square_relation(self):
        # Te^2 Te^2 = 2 Te[2,2] + Te[4]; substituting reduce((2,2)) makes it
        # (Te^2)^2 = 4 Ze[2] Te^2 + Te^4 with exact coefficients
        expansion = stuffle(C(2), C(2))
        assert expansion[C(2, 2)] == 2 and expansion[C(4)] == 1
        red = reduce(C(2, 2))
        assert red.coeffs[2].scale(2) == sym(2).scale(4)

    def test_weight6_family_relation_numeric(self):
        # 3 reduce((2,2,2)) + 2 reduce((3,3)) has all-zero coefficients
        ctx = NumericContext(target_abs_error=1e-10)
        ra, rb = reduce(repeat(2, 3)), reduce(repeat(3, 2))
        for k in set(ra.coeffs) | set(rb.coeffs):
            total = ra.coefficient(k).scale(3) + rb.coefficient(k).scale(2)
            if total:
                assert abs(mzv_numeric(total, ctx)) <= 1e-9

    def test_monotangent_order_range(self):
        ctx = NumericContext(target_abs_error=1e-9)
        for s in [C(2, 2), C(3, 1, 2), C(2, 1, 1, 2), C(4, 3)]:
            red = reduce(s)
            assert max(red.coeffs) <= max(s.parts)
            low = [k for k in red.coeffs if k < 2]
            for k in low:
                assert abs(mzv_numeric(red.coeffs[k], ctx)) <= 1e-8


class TestTe1Residual:
    @pytest.mark.parametrize("parts", [(2, 1, 2), (3, 2, 2), (2, 1, 3)])
    def test_small(self, parts):
        assert te1_identity_residual(
            Composition(parts), NumericContext(target_abs_error=1e-10)
        ) <= 1e-9

    def test_symbolically_zero_for_22(self):
        assert not reduce(C(2, 2)).coefficient(1)
        assert te1_identity_residual(C(2, 2)) == 0.0

    def test_requires_convergent(self):
        with pytest.raises(ValueError):
            te1_identity_residual(C(1, 2))


class TestAssertClean:
    def test_drops_verified_zero(self):
        cleaned = assert_clean(reduce(C(2, 1, 2)), CTX)
        assert cleaned.is_zero()

    def test_detects_corruption(self):
        red = reduce(C(2, 2))
        red.coeffs[1] = sym(3)  # nonzero junk in the order-1 slot
        with pytest.raises(NumericRecheckError):
            assert_clean(red, CTX)


class TestSerialization:
    def test_json_shape(self):
        data = reduce(C(2, 2)).to_json()
        assert data["sequence"] == [2, 2]
        assert data["constant"] == []
        assert "2" in data["coeffs"]

    def test_text_examples(self):
        assert reduce(C(2, 2)).text() == "Te[2,2] = 2·Ze[2]·Te^2"
        assert reduce(C(2, 1)).text() == "Te[2,1] = 0"
        assert reduce(C(2)).text() == "Te[2] = Te^2"
