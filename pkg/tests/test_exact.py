import json
from fractions import Fraction

import mpmath as mp
import pytest

from multitangent.exact import CoeffExpr, MzvMonomial, PiRational
from multitangent.words import Composition

C = Composition.of


class TestPiRational:
    def test_ring_ops(self):
        a = PiRational({0: Fraction(1, 2), 2: Fraction(3)})
        b = PiRational({2: Fraction(-3), 4: Fraction(1, 5)})
        s = a + b
        assert s == PiRational({0: Fraction(1, 2), 4: Fraction(1, 5)})
        p = PiRational({2: 1}) * PiRational({4: Fraction(1, 2)})
        assert p == PiRational({6: Fraction(1, 2)})
        assert -a + a == PiRational(0)
        assert not PiRational(0)

    def test_rejects_odd_or_negative_exponents(self):
        with pytest.raises(ValueError):
            PiRational({1: 1})
        with pytest.raises(ValueError):
            PiRational({-2: 1})

    def test_numeric_image(self):
        with mp.workdps(30):
            val = PiRational({2: Fraction(1, 6)}).to_mpf()
            assert abs(val - mp.pi**2 / 6) < mp.mpf("1e-28")

    def test_scalar_coercion_and_division(self):
        assert PiRational(3) + 2 == PiRational(5)
        assert PiRational({2: 1}) / 2 == PiRational({2: Fraction(1, 2)})

    def test_homogeneity(self):
        assert PiRational({4: 1}).is_homogeneous(4)
        assert not PiRational({0: 1, 4: 1}).is_homogeneous(4)


class TestCoeffExpr:
    def test_formal_product_keeps_monomials(self):
        e = CoeffExpr.symbol(C(2)) * CoeffExpr.symbol(C(3))
        (mono, coef), = list(e.items())
        assert mono == MzvMonomial([C(2), C(3)])
        assert coef == PiRational(1)

    def test_zero_pruning(self):
        e = CoeffExpr.symbol(C(2)) - CoeffExpr.symbol(C(2))
        assert not e
        assert len(e) == 0

    def test_weight_homogeneity(self):
        e = CoeffExpr.symbol(C(2, 2)) + CoeffExpr({MzvMonomial.one(): PiRational({4: 1})})
        assert e.is_weight_homogeneous(4)
        assert not e.is_weight_homogeneous(5)

    def test_json_wire_format(self):
        e = CoeffExpr({MzvMonomial([C(2, 1), C(3)]): PiRational({2: Fraction(1, 3)})})
        data = e.to_json()
        # factors ride in canonical order: (3) sorts before (2,1)
        assert data == {
            "terms": [{"pi2": 2, "coef": "1/3", "mzv": [[3], [2, 1]]}]
        }
        assert CoeffExpr.from_json(json.loads(json.dumps(data))) == e

    def test_json_round_trip_multi(self):
        e = (
            CoeffExpr.symbol(C(4), Fraction(2))
            + CoeffExpr.scalar(PiRational({2: Fraction(-1, 2)}))
            + CoeffExpr.symbol(C(2)) * CoeffExpr.symbol(C(2))
        )
        assert CoeffExpr.from_json(e.to_json()) == e

    def test_monomial_sorting_is_canonical(self):
        m1 = MzvMonomial([C(3), C(2, 1)])
        m2 = MzvMonomial([C(2, 1), C(3)])
        assert m1 == m2 and hash(m1) == hash(m2)
