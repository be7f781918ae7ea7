from fractions import Fraction

import pytest

from contactkit.parser import ExpressionError, ZeroDenominatorError, parse_scalar
from contactkit.scalar import (Chart, ChartMismatchError, OffVarietyError, PoleError,
                               ScalarDivisionError, differentiate, evaluate,
                               is_identically_zero, scalar_arith)

XY = Chart(["x", "y", "z"])
S3 = Chart(["x1", "x2", "x3", "x4"], relation="x1^2 + x2^2 + x3^2 + x4^2 - 1")


def P(text, chart=XY):
    return parse_scalar(text, chart)


class TestChart:
    def test_duplicate_coordinates_rejected(self):
        with pytest.raises(ValueError):
            Chart(["x", "x"])

    def test_constant_relation_rejected(self):
        with pytest.raises(ValueError):
            Chart(["x"], relation="3")

    def test_relation_lead_is_last_candidate(self):
        assert S3.lead == 3
        assert S3.embedded
        assert S3.relation_text() == "x1^2 + x2^2 + x3^2 + x4^2 - 1"

    def test_lie_frame_chart_has_no_coordinates(self):
        with pytest.raises(ValueError):
            Chart(["x"], backend="lie-frame")


class TestParse:
    def test_coordinate_on_sphere(self):
        assert P("x3", S3) == S3.coord("x3")

    def test_rational_coefficient(self):
        s = P("x*y + 1/2")
        assert s.is_polynomial()
        assert s.evaluate({"x": 0, "y": 5, "z": 0}) == Fraction(1, 2)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominatorError):
            P("1/(x - x)")

    def test_unknown_identifier_reports_position(self):
        with pytest.raises(ExpressionError) as err:
            P("x + w")
        assert err.value.pos == 4

    @pytest.mark.parametrize("text", ["x +", "(x", "x ^ y", "x ^ -1", "2 3", ""])
    def test_malformed(self, text):
        with pytest.raises(ExpressionError):
            P(text)

    def test_precedence(self):
        assert P("-x^2") == -(P("x") * P("x"))
        assert P("2^3^2") == P("512")
        assert P("1 - 2 - 3") == P("-4")
        assert P("8 / 4 / 2") == P("1")

    def test_decimal_literal_is_exact(self):
        assert P("0.1") == P("1/10")


class TestArithmetic:
    def test_add(self):
        assert scalar_arith(P("x + y"), P("x - y"), "add") == P("2*x")

    def test_cancellation(self):
        assert scalar_arith(P("x/y"), P("y/x"), "mul") == XY.one()

    def test_sphere_relation(self):
        assert P("x1^2 + x2^2 + x3^2 + x4^2", S3) == S3.one()

    def test_chart_mismatch(self):
        with pytest.raises(ChartMismatchError):
            scalar_arith(P("x"), S3.coord("x1"), "add")

    def test_divide_by_zero_scalar(self):
        with pytest.raises(ScalarDivisionError):
            P("x") / XY.zero()

    def test_canonical_denominator(self):
        s = P("1/(2 - 2*x)")
        t = P("-1/(2*x - 2)")
        assert s == t
        assert (s.num, s.den) == (t.num, t.den)

    def test_equal_scalars_hash_equal(self):
        assert hash(P("(x^2 - 1)/(x - 1)")) == hash(P("x + 1"))


    def test_large_common_factor(self):
        # gcd with a nontrivial trivariate factor, both sides dense
        f = P("(3*x^2*y - 5*z^3 + 2*x*y*z + 7)^2")
        a = P("(x^3 - 2*y*z^2 + 4)^3") * f
        b = P("(y^2*z - x + 3*z)^2") * f
        r = a / b
        assert r == P("(x^3 - 2*y*z^2 + 4)^3 / (y^2*z - x + 3*z)^2")

    def test_coprime_sum_stays_unreduced(self):
        s = P("1/(x^2 + y*z + 1)") + P("1/(y^3 - x*z + 2)")
        assert s.den == (P("x^2 + y*z + 1") * P("y^3 - x*z + 2")).num


class TestDiff:
    def test_polynomial(self):
        assert differentiate(P("x^2*y"), "x") == P("2*x*y")

    def test_constant(self):
        assert differentiate(P("7/3"), "z").is_zero()

    def test_quotient_rule(self):
        assert differentiate(P("y/x"), "x") == P("-y/x^2")

    def test_unknown_coordinate(self):
        with pytest.raises(KeyError):
            differentiate(P("x"), "w")

    def test_sphere_derivative_acts_on_normal_form(self):
        # x4^3 is stored as x4 - x1^2 x4 - x2^2 x4 - x3^2 x4
        d = differentiate(P("x4^3", S3), "x1")
        assert d == P("-2*x1*x4", S3)


class TestEvaluate:
    def test_exact(self):
        assert evaluate(P("x + y"), {"x": Fraction(1, 2), "y": Fraction(1, 2), "z": 0}) == 1

    def test_eta_xi_on_sphere(self):
        # eta(xi) = x3^2 + x4^2 + x1^2 + x2^2
        s = P("x3*x3 + x4*x4 + x1*x1 + x2*x2", S3)
        assert evaluate(s, {"x1": 1, "x2": 0, "x3": 0, "x4": 0}) == 1

    def test_pole(self):
        with pytest.raises(PoleError):
            evaluate(P("1/x"), {"x": 0, "y": 0, "z": 0})

    def test_off_variety(self):
        with pytest.raises(OffVarietyError):
            evaluate(S3.coord("x1"), {"x1": 1, "x2": 1, "x3": 0, "x4": 0})

    def test_missing_coordinate(self):
        with pytest.raises(KeyError):
            evaluate(P("x"), {"x": 1})


class TestZero:
    def test_difference(self):
        assert is_identically_zero(P("x - x"))

    def test_relation_itself(self):
        assert is_identically_zero(P("x1^2 + x2^2 + x3^2 + x4^2 - 1", S3))

    def test_not_in_ideal(self):
        # remainder of x1^2 - 1 has no x4^2 to reduce, so it survives
        assert not is_identically_zero(P("x1^2 - 1", S3))
