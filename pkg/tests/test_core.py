from fractions import Fraction

import pytest

from laurentkit.core import (
    COMMON_FACTOR,
    COPRIME,
    LaurentPoly,
    Monomial,
    MonomialUnit,
    NotDivisible,
    VarSpace,
    VarSpaceMismatch,
    lp_add,
    lp_compose,
    lp_content_split,
    lp_coprime_probable,
    lp_divide_out_max_power,
    lp_exact_div,
    lp_mul,
    lp_set_zero,
    lp_specialize,
    lp_subst_inverse_ratio,
)
from laurentkit.parsing import parse_poly

XY = VarSpace.of(["x", "y"])


def P(text, space=XY, **consts):
    return parse_poly(text, space, consts or None)


class TestVarSpace:
    def test_roles_and_lookup(self):
        sp = VarSpace.of(["x1", "x2"], ["alpha"])
        assert sp.parameters == ("alpha",)
        assert sp.exchange_variables == ("x1", "x2")
        assert sp.role("alpha") == "parameter"
        assert "x2" in sp and "z" not in sp

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            VarSpace.of(["x", "x"])

    def test_pack_round_trip_with_negative_exponents(self):
        sp = VarSpace.of(["a", "b", "c"])
        for exps in [(0, 0, 0), (-3, 5, 0), (7, -1, -2), (2**20, -(2**20), 1)]:
            assert sp.unpack(sp.pack(exps)) == exps

    def test_mixed_spaces_rejected(self):
        other = VarSpace.of(["x", "z"])
        with pytest.raises(VarSpaceMismatch):
            lp_add(P("x"), LaurentPoly.var(other, "z"))


class TestMonomials:
    def test_zero_exponents_not_stored(self):
        m = Monomial.from_dict({"x": 2, "y": 0})
        assert m.exponents == (("x", 2),)
        assert m == Monomial.from_dict({"x": 2})

    def test_unit_times_inverse_is_one(self):
        u = MonomialUnit(-1, Monomial.from_dict({"x": 2, "y": -1}))
        assert u.to_poly(XY) * u.inverse().to_poly(XY) == LaurentPoly.const(XY, 1)


class TestAddMul:
    def test_additive_inverse(self):
        assert lp_add(P("x"), P("-x")).is_zero()

    def test_sum_collects(self):
        assert P("x^2 + y") + P("y") == P("x^2 + 2*y")

    def test_knight_exchange_polynomial(self):
        sp = VarSpace.of(["x_b", "x_c", "x_e", "x_f"], ["alpha", "beta"])
        got = P("alpha*x_b*x_f", sp) + P("beta*x_c*x_e", sp)
        assert got == P("alpha*x_b*x_f + beta*x_c*x_e", sp)
        assert len(got) == 2

    def test_unit_cancellation(self):
        assert lp_mul(P("x^-1"), P("x")) == LaurentPoly.const(XY, 1)

    def test_difference_of_squares(self):
        assert P("x + y") * P("x - y") == P("x^2 - y^2")

    def test_power_of_unit_with_negative_exponent(self):
        assert P("x*y^-2") ** -2 == P("x^-2*y^4")

    def test_power_of_non_unit_with_negative_exponent_rejected(self):
        with pytest.raises(NotDivisible):
            P("x + y") ** -1

    def test_polynomial_predicate(self):
        assert P("x^2 + y").is_polynomial()
        assert not P("x^-1 + y").is_polynomial()


class TestExactDivision:
    def test_difference_of_squares(self):
        assert lp_exact_div(P("x^2 - y^2"), P("x + y")) == P("x - y")

    def test_monomials_are_units(self):
        assert lp_exact_div(P("x + y"), P("x")) == P("1 + x^-1*y")

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            lp_exact_div(P("x + y"), P("x + 2*y"))

    def test_integer_coefficient_must_divide(self):
        with pytest.raises(NotDivisible):
            lp_exact_div(P("x + y"), P("2"))

    def test_parameters_are_not_units(self):
        sp = VarSpace.of(["x"], ["a"])
        with pytest.raises(NotDivisible):
            lp_exact_div(P("x", sp), P("a", sp))
        assert lp_exact_div(P("a*x + a^2", sp), P("a", sp)) == P("x + a", sp)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            lp_exact_div(P("x"), LaurentPoly.zero(XY))

    def test_laurent_numerator(self):
        num = P("x^-3*y + x^-2*y^2") * P("x^2 + x*y + y^3")
        assert lp_exact_div(num, P("x^2 + x*y + y^3")) == P("x^-3*y + x^-2*y^2")


class TestSubstitution:
    @pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (3, 1)])
    def test_unit_ratio(self, a, b):
        sp = VarSpace.of(["x1", "x2"])
        F = P("x1^a*x2^b + 1", sp, a=a, b=b)
        got = lp_subst_inverse_ratio(F, "x2", LaurentPoly.const(sp, 1))
        assert got == P("x1^a*x2^(-b) + 1", sp, a=a, b=b)

    @pytest.mark.parametrize("a,b,c", [(1, 2, 1), (2, 1, 3), (3, 3, 2)])
    def test_somos4_family_step(self, a, b, c):
        sp = VarSpace.of(["x1", "x2", "x3"])
        G3 = P("x1^a*x3^c + x2^b", sp, a=a, b=b, c=c)
        got = lp_subst_inverse_ratio(G3, "x3", P("x1^b", sp, b=b))
        assert got == P(f"x1^{a + b * c}*x3^(-c) + x2^b", sp, b=b, c=c)

    def test_independent_polynomial_unchanged(self):
        p = P("x^2 + 3")
        assert lp_subst_inverse_ratio(p, "y", P("x + 1")) == p

    def test_ratio_may_not_involve_the_variable(self):
        with pytest.raises(ValueError):
            lp_subst_inverse_ratio(P("x + y"), "y", P("y + 1"))

    def test_negative_exponent_kept_when_laurent(self):
        # y^-1 with y <- (x+1)/y gives y/(x+1): not Laurent
        with pytest.raises(NotDivisible):
            lp_subst_inverse_ratio(P("y^-1"), "y", P("x + 1"))
        # y^-1 * (x+1) is fine
        assert lp_subst_inverse_ratio(P("x*y^-1 + y^-1"), "y", P("x + 1")) == P("y")


class TestSetZero:
    def test_unit_result(self):
        sp = VarSpace.of(["x1", "x2"])
        assert lp_set_zero(P("x1^2*x2^3 + 1", sp), "x1") == LaurentPoly.const(sp, 1)

    def test_somos4_family_Q3(self):
        sp = VarSpace.of(["x1", "x2", "x3"])
        assert lp_set_zero(P("x1*x3^2 + x2^3", sp), "x3") == P("x2^3", sp)

    def test_absent_variable(self):
        p = P("x^2 + 1")
        assert lp_set_zero(p, "y") == p

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            lp_set_zero(P("y^-1 + x"), "y")


class TestContentSplit:
    def test_unit_content(self):
        sp = VarSpace.of(["x1", "x2"])
        L, core = lp_content_split(P("x1^2*x2^-3 + 1", sp))
        assert L == P("x2^-3", sp)
        assert core == P("x1^2 + x2^3", sp)

    def test_knight_step(self):
        sp = VarSpace.of(["x_b", "x_c", "x_e", "x_f", "x_g"], ["alpha", "beta"])
        L, core = lp_content_split(P("alpha*beta*x_e*x_g*x_f*x_b^-1 + beta*x_c*x_e", sp))
        assert L == P("beta*x_e*x_b^-1", sp)
        assert core == P("alpha*x_g*x_f + x_b*x_c", sp)

    def test_integer_content(self):
        L, core = lp_content_split(P("2*x + 4*y"))
        assert L == LaurentPoly.const(XY, 2)
        assert core == P("x + 2*y")

    def test_sign_convention(self):
        L, core = lp_content_split(P("-x^2 + y"))
        assert core.leading_coefficient() > 0
        assert L * core == P("-x^2 + y")


class TestMaxPower:
    def test_square_factor(self):
        assert lp_divide_out_max_power(P("(x+y)^2*(x-y)"), P("x + y")) == (P("x - y"), 2)

    def test_unit_divisor(self):
        p = P("x + y^3")
        assert lp_divide_out_max_power(p, LaurentPoly.const(XY, 1)) == (p, 0)
        assert lp_divide_out_max_power(p, P("x^2")) == (p, 0)

    def test_coprime_divisor(self):
        p = P("x + y^3")
        assert lp_divide_out_max_power(p, P("x + 1")) == (p, 0)


class TestSpecialize:
    def test_values(self):
        assert lp_specialize(P("x + y"), {"x": 2, "y": 3}) == 5
        assert lp_specialize(P("x^-1"), {"x": 2}) == Fraction(1, 2)

    def test_missing_value(self):
        with pytest.raises(KeyError):
            lp_specialize(P("x + y"), {"x": 1})

    def test_zero_at_negative_exponent(self):
        with pytest.raises(ZeroDivisionError):
            lp_specialize(P("x^-1"), {"x": 0})


class TestCoprimality:
    def test_sum_and_difference(self):
        assert lp_coprime_probable(P("x + y"), P("x - y"), seed=1) == COPRIME

    def test_shared_factor(self):
        assert lp_coprime_probable(P("(x+y)*x"), P("(x+y)*y"), seed=1) == COMMON_FACTOR

    def test_knight_pair(self):
        sp = VarSpace.of(["x_g", "x_f", "x_b", "x_c", "x_e", "x_p"], ["alpha"])
        G = P("alpha*x_g*x_f + x_b*x_c", sp)
        Q = P("alpha*x_e*x_p", sp)
        assert lp_coprime_probable(G, Q, seed=0) == COPRIME

    def test_shared_integer_content(self):
        assert lp_coprime_probable(P("2*x + 2"), P("4*y + 2"), seed=0) == COMMON_FACTOR

    def test_shared_parameter(self):
        sp = VarSpace.of(["x"], ["a"])
        assert lp_coprime_probable(P("a*x + a", sp), P("a*x^2 + a", sp), seed=0) == COMMON_FACTOR

    def test_deterministic_given_seed(self):
        p, q = P("x^3 + y^2 + 1"), P("x*y + 7")
        assert {lp_coprime_probable(p, q, seed=s) for s in range(3)} == {COPRIME}


class TestCompose:
    def test_substitutes_and_carries_unmapped(self):
        target = VarSpace.of(["x", "y", "t"])
        got = lp_compose(P("x^2 + y"), {"x": parse_poly("t + 1", target)}, target)
        assert got == parse_poly("t^2 + 2*t + 1 + y", target)

    def test_negative_power_of_monomial(self):
        target = VarSpace.of(["x", "y"])
        assert lp_compose(P("x^-1"), {"x": parse_poly("-y", target)}, target) == parse_poly("-y^-1", target)
        # 1/(2y) has a non-integer coefficient
        with pytest.raises(NotDivisible):
            lp_compose(P("x^-1"), {"x": parse_poly("2*y", target)}, target)
