"""Homogeneous polynomials over F_p: action convention, theta, shallow kills.

The frozen coefficient tuples below were expanded by hand from the product
formulas; they pin the representation (index = X power) and the action
convention at the same time.
"""

import random

import pytest

from padicelim.errors import InvalidRangeError, NotPolynomialError
from padicelim.fp_poly import (
    HPoly,
    act,
    linear_form_power,
    mat_mul,
    pure_y_defect,
    shallow_kill_check,
    shallow_summand,
    theta,
)


class TestHPoly:
    def test_degree_and_coeff_indexing(self):
        f = HPoly(5, (1, 0, 3))  # Y^2 + 3 X^2
        assert f.degree == 2 and f.coeff(0) == 1 and f.coeff(2) == 3
        assert f.min_x_degree() == 0 and f.max_x_degree() == 2

    def test_zero_polynomial_degrees_undefined(self):
        z = HPoly(5, (0, 0))
        assert z.is_zero
        with pytest.raises(ValueError):
            z.min_x_degree()

    def test_mul_matches_known_product(self):
        # (X + Y)(X - Y) = X^2 - Y^2 over F_5
        f = HPoly(5, (1, 1))
        g = HPoly(5, (-1, 1))
        assert f * g == HPoly(5, (-1, 0, 1))

    def test_division_shifts(self):
        f = theta(5)
        assert f.div_x() == HPoly(5, (-1, 0, 0, 0, 1, 0))  # X^4 Y - Y^5
        assert f.div_y() == HPoly(5, (0, -1, 0, 0, 0, 1))  # X^5 - X Y^4
        with pytest.raises(NotPolynomialError):
            HPoly(5, (1, 1)).div_x()
        with pytest.raises(NotPolynomialError):
            HPoly(5, (1, 1)).div_y()

    def test_mul_xy_shifts(self):
        f = HPoly(5, (2, 3))
        assert f.mul_x(2) == HPoly(5, (0, 0, 2, 3))
        assert f.mul_y(1) == HPoly(5, (2, 3, 0))


class TestTheta:
    def test_shape(self):
        th = theta(5)
        assert th.degree == 6
        assert th.coeff(5) == 1 and th.coeff(1) == 5 - 1
        assert th.min_x_degree() == 1
        assert th.evaluate(1, 1) == 0

    def test_determinant_character_full_gl2_f5(self):
        th = theta(5)
        for a in range(5):
            for b in range(5):
                for c in range(5):
                    for d in range(5):
                        det = (a * d - b * c) % 5
                        if det == 0:
                            continue
                        assert act(((a, b), (c, d)), th) == th.scale(det)


class TestAction:
    def test_identity(self):
        f = HPoly(7, tuple(range(8)))
        assert act(((1, 0), (0, 1)), f) == f

    def test_displayed_transformation(self):
        # (0 1; 1 -lam) sends X^(p-1) Y^(r-p+1) - Y^r
        #               to   Y^(p-1) (X - lam Y)^(r-p+1) - (X - lam Y)^r
        p, r = 5, 8
        coeffs = [0] * (r + 1)
        coeffs[0] = -1
        coeffs[p - 1] = 1
        f = HPoly(p, tuple(coeffs))
        for lam in range(p):
            got = act(((0, 1), (1, -lam)), f)
            want = (
                linear_form_power(p, 0, 1, p - 1) * linear_form_power(p, 1, -lam, r - p + 1)
                - linear_form_power(p, 1, -lam, r)
            )
            assert got == want, lam

    def test_pure_y_coefficient_formula(self):
        # coefficient of Y^r in the transform is (-lam)^(r-p+1) - (-lam)^r
        for p, r in [(5, 8), (5, 9), (7, 11)]:
            for lam in range(p):
                want = (pow(-lam, r - p + 1, p) - pow(-lam, r, p)) % p
                assert pure_y_defect(p, r, lam) == want

    def test_right_action_composition(self):
        rng = random.Random(7121)
        p = 7
        for _ in range(40):
            m1 = ((rng.randrange(p), rng.randrange(p)), (rng.randrange(p), rng.randrange(p)))
            m2 = ((rng.randrange(p), rng.randrange(p)), (rng.randrange(p), rng.randrange(p)))
            f = HPoly(p, tuple(rng.randrange(p) for _ in range(rng.randint(1, 9))))
            assert act(mat_mul(m1, m2), f) == act(m2, act(m1, f))


class TestShallowSummand:
    def test_p5_r8_i1_lam1_frozen(self):
        # (X - Y)^3 (X^5 - X Y^4) expanded by hand, reduced mod 5
        got = shallow_summand(5, 8, 1, 1)
        assert got == HPoly(5, (0, 1, -3, 3, -1, -1, 3, -3, 1))
        assert got.min_x_degree() == 1

    def test_p5_r14_i2_lam0_frozen(self):
        # X^3 theta^2 / Y = X^13 Y - 2 X^9 Y^5 + X^5 Y^9
        got = shallow_summand(5, 14, 2, 0)
        coeffs = [0] * 15
        coeffs[13], coeffs[9], coeffs[5] = 1, -2, 1
        assert got == HPoly(5, tuple(coeffs))
        assert got.min_x_degree() == 5 >= 2

    def test_below_bound_is_not_polynomial(self):
        with pytest.raises(NotPolynomialError):
            shallow_summand(5, 4, 1, 2)


class TestShallowKillCheck:
    def test_p5_r8_i1(self):
        report = shallow_kill_check(5, 8, 1)
        assert report.passed
        # f_1 = -X^4 Y^4 + Y^8: unit coefficient 1 at Y^8
        assert report.generator_unit == 1
        assert report.pure_y_defects == (0,) * 5

    def test_p5_r14_i2(self):
        report = shallow_kill_check(5, 14, 2)
        assert report.passed
        assert all(md >= 2 for _lam, md in report.summand_min_x)
        assert report.pure_y_defects is None

    def test_range_errors(self):
        with pytest.raises(InvalidRangeError):
            shallow_kill_check(5, 10, 2)  # 10 < 2*6 - 1
        with pytest.raises(InvalidRangeError):
            shallow_kill_check(5, 20, 1)  # r > p^2 - p - 1
        with pytest.raises(InvalidRangeError):
            shallow_kill_check(5, 8, 0)

    def test_r_equals_p_minus_1_negative(self):
        # the pure-power cancellation genuinely fails at lam = 0 there
        assert pure_y_defect(5, 4, 0) == 1
        for lam in range(1, 5):
            assert pure_y_defect(5, 4, lam) == 0

    def test_small_sweep_p5(self):
        for r in range(5, 20):
            for i in range(1, r // 5 + 1):
                if r < i * 6 - 1:
                    continue
                assert shallow_kill_check(5, r, i).passed, (r, i)
