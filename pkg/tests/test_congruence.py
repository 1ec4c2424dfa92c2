"""Master congruence: parameters, star coefficient, terms, audits, inequalities.

The worked numbers for (p, r, n) = (5, 8, 7) are frozen from exact desk
evaluation: star_5 = 608, star_6 = 610, with residues 8 and 10 mod 25.
"""

import math
from fractions import Fraction

import pytest

from padicelim.congruence import (
    BELOW,
    DEAD,
    DEEPER,
    GENERATOR,
    RESIDUAL,
    ZERO,
    audit_bad,
    audit_good,
    audit_ugly,
    inequality_suite,
    make_params,
    master_terms,
    star_full,
    star_mod_p2,
)
from padicelim.errors import (
    DigitError,
    InvalidDegreeError,
    InvalidRangeError,
    NotGoodCandidateError,
    VLBoundError,
    WindowError,
)
from padicelim.exactnum import InvalidPrimeError, harmonic, rational_mod


class TestMakeParams:
    def test_example_n7(self):
        params = make_params(5, 8, 7, -5, mode="strict")
        assert (params.b, params.eps, params.v_fall) == (1, 2, 0)
        assert params.x == Fraction(4) - 7 - 0 + 5 == 2

    def test_example_n6(self):
        params = make_params(5, 8, 6, -5, mode="strict")
        assert params.v_fall == 1 and params.x == 2

    def test_window_error(self):
        with pytest.raises(WindowError):
            make_params(5, 8, 5, -5)  # 5 < r/2 + b + 1 = 6
        with pytest.raises(WindowError):
            make_params(5, 8, 9, -5)  # n > r

    def test_named_errors(self):
        with pytest.raises(InvalidPrimeError):
            make_params(6, 8, 7, -5)
        with pytest.raises(InvalidRangeError):
            make_params(5, 20, 12, -9)  # r > p^2 - p - 1
        with pytest.raises(VLBoundError):
            make_params(5, 8, 7, -3, mode="strict")  # needs < -3
        # weak mode admits equality
        assert make_params(5, 8, 7, -3, mode="weak").mode == "weak"
        with pytest.raises(VLBoundError):
            make_params(5, 8, 7, Fraction(-5, 2), mode="weak")

    def test_digit_error_unreachable_via_valid_r(self):
        # n <= r <= p^2 - p - 1 keeps b <= p - 2; force it via a bad pair
        with pytest.raises((DigitError, WindowError)):
            make_params(5, 19, 20, -20)

    def test_consequences_hold(self):
        params = make_params(7, 18, 15, -10)
        assert params.x >= -params.v_fall >= -1
        assert params.n - params.v_fall > Fraction(params.r, 2)


class TestStar:
    def test_worked_values(self):
        params = make_params(5, 8, 7, -5)
        assert star_full(params, 5) == 608
        assert star_full(params, 6) == 610
        assert star_mod_p2(params, 5) == 8
        assert star_mod_p2(params, 6) == 10
        # mod p case values
        assert 608 % 5 == (-math.factorial(2)) % 5
        assert 610 % 5 == 0

    def test_simplified_matches_hand_formula(self):
        # -{1 brace 2} 2! - 5 H_2 {1 brace 1} 2! = -15 = 10 mod 25
        params = make_params(5, 8, 7, -5)
        assert star_mod_p2(params, 6) == rational_mod(-5 * harmonic(2) * 2, 25)

    def test_high_degree_vanishes_mod_p2(self):
        params = make_params(5, 14, 12, -8)
        assert rational_mod(star_full(params, 11), 25) == 0  # j in [n-b+1, n-1]

    def test_degree_range(self):
        params = make_params(5, 8, 7, -5)
        with pytest.raises(InvalidDegreeError):
            star_full(params, 2)
        with pytest.raises(InvalidDegreeError):
            star_full(params, 7)

    @pytest.mark.parametrize("p", [5, 7])
    def test_full_vs_simplified_small_sweep(self, p):
        for r in range(p, 3 * p):
            for n in range(r // 2 + 1, r + 1):
                b = n // p
                if b > p - 2 or 2 * n < r + 2 * b + 2:
                    continue
                params = make_params(p, r, n, Fraction(r, 2) - n - 1)
                for j in range((r + 1) // 2 - 1, n):
                    assert rational_mod(star_full(params, j), p * p) == star_mod_p2(params, j)


class TestMasterTerms:
    def test_generator_term_at_5_8_7(self):
        params = make_params(5, 8, 7, -5)
        terms = {t.key(): t for t in master_terms(params)}
        gen = terms[(2, 0, 5)]
        assert gen.slack == 0 and gen.unit_residue % 5 != 0
        assert gen.coeff == math.comb(7, 5) * 608  # C(n,j) (-1)^(n-j) star_j
        assert terms[(2, 0, 6)].slack == 1  # 610 = 5 * 122

    def test_first_line_slack_at_least_one(self):
        params = make_params(5, 8, 7, -5)
        for t in master_terms(params):
            if t.line == 1 and t.coeff != 0:
                assert t.slack >= 1  # C(10, 8) = 45 carries the p

    def test_total_val_is_vl_independent(self):
        for vL1, vL2 in [(-5, -9), (Fraction(-9, 2), -6)]:
            t1 = master_terms(make_params(5, 8, 7, vL1))
            t2 = master_terms(make_params(5, 8, 7, vL2))
            assert [(t.key(), t.total_val, t.slack) for t in t1] == [
                (t.key(), t.total_val, t.slack) for t in t2
            ]

    def test_weak_mode_rejected(self):
        params = make_params(5, 8, 7, -3, mode="weak")
        with pytest.raises(VLBoundError):
            master_terms(params)

    def test_zero_terms_at_b0(self):
        # b = 0 makes every line-1 coefficient vanish ({m brace 0} = 0)
        params = make_params(5, 5, 4, -4)
        for t in master_terms(params):
            if t.line == 1:
                assert t.coeff == 0 and t.slack.is_infinite


class TestAuditGood:
    def test_kills_i3_via_n7(self):
        audit = audit_good(5, 8, 7, -5)
        assert audit.passed and audit.target_j == 5 and audit.target_i == 3
        assert audit.generator is not None and audit.generator.slack == 0

    def test_kills_i2_via_n8(self):
        audit = audit_good(5, 8, 8, -5)
        assert audit.passed and audit.target_i == 2

    def test_rejects_vfall_nonzero(self):
        with pytest.raises(NotGoodCandidateError):
            audit_good(5, 8, 6, -5)

    def test_disposition_statuses(self):
        audit = audit_good(5, 8, 7, -5)
        statuses = {d.term.key(): d.status for d in audit.dispositions}
        assert statuses[(2, 0, 5)] == GENERATOR
        assert statuses[(2, 0, 6)] == DEAD
        assert statuses[(2, 0, 4)] == DEEPER
        assert statuses[(2, 0, 3)] == BELOW
        assert statuses[(1, 1, 5)] == DEAD


class TestAuditBad:
    def test_kills_i6_at_p5_r14(self):
        audit = audit_bad(5, 14, -8)
        assert audit.passed
        assert audit.witness_n == (11,) and audit.target_j == 8 and audit.target_i == 6
        assert audit.generator.slack == 0 and audit.generator.unit_residue % 5 != 0

    def test_rescue_note_at_r_2p_plus_4(self):
        audit = audit_bad(5, 14, -8)
        assert any("stirling rescue" in note for note in audit.notes)
        # the j = p + 1 = 6 term is the below-range edge at r = 2p + 4
        statuses = {d.term.key(): d.status for d in audit.dispositions}
        assert statuses[(2, 0, 6)] in (BELOW, ZERO)

    def test_range_check(self):
        with pytest.raises(InvalidRangeError):
            audit_bad(5, 9, -8)
        with pytest.raises(InvalidRangeError):
            audit_bad(5, 15, -9)

    def test_vl_bound_via_params(self):
        with pytest.raises(VLBoundError):
            audit_bad(5, 14, -4)  # needs < 7 - 11 = -4 strictly


class TestAuditUgly:
    def test_p5_r8_c1(self):
        audit = audit_ugly(5, 8, -5, 1)
        assert audit.passed
        assert audit.witness_n == (6, 7) and audit.target_j == 4 and audit.target_i == 4
        residuals = [d for d in audit.dispositions if d.status == RESIDUAL]
        # one line-1 term (a = 1) and one line-2 term at degree cp = 5
        assert {(d.term.line, d.term.j) for d in residuals} == {(1, 5), (2, 5)}

    def test_p5_r14_c2(self):
        audit = audit_ugly(5, 14, -8, 2)
        assert audit.passed and audit.target_i == 5 and audit.witness_n == (12, 13)
        residuals = [d for d in audit.dispositions if d.status == RESIDUAL]
        assert len(residuals) == 3  # a = 0, 1, 2 at degree cp = 10

    def test_phase2_forces_cp_minus_1_dead(self):
        audit = audit_ugly(5, 8, -5, 1)
        phase2 = audit.phases[1]
        assert phase2.target_j == 5
        statuses = {d.term.key(): d.status for d in phase2.dispositions}
        assert statuses[(2, 0, 4)] == DEAD  # C(7, 4) = 35 supplies the p
        assert any("p | C(7, 4)" in note for note in phase2.notes)

    def test_errors(self):
        with pytest.raises(VLBoundError):
            audit_ugly(5, 8, -2, 1)  # -2 >= 4 - 7
        with pytest.raises(InvalidRangeError):
            audit_ugly(5, 7, -5, 1)
        with pytest.raises(InvalidRangeError):
            audit_ugly(5, 8, -5, 3)


class TestLambdaCrossChecks:
    """Rebuild both congruence lines from the solved lambda family.

    The coefficients come from power sums of the interpolation family over
    residue classes; evaluating those sums with the exactly solved integer
    lambdas (no Stirling numbers, no harmonic numbers) must agree with the
    closed forms mod p^2.  This exercises the whole derivation through an
    independent computational path.
    """

    @staticmethod
    def _lambda_entries(p, n):
        from padicelim.lambda_solver import solve_lambda

        return solve_lambda(p, n // p, n)

    def test_star_from_lambda_power_sum_worked_example(self):
        params = make_params(5, 8, 7, -5)
        vec = self._lambda_entries(5, 7)
        s = sum(vec[i] * (i // 5) ** 2 for i in vec.index_set if i % 5 == 0)
        assert s == 1508  # lambda_5 * 1 + lambda_10 * 4 = 1512 - 4
        assert s % 25 == rational_mod(star_full(params, 5), 25) == 8

    @pytest.mark.parametrize("p", [5, 7])
    def test_star_matches_lambda_sums(self, p):
        for r in range(p, 3 * p):
            for n in range(r // 2 + 1, r + 1):
                b = n // p
                if b > p - 2 or 2 * n < r + 2 * b + 2:
                    continue
                params = make_params(p, r, n, Fraction(r, 2) - n - 1)
                vec = self._lambda_entries(p, n)
                nodes = [i for i in vec.index_set if i % p == 0]
                for j in range((r + 1) // 2 - 1, n):
                    lam_sum = sum(vec[i] * (i // p) ** (n - j) for i in nodes)
                    assert rational_mod(star_full(params, j), p * p) == lam_sum % (p * p), (
                        p, r, n, j,
                    )

    @pytest.mark.parametrize("p", [5, 7])
    def test_first_line_matches_lambda_sums(self, p):
        for r in range(p, 3 * p):
            for n in range(r // 2 + 1, r + 1):
                b = n // p
                if b > p - 2 or 2 * n < r + 2 * b + 2:
                    continue
                params = make_params(p, r, n, Fraction(r, 2) - n - 1)
                vec = self._lambda_entries(p, n)
                coeffs = {
                    (t.a, t.j): t.coeff for t in master_terms(params) if t.line == 1
                }
                for (a, j), coeff in coeffs.items():
                    raw = sum(
                        vec[i] * (a - i) ** (n - j)
                        for i in vec.index_set
                        if i % p == a
                    )
                    assert raw % p ** (n - j) == 0
                    exact = math.comb(n, j) * (raw // p ** (n - j))
                    assert rational_mod(coeff, p * p) == exact % (p * p), (p, r, n, a, j)


class TestInequalities:
    def test_example_5_8_6(self):
        report = inequality_suite(5, 8, 6)
        assert report.passed
        by_name = {f.name: f for f in report.families}
        # base power 5^(2(n - r/2) - vFall + 1) = 5^4 against n + 1 = 7
        assert ("base", "5^4 > 7") == by_name["telescoping-zp"].witness[0]
        pzp = by_name["telescoping-pzp"]
        # the printed shortcut 2b + 1 > n/(p - 1), i.e. 12 > 6, holds here
        assert "(2b+1)(p-1) = 12 > n = 6: holds" in pzp.observations[0]

    def test_pzp_shortcut_edge_at_b0(self):
        # at b = 0, n = p - 1 the printed shortcut fails while the
        # vFall-retained base cases (and the family itself) hold
        report = inequality_suite(7, 7, 6)
        assert report.passed
        pzp = {f.name: f for f in report.families}["telescoping-pzp"]
        assert "fails" in pzp.observations[0]

    def test_example_5_8_7(self):
        report = inequality_suite(5, 8, 7)
        assert report.passed
        by_name = {f.name: f for f in report.families}
        # qp-zp base: 5^(r/2 - v_p(r!)) = 5^3 = 125 > r + 1 = 9
        assert "(8 - 2*1)/2" in by_name["qp-zp"].witness[0][1]

    @pytest.mark.parametrize("p", [5, 7])
    def test_small_sweep(self, p):
        for r in range(p, 3 * p):
            for n in range(r // 2 + 1, r + 1):
                b = n // p
                if b > p - 2 or 2 * n < r + 2 * b + 2:
                    continue
                assert inequality_suite(p, r, n).passed, (p, r, n)
