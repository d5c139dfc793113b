import cmath
import math

import pytest

from gegenforge import Accelerator, DomainError, PoleError, PrecisionContext
from gegenforge.gammafn import harmonic, pochhammer
from gegenforge.identities import (
    IdentityCase,
    default_accelerator,
    hyp_pfq_partial,
    identity_closed_form,
    identity_start,
    identity_term,
    verify_identity,
    _pfq_params_4f3,
    _pfq_params_5f4,
)

CTX = PrecisionContext(rel_tol=1e-9, abs_tol=1e-13, max_terms=10_000)


class TestCaseValidation:
    def test_unknown_id(self):
        with pytest.raises(DomainError):
            IdentityCase("nope")

    def test_schema_mismatch(self):
        with pytest.raises(DomainError):
            IdentityCase("EQ48")  # missing m
        with pytest.raises(DomainError):
            IdentityCase("EQ411", m=1)  # no parameters allowed
        with pytest.raises(DomainError):
            IdentityCase("T6a", lam=0.3, m=0, q=1)  # q not in schema

    def test_lambda_intervals(self):
        IdentityCase("T6a", lam=0.49, m=0)
        with pytest.raises(DomainError):
            IdentityCase("T6a", lam=0.6, m=0)
        with pytest.raises(DomainError):
            IdentityCase("T8", lam=1.0, m=0)
        with pytest.raises(DomainError):
            IdentityCase("T6b", lam=0.0, m=0)
        IdentityCase("T7", lam=2.9, m=1)

    def test_pole_and_domain_for_z(self):
        with pytest.raises(PoleError):
            IdentityCase("C12", z=0.5)
        with pytest.raises(PoleError):
            IdentityCase("C12", z=2.5)
        with pytest.raises(DomainError):
            IdentityCase("C12", z=-0.6)
        IdentityCase("C12", z=0.3 + 0.2j)

    def test_m_zero_excluded_for_harmonic_family(self):
        with pytest.raises(DomainError):
            IdentityCase("C14", m=0)
        IdentityCase("C14", m=1)


class TestTerms:
    def test_start_indices(self):
        assert identity_start(IdentityCase("T6a", lam=0.2, m=3)) == 0
        assert identity_start(IdentityCase("T6c", lam=0.2, m=3, q=1)) == 3
        assert identity_start(IdentityCase("T6d", lam=0.2, m=3, q=1)) == 4
        assert identity_start(IdentityCase("T7", lam=0.2, m=2)) == 2
        assert identity_start(IdentityCase("EQ48", m=2)) == 2

    def test_index_below_start_rejected(self):
        case = IdentityCase("T7", lam=0.2, m=2)
        with pytest.raises(ValueError):
            identity_term(case, 1)

    def test_quartic_leading_term(self):
        assert identity_term(IdentityCase("EQ411"), 0) == 1.0

    def test_t8_spot_value(self):
        # third-display route at lam=1/2, m=0, n=1:
        # (-1/4)(5/2) C(2,1) ((1/2)_1)^2/(1)_1 / 1! = -5/16
        got = identity_term(IdentityCase("T8", lam=0.5, m=0), 1)
        assert got == pytest.approx(-5.0 / 16.0, rel=1e-14)

    def test_all_zero_case(self):
        case = IdentityCase("C12", z=0.0)
        for n in range(6):
            assert identity_term(case, n) == 0.0

    def test_exact_zero_factors(self):
        # vanishing rising-factorial binomials kill terms exactly
        for q in (1, 2, 7):
            assert identity_term(IdentityCase("T6b", lam=1.0, m=2), q) == 0.0
        for n in (3, 4, 10):
            assert identity_term(IdentityCase("T6d", lam=1.0, m=1, q=0), n) == 0.0
        for n in (3, 5, 9):
            assert identity_term(IdentityCase("C12", z=2.0), n) == 0.0
        for n in (2, 3, 8):
            assert identity_term(IdentityCase("T7", lam=1.0, m=1), n) == 0.0


class TestClosedForms:
    def test_tan_family_simple(self):
        # lam = 1/4, m = 0: tan(pi/4)/(2 pi) * 2 = 1/pi
        got = identity_closed_form(IdentityCase("T6a", lam=0.25, m=0))
        assert got == pytest.approx(1.0 / math.pi, rel=1e-14)

    def test_constants(self):
        assert identity_closed_form(IdentityCase("EQ47", m=1)) == pytest.approx(4 / math.pi)
        assert identity_closed_form(IdentityCase("EQ48", m=0)) == pytest.approx(2 / math.pi)
        assert identity_closed_form(IdentityCase("EQ412")) == pytest.approx(32 / math.pi**2)
        assert identity_closed_form(IdentityCase("C15", m=0, q=0)) == pytest.approx(
            8 / math.pi**2
        )

    @pytest.mark.parametrize("m", [0, 1, 3])
    def test_limit_branch_half(self, m):
        got = identity_closed_form(IdentityCase("T6b", lam=0.5, m=m))
        want = (
            4.0
            / (math.pi**2 * (m + 1) ** 2)
            * (1.0 - pochhammer(-0.5, m + 1) / pochhammer(1.5, m + 1))
        )
        assert got == pytest.approx(want, rel=1e-14)

    @pytest.mark.parametrize("m", [0, 1, 2])
    def test_limit_branch_three_halves(self, m):
        got = identity_closed_form(IdentityCase("T6b", lam=1.5, m=m))
        want = (
            8.0
            * (2.0 * harmonic(2 * (m + 1)) - harmonic(m + 1))
            / (math.pi**2 * (m + 1) ** 2)
        )
        assert got == pytest.approx(want, rel=1e-14)

    @pytest.mark.parametrize("m", [0, 1, 4])
    def test_limit_branch_two(self, m):
        got = identity_closed_form(IdentityCase("T6b", lam=2.0, m=m))
        assert got == pytest.approx(3.0 / (m + 1), rel=1e-14)

    def test_limit_branch_one_terminates_series(self):
        # at lam = 1 the series truncates to its first term; both sides agree
        r = verify_identity(IdentityCase("T6b", lam=1.0, m=3), CTX)
        assert r.terms_used == 1
        assert r.rel_err < 1e-14

    @pytest.mark.parametrize("m,q", [(0, 0), (1, 2), (2, 1)])
    def test_t6c_half_limit_value(self, m, q):
        # (1/2)_k/(3/2)_k telescopes to 1/(2k+1)
        got = identity_closed_form(IdentityCase("T6c", lam=0.5, m=m, q=q))
        want = 2.0 / (math.pi**2 * (q + 2 * m + 1)) * (
            1.0 / (2 * (m + q) + 1) + 1.0 / (2 * m + 1)
        )
        assert got == pytest.approx(want, rel=1e-13)

    def test_richardson_extrapolation_agrees_at_half(self):
        # numeric-limit oracle: extrapolate the raw closed form from
        # eps in {1e-3, 1e-4, 1e-5}, cross-checked against the analytic fact
        # lim (1 - 2 lam) tan(pi lam) = 2/pi at lam = 1/2
        m = 0
        eps = [1e-3, 1e-4, 1e-5]
        raw = [identity_closed_form(IdentityCase("T6b", lam=0.5 + e, m=m)) for e in eps]
        extrap = [
            (raw[i + 1] * eps[i] - raw[i] * eps[i + 1]) / (eps[i] - eps[i + 1]) for i in range(2)
        ]
        limit = identity_closed_form(IdentityCase("T6b", lam=0.5, m=m))
        assert extrap[-1] == pytest.approx(limit, rel=1e-6)
        fact = (1.0 - 2.0 * (0.5 + eps[-1])) * math.tan(math.pi * (0.5 + eps[-1]))
        assert fact == pytest.approx(2.0 / math.pi, rel=1e-4)

    def test_richardson_sequence_cauchy_at_three_halves(self):
        m = 1
        eps = [1e-3, 1e-4, 1e-5, 1e-6]
        raw = [identity_closed_form(IdentityCase("T6b", lam=1.5 + e, m=m)) for e in eps]
        extrap = [
            (raw[i + 1] * eps[i] - raw[i] * eps[i + 1]) / (eps[i] - eps[i + 1])
            for i in range(len(eps) - 1)
        ]
        diffs = [abs(extrap[i + 1] - extrap[i]) for i in range(len(extrap) - 1)]
        assert diffs[1] <= diffs[0] / 10.0
        limit = identity_closed_form(IdentityCase("T6b", lam=1.5, m=m))
        assert math.isfinite(limit)
        assert extrap[-1] == pytest.approx(limit, rel=1e-6)

    def test_t6c_bracket_commutes(self):
        lam, m, q = 0.3, 2, 1
        r1 = pochhammer(lam, m + q) / pochhammer(2.0 - lam, m + q)
        r2 = pochhammer(lam, m) / pochhammer(2.0 - lam, m)
        assert r1 + r2 == r2 + r1

    def test_pole_inside_guard(self):
        with pytest.raises(PoleError):
            identity_closed_form(
                IdentityCase("C12", z=0.5 + 1e-9), PrecisionContext(limit_guard=1e-7)
            )

    def test_integer_z_closed_is_exact_zero(self):
        assert identity_closed_form(IdentityCase("C12", z=2.0)) == 0.0


class TestVerification:
    def test_half_central_constant(self):
        r = verify_identity(IdentityCase("EQ48", m=0), CTX)
        assert r.converged
        assert r.series_value == pytest.approx(2.0 / math.pi, rel=1e-9)
        assert r.accelerator is Accelerator.LEVIN_U

    def test_four_over_pi(self):
        r = verify_identity(IdentityCase("EQ47", m=1), PrecisionContext(rel_tol=1e-8))
        assert r.converged
        assert r.series_value == pytest.approx(4.0 / math.pi, rel=1e-8)

    def test_eight_over_pi_squared(self):
        r = verify_identity(IdentityCase("C15", m=0, q=0), PrecisionContext(rel_tol=1e-8))
        assert r.converged
        assert r.series_value == pytest.approx(8.0 / math.pi**2, rel=1e-8)

    def test_zero_case_report(self):
        r = verify_identity(IdentityCase("C12", z=0.0), CTX)
        assert r.converged
        assert r.closed_value == 0.0
        assert r.series_value == 0.0
        assert r.rel_err == 0.0

    def test_non_convergence_is_flagged_not_raised(self):
        tiny = PrecisionContext(rel_tol=1e-13, abs_tol=1e-16, max_terms=6)
        r = verify_identity(IdentityCase("T6a", lam=0.4, m=0), tiny)
        assert not r.converged

    def test_determinism(self):
        a = verify_identity(IdentityCase("T6a", lam=0.25, m=1), CTX)
        b = verify_identity(IdentityCase("T6a", lam=0.25, m=1), CTX)
        assert a.series_value == b.series_value
        assert a.closed_value == b.closed_value
        assert a.terms_used == b.terms_used

    def test_accelerator_override_recorded(self):
        r = verify_identity(IdentityCase("EQ411"), CTX, accelerator=Accelerator.KAHAN)
        assert r.accelerator is Accelerator.KAHAN
        assert r.converged

    def test_sign_change_family(self):
        # single sign flip in the summand does not disturb the certification
        r = verify_identity(IdentityCase("C15", m=2, q=1), PrecisionContext(rel_tol=1e-8))
        assert r.converged

    def test_t6c_t6d_across_stated_range(self):
        for lam in (0.05, 0.45, 0.95, 1.45):
            for ident in ("T6c", "T6d"):
                r = verify_identity(
                    IdentityCase(ident, lam=lam, m=1, q=1),
                    PrecisionContext(rel_tol=1e-5, abs_tol=1e-9, max_terms=10_000),
                )
                assert r.rel_err <= 1e-4, (ident, lam, r.rel_err)

    def test_c12_behavior_across_re_axis(self):
        # reporting works over the wider stated strip; record flags only
        for zr in (-0.45, -0.2, 0.1, 0.45, 0.8, 1.4, 2.0):
            case = IdentityCase("C12", z=zr)
            r = verify_identity(case, PrecisionContext(rel_tol=1e-6, max_terms=10_000))
            assert math.isfinite(r.rel_err)


class TestCrossIdentityConsistency:
    @pytest.mark.parametrize("lam", [0.1, 0.25, 0.4])
    def test_c12_matches_tan_family_at_negated_argument(self, lam):
        # series(C12 at z = -lam) equals -closed(T6a, m=0)
        r = verify_identity(IdentityCase("C12", z=-lam), PrecisionContext(rel_tol=1e-8))
        t6a = identity_closed_form(IdentityCase("T6a", lam=lam, m=0))
        assert r.series_value == pytest.approx(-t6a, rel=1e-7)

    @pytest.mark.parametrize("z", [0.2, 0.3 + 0.2j])
    def test_5f4_is_c12_over_z(self, z):
        up, low = _pfq_params_5f4(z)
        ctx = PrecisionContext(
            accelerator=Accelerator.LEVIN_U, rel_tol=1e-9, abs_tol=1e-13, max_terms=5000
        )
        hyp = hyp_pfq_partial(up, low, 1, 4000, ctx)
        c12 = verify_identity(IdentityCase("C12", z=z), ctx)
        assert hyp.value * z == pytest.approx(c12.series_value, rel=1e-7)

    def test_harmonic_family_is_scaled_tan_family_limit(self):
        # the C14 display terms are 2^(4M-2) times the T6b(3/2, M-1) terms,
        # and the closed forms scale identically
        for M in (1, 2, 3):
            c14 = IdentityCase("C14", m=M)
            t6b = IdentityCase("T6b", lam=1.5, m=M - 1)
            scale = 2.0 ** (4 * M - 2)
            for n in range(5):
                assert identity_term(c14, n) == pytest.approx(
                    scale * identity_term(t6b, n), rel=1e-12
                )
            assert identity_closed_form(c14) == pytest.approx(
                scale * identity_closed_form(t6b), rel=1e-12
            )


class TestHypergeometric:
    def test_leading_term_only(self):
        r = hyp_pfq_partial((0.5, 0.5), (1.0,), 1, 0, PrecisionContext())
        assert r.value == 1.0

    def test_5f4_quarter(self):
        up, low = _pfq_params_5f4(0.25)
        ctx = PrecisionContext(
            accelerator=Accelerator.LEVIN_U, rel_tol=1e-8, abs_tol=1e-12, max_terms=5000
        )
        r = hyp_pfq_partial(up, low, 1, 4000, ctx)
        assert r.value == pytest.approx(4.0 / math.pi, rel=1e-7)

    def test_4f3_half(self):
        up, low = _pfq_params_4f3(0, 0.5)
        ctx = PrecisionContext(
            accelerator=Accelerator.LEVIN_U, rel_tol=1e-8, abs_tol=1e-12, max_terms=5000
        )
        r = hyp_pfq_partial(up, low, -1, 4000, ctx)
        assert r.value == pytest.approx(2.0 / math.pi, rel=1e-7)

    def test_lower_pole_rejected(self):
        with pytest.raises(PoleError):
            hyp_pfq_partial((0.5,), (-3.0,), 1, 10, PrecisionContext())

    def test_bad_argument_rejected(self):
        with pytest.raises(DomainError):
            hyp_pfq_partial((0.5,), (1.0,), 2, 10, PrecisionContext())

    def test_4f3_closed_form_route(self):
        # RHS at (m, z) = (1, 1/4): 4 * Gamma(7/4) / (sqrt(pi) Gamma(13/4))
        want = 4.0 * math.gamma(1.75) / (math.sqrt(math.pi) * math.gamma(3.25))
        got = identity_closed_form(IdentityCase("HYP4F3", m=1, z=0.25))
        assert got == pytest.approx(want, rel=1e-13)

    def test_complex_z_verification(self):
        r = verify_identity(
            IdentityCase("HYP5F4", z=0.3 + 0.2j), PrecisionContext(rel_tol=1e-8)
        )
        assert r.converged
        want = cmath.tan(math.pi * (0.3 + 0.2j)) / (math.pi * (0.3 + 0.2j))
        assert r.closed_value == pytest.approx(want, rel=1e-13)


class TestDefaultAccelerators:
    def test_decay_class_table(self):
        assert default_accelerator(IdentityCase("EQ48", m=0)) is Accelerator.LEVIN_U
        assert default_accelerator(IdentityCase("EQ411")) is Accelerator.WYNN_EPSILON
        assert default_accelerator(IdentityCase("C13", m=1)) is Accelerator.WYNN_EPSILON
        assert default_accelerator(IdentityCase("C14", m=1)) is Accelerator.LEVIN_U
        assert default_accelerator(IdentityCase("T6a", lam=0.2, m=0)) is Accelerator.LEVIN_U
