import math

import numpy as np
import pytest

from gegenforge import DomainError, PrecisionContext
from gegenforge.gammafn import bbinom
from gegenforge.orthopoly import (
    LambdaDomain,
    LambdaParam,
    PolyPoint,
    chebyshev_T,
    chebyshev_U,
    gegenbauer_at_zero,
    gegenbauer_eval,
    gegenbauer_fourier_coeffs,
    gegenbauer_norm_sq,
    legendre_eval,
)
from gegenforge.quadrature import SingularIntegrand, integrate_singular

LAMBDAS = (-0.3, 0.3, 0.5, 1.0, 1.2, 2.5)
ORACLE_CTX = PrecisionContext(rel_tol=1e-13, abs_tol=1e-15)


class TestGegenbauer:
    @pytest.mark.parametrize("lam", LAMBDAS)
    @pytest.mark.parametrize("x", [-0.9, -0.2, 0.0, 0.4, 1.0])
    def test_first_two_degrees(self, lam, x):
        assert gegenbauer_eval(lam, 0, x) == 1.0
        assert gegenbauer_eval(lam, 1, x) == pytest.approx(2.0 * lam * x, abs=1e-15)

    def test_legendre_specialization_value(self):
        # P_2(x) = (3x^2 - 1)/2 at x = 0.5
        assert gegenbauer_eval(0.5, 2, 0.5) == pytest.approx(-0.125, rel=1e-14)

    @pytest.mark.parametrize("lam", LAMBDAS)
    @pytest.mark.parametrize("n", [0, 1, 2, 5, 17, 40])
    def test_parity(self, lam, n):
        for x in (0.13, 0.52, 0.97):
            sign = -1.0 if n % 2 else 1.0
            assert gegenbauer_eval(lam, n, -x) == pytest.approx(
                sign * gegenbauer_eval(lam, n, x), rel=1e-12, abs=1e-13
            )

    @pytest.mark.parametrize("lam", LAMBDAS)
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 8, 25])
    def test_endpoint_value(self, lam, n):
        # C_n(1) = bbinom(2 lam, n), also the sum of the cosine coefficients
        want = bbinom(2.0 * lam, n)
        assert gegenbauer_eval(lam, n, 1.0) == pytest.approx(want, rel=1e-12, abs=1e-14)
        assert sum(gegenbauer_fourier_coeffs(lam, n)) == pytest.approx(want, rel=1e-12, abs=1e-14)

    def test_gegenbauer_is_chebyshev_u_at_one(self):
        for n in range(8):
            assert gegenbauer_eval(1.0, n, 0.37) == pytest.approx(
                chebyshev_U(n, 0.37), rel=1e-13
            )

    def test_array_input(self):
        xs = np.linspace(-0.95, 0.95, 7)
        vals = gegenbauer_eval(0.7, 5, xs)
        for x, v in zip(xs, vals):
            assert v == pytest.approx(gegenbauer_eval(0.7, 5, float(x)), rel=1e-14)


class TestChebyshev:
    @pytest.mark.parametrize("n", range(31))
    def test_defining_identities_on_grid(self, n):
        for theta in np.linspace(0.1, math.pi - 0.1, 9):
            x = math.cos(theta)
            assert chebyshev_T(n, x) == pytest.approx(math.cos(n * theta), abs=1e-12)
            assert chebyshev_U(n, x) * math.sin(theta) == pytest.approx(
                math.sin((n + 1) * theta), abs=1e-12
            )

    def test_degree_zero(self):
        assert chebyshev_T(0, 0.3) == 1.0
        assert chebyshev_U(0, 0.3) == 1.0

    def test_first_kind_triple_angle(self):
        theta = math.pi / 5.0
        assert chebyshev_T(3, math.cos(theta)) == pytest.approx(math.cos(3 * theta), rel=1e-12)

    def test_second_kind_zero(self):
        # sin(3 theta)/sin(theta) at theta = pi/3 vanishes
        assert chebyshev_U(2, 0.5) == pytest.approx(0.0, abs=1e-15)


class TestLegendre:
    def test_values(self):
        assert legendre_eval(1, 0.73) == pytest.approx(0.73, rel=1e-15)
        assert legendre_eval(2, 0.0) == pytest.approx(-0.5, rel=1e-15)
        assert legendre_eval(4, 1.0) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("n", [0, 1, 3, 10, 30])
    def test_same_code_path_as_gegenbauer(self, n):
        for x in (-0.8, 0.1, 0.6):
            assert legendre_eval(n, x) == gegenbauer_eval(0.5, n, x)


class TestAtZero:
    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_odd_vanishes(self, lam):
        for k in (1, 3, 7, 21):
            assert gegenbauer_at_zero(lam, k) == 0.0

    def test_legendre_cross_check(self):
        assert gegenbauer_at_zero(0.5, 2) == pytest.approx(-0.5, rel=1e-15)
        assert gegenbauer_at_zero(0.5, 0) == 1.0

    @pytest.mark.parametrize("lam", LAMBDAS)
    @pytest.mark.parametrize("k", [0, 2, 4, 10, 16])
    def test_matches_recurrence_at_zero(self, lam, k):
        assert gegenbauer_at_zero(lam, k) == pytest.approx(
            gegenbauer_eval(lam, k, 0.0), rel=1e-12, abs=1e-14
        )


class TestNorms:
    def test_constant_weight_case(self):
        # lam = 1/2 weight is flat: ||C_0||^2 = length of the interval
        assert gegenbauer_norm_sq(0.5, 0) == pytest.approx(2.0, rel=1e-14)

    @pytest.mark.parametrize("n", range(8))
    def test_legendre_norms(self, n):
        assert gegenbauer_norm_sq(0.5, n) == pytest.approx(2.0 / (2 * n + 1), rel=1e-13)

    def test_norm_against_quadrature(self):
        lam, n = 0.7, 3
        expo = lam - 0.5

        def core(x, dl, dr):
            return gegenbauer_eval(lam, n, x) ** 2

        quad = integrate_singular(SingularIntegrand(core, -1.0, 1.0, expo, expo), ORACLE_CTX)
        assert gegenbauer_norm_sq(lam, n) == pytest.approx(quad.value, rel=1e-10)

    def test_positive(self):
        for lam in (-0.3, 0.25, 1.7):
            for n in (0, 1, 5, 40):
                assert gegenbauer_norm_sq(lam, n) > 0.0

    @pytest.mark.parametrize("lam", [0.3, 0.5, 1.2])
    def test_orthogonality_oracle(self, lam):
        expo = lam - 0.5
        norms = [gegenbauer_norm_sq(lam, k) for k in range(9)]
        for i in range(9):
            for j in range(i + 1, 9):

                def core(x, dl, dr, i=i, j=j):
                    return gegenbauer_eval(lam, i, x) * gegenbauer_eval(lam, j, x)

                quad = integrate_singular(
                    SingularIntegrand(core, -1.0, 1.0, expo, expo), ORACLE_CTX
                )
                scale = math.sqrt(norms[i] * norms[j])
                assert abs(quad.value) < 1e-10 * scale


class TestFourierCoefficients:
    def test_degree_zero(self):
        assert gegenbauer_fourier_coeffs(0.8, 0) == [1.0]

    def test_legendre_degree_two(self):
        assert gegenbauer_fourier_coeffs(0.5, 2) == pytest.approx([3 / 8, 1 / 4, 3 / 8], rel=1e-15)

    def test_reconstruction(self):
        lam, n, theta = 0.3, 3, math.pi / 4.0
        coeffs = gegenbauer_fourier_coeffs(lam, n)
        rebuilt = sum(c * math.cos((2 * k - n) * theta) for k, c in enumerate(coeffs))
        assert rebuilt == pytest.approx(gegenbauer_eval(lam, n, math.cos(theta)), abs=1e-12)


class TestDomainTypes:
    def test_poly_point_validation(self):
        PolyPoint(0.5)
        PolyPoint.from_theta(1.0)
        with pytest.raises(DomainError):
            PolyPoint(1.5)
        with pytest.raises(DomainError):
            PolyPoint(0.5, theta=1.0)  # cos(1.0) != 0.5

    def test_lambda_param_intervals(self):
        LambdaParam(2.9, LambdaDomain.EXPANSION_U)
        with pytest.raises(DomainError):
            LambdaParam(0.0, LambdaDomain.EXPANSION_U)
        with pytest.raises(DomainError):
            LambdaParam(1.2, LambdaDomain.EXPANSION_T)
        with pytest.raises(DomainError):
            LambdaParam(0.6, LambdaDomain.SQUARE_T)
        LambdaParam(2.2, LambdaDomain.SQUARE_U)
