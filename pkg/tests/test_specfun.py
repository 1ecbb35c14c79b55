import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from pathway_toolkit.errors import ConvergenceError, DomainError
from pathway_toolkit.specfun import (
    MLParams,
    Partition,
    gen_pochhammer,
    log_gamma,
    matrix_gamma,
    mittag_leffler,
    pochhammer,
)


class TestLogGamma:
    def test_known_values(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-13)
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-13)
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-13)

    @pytest.mark.parametrize("bad", [0.0, -1.0, -0.5])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            log_gamma(bad)


class TestPochhammer:
    def test_order_zero_is_one(self):
        for b in (-3.0, 0.0, 0.17, 42.0):
            assert pochhammer(b, 0) == 1.0

    def test_examples(self):
        assert pochhammer(1.0, 4) == 24.0
        assert pochhammer(2.0, 3) == 24.0

    def test_zero_when_stepping_over_nonpositive_integer(self):
        assert pochhammer(-2.0, 4) == 0.0
        assert pochhammer(-2.0, 2) == 2.0  # (-2)(-1), stops before zero

    @given(
        st.floats(-10, 10, allow_nan=False, allow_infinity=False),
        st.integers(0, 20),
    )
    def test_recurrence(self, b, k):
        # (b)_{k+1} = (b)_k * (b + k)
        assert pochhammer(b, k + 1) == pytest.approx(
            pochhammer(b, k) * (b + k), rel=1e-12, abs=1e-12
        )


class TestGenPochhammer:
    def test_zero_partition(self):
        assert gen_pochhammer(3.0, Partition((0, 0, 0))) == 1.0

    @given(
        st.floats(-5, 5, allow_nan=False, allow_infinity=False),
        st.integers(0, 8),
    )
    def test_single_part_reduces_to_pochhammer(self, a, k):
        assert gen_pochhammer(a, Partition((k,))) == pochhammer(a, k)

    def test_hand_expansion(self):
        # (2)_1 * (1.5)_1 = 2 * 1.5
        assert gen_pochhammer(2.0, Partition((1, 1))) == pytest.approx(3.0, rel=1e-14)

    def test_negative_parts_rejected(self):
        with pytest.raises(DomainError):
            Partition((1, -1))


class TestMatrixGamma:
    def test_p1_reduces_to_gamma(self):
        for a in (0.5, 1.0, 2.5, 7.0):
            assert matrix_gamma(1, a) == pytest.approx(
                math.exp(log_gamma(a)), rel=1e-14
            )

    def test_p2_value(self):
        # pi^(1/2) * Gamma(1.5) * Gamma(1) = pi / 2
        assert matrix_gamma(2, 1.5) == pytest.approx(math.pi / 2, rel=1e-13)

    def test_boundary_excluded(self):
        with pytest.raises(DomainError):
            matrix_gamma(2, 0.5)

    def test_against_scipy_multigammaln(self):
        from scipy.special import multigammaln

        for p, a in [(2, 1.7), (3, 2.2), (4, 3.9)]:
            assert math.log(matrix_gamma(p, a)) == pytest.approx(
                multigammaln(a, p), rel=1e-13
            )


class TestMittagLeffler:
    def test_alpha1_is_exp(self):
        for x in np.linspace(-5, 5, 101):
            val = mittag_leffler(x, MLParams(alpha=1.0))
            assert abs(val - math.exp(x)) <= 1e-12 * math.exp(abs(x))

    def test_alpha2_is_cosh_sqrt(self):
        for x in np.linspace(0, 25, 101):
            val = mittag_leffler(x, MLParams(alpha=2.0))
            ref = math.cosh(math.sqrt(x))
            assert abs(val - ref) <= 1e-12 * ref

    def test_two_parameter_form(self):
        # E_{1,2}(x) = (e^x - 1)/x
        assert mittag_leffler(1.0, MLParams(alpha=1.0, beta=2.0)) == pytest.approx(
            math.e - 1.0, rel=1e-13
        )

    def test_gamma_one_matches_two_parameter(self):
        xs = np.linspace(-1.0, 3.0, 100)
        for alpha in (0.3, 0.7, 1.5):
            for beta in (0.5, 1.0, 2.0):
                explicit = MLParams(alpha=alpha, beta=beta, gamma=1.0)
                plain = MLParams(alpha=alpha, beta=beta)
                for x in xs:
                    a = mittag_leffler(x, explicit)
                    b = mittag_leffler(x, plain)
                    assert abs(a - b) <= 1e-14 * max(abs(a), abs(b), 1e-300)

    def test_half_order_erfc_identity(self):
        # E_{1/2}(x) = exp(x^2) erfc(-x); erfc from an independent
        # quadrature oracle rather than our own series
        erfc_m1 = 1.0 + (2.0 / math.sqrt(math.pi)) * quad(
            lambda t: math.exp(-t * t), 0.0, 1.0
        )[0]
        ref = math.e * erfc_m1
        assert mittag_leffler(1.0, MLParams(alpha=0.5)) == pytest.approx(
            ref, rel=1e-12
        )

    def test_truncation_soundness(self):
        cases = [
            (1.0, MLParams(alpha=1.0)),
            (12.5, MLParams(alpha=0.7, beta=1.3)),
            (-3.0, MLParams(alpha=1.5, beta=0.5, gamma=2.0)),
            (0.8, MLParams(alpha=0.4, beta=2.0, gamma=0.5, uppers=(1.5,), lowers=(2.5,))),
        ]
        for x, params in cases:
            v1 = mittag_leffler(x, params)
            v2 = mittag_leffler(x, params, term_cap=20_000)
            assert abs(v1 - v2) <= 1e-13 * (1.0 + abs(v1))

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            MLParams(alpha=-1.0)
        with pytest.raises(DomainError):
            MLParams(alpha=1.0, beta=0.0)
        with pytest.raises(DomainError):
            MLParams(alpha=1.0, lowers=(-2.0,))
        with pytest.raises(DomainError):
            MLParams(alpha=1.0, uppers=(1.0, 2.0), lowers=())  # r > s + 1

    def test_nonpositive_integer_gamma_terminates_series(self):
        # gamma = -2 zeroes every term from k = 3 on: a polynomial in x
        p = MLParams(alpha=1.0, beta=1.0, gamma=-2.0)
        x = 0.7
        ref = sum(
            pochhammer(-2.0, k) * x**k / (math.factorial(k) * math.gamma(1.0 + k))
            for k in range(3)
        )
        assert mittag_leffler(x, p) == pytest.approx(ref, rel=1e-14)

    def test_convergence_error_reports_partial(self):
        p = MLParams(alpha=0.05, beta=1.0)
        with pytest.raises(ConvergenceError) as err:
            mittag_leffler(40.0, p, term_cap=50)
        assert err.value.partial is not None
        assert err.value.bound is not None
