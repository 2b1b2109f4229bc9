from fractions import Fraction

import mpmath
import pytest

from EulerSeries.closed_forms import mu, rho, tau, weighted_moment
from EulerSeries.errors import DomainError
from EulerSeries.exact_core import beta_factor
from EulerSeries.numeric import working_precision
from EulerSeries.zeta_expr import expr_eval
from NumericOracles.quadrature import (polylog_float, quadrature_beta, quadrature_log_integral, quadrature_moment,
                                       quadrature_stirling_integral, quadrature_weighted_moment)


def test_polylog_float():
    assert polylog_float(1, 0.5) == pytest.approx(float(mpmath.log(2)), rel=1e-15)
    assert polylog_float(2, 0.5) == pytest.approx(0.5822405264650125, rel=1e-13)
    assert polylog_float(3, 0.0) == 0


def test_beta_integral_matches_partial_fractions():
    for k in range(1, 11):
        for n in range(7):
            result = quadrature_beta(k, n, 15)
            assert float(result.value) == pytest.approx(float(beta_factor(k, n)), abs=1e-12)


def test_moment_quadrature_matches_closed_form():
    for p in range(1, 5):
        for r in range(1, 7):
            result = quadrature_moment(p, r, 15)
            assert result.agrees_with(expr_eval(mu(p, r), 30)), (p, r)
            assert float(result.error_bound) < 1e-6


def test_moment_quadrature_half_integers():
    for p in range(1, 4):
        for r in (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2)):
            result = quadrature_moment(p, r, 15)
            assert result.agrees_with(expr_eval(mu(p, r), 30)), (p, r)
            assert float(result.error_bound) < 1e-6


def test_moment_quadrature_bound_covers_error():
    result = quadrature_moment(2, 1, 15)
    with working_precision(30):
        assert abs(result.value - (mpmath.zeta(2) - 1)) <= result.error_bound
    assert float(result.error_bound) < 1e-9


def test_log_integral_examples():
    two_zeta3 = 2 * float(mpmath.zeta(3))
    assert float(quadrature_log_integral(2, 2, 15).value) == pytest.approx(two_zeta3, rel=1e-12)
    assert float(quadrature_log_integral(2, 3, 15).value) == pytest.approx(two_zeta3 - 2, rel=1e-11)
    assert float(quadrature_log_integral(3, 5, 15).value) == pytest.approx(6 * float(mpmath.zeta(4)) - 51 / 8,
                                                                           rel=1e-10)


def test_log_integral_agrees_with_tau():
    for p in (2, 3, 4):
        for n in range(p, p + 4):
            result = quadrature_log_integral(p, n, 15)
            assert result.agrees_with(expr_eval(tau(n, p), 30)), (n, p)


def test_stirling_integral_agrees_with_rho():
    for m in range(1, 5):
        for n in range(4):
            result = quadrature_stirling_integral(m, n, 15)
            assert result.agrees_with(expr_eval(rho(n, m), 30)), (n, m)
            assert float(result.error_bound) < 1e-6


def test_weighted_moment_quadrature():
    for p in range(1, 4):
        for m in range(4):
            result = quadrature_weighted_moment(p, m, 15)
            assert result.agrees_with(expr_eval(weighted_moment(p, m), 30)), (p, m)
            assert float(result.error_bound) < 1e-6


def test_quadrature_domain_errors():
    with pytest.raises(DomainError):
        quadrature_moment(0, 1, 15)
    with pytest.raises(DomainError):
        quadrature_moment(2, 0, 15)
    with pytest.raises(DomainError):
        quadrature_weighted_moment(2, -1, 15)
    with pytest.raises(DomainError):
        quadrature_beta(0, 2, 15)
    with pytest.raises(DomainError):
        quadrature_log_integral(2, 1, 15)
    with pytest.raises(DomainError):
        quadrature_log_integral(1, 3, 15)
    with pytest.raises(DomainError):
        quadrature_stirling_integral(0, 0, 15)
