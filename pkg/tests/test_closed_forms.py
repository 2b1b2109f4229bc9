from fractions import Fraction
from math import factorial

import pytest

from EulerSeries import closed_forms
from EulerSeries.closed_forms import (Family, SeriesSpec, chi, chi_expanded_k_k2, delta, delta_integral,
                                      delta_recursive, evaluate, jordan_zeta, mu, rho, sigma, tau, validate_spec,
                                      weighted_moment)
from EulerSeries.config import EvaluationSettings
from EulerSeries.errors import DivergenceError, DomainError, RouteMismatchError
from EulerSeries.exact_core import harmonic
from EulerSeries.zeta_expr import ZetaExpr

Z = ZetaExpr.zeta


def test_mu_examples():
    assert mu(1, 1) == ZetaExpr.rational(1)
    assert mu(2, 1) == Z(2) - 1
    assert mu(2, 2) == Z(2) / 2 - Fraction(3, 8)
    assert mu(3, 1) == Z(3) - Z(2) + 1


def test_mu_rejects_nonpositive_r():
    with pytest.raises(DomainError):
        mu(2, 0)
    with pytest.raises(DomainError):
        mu(2, Fraction(-1, 2))


def test_mu_half_integer_keeps_digamma_term():
    expr = mu(2, Fraction(1, 2))
    assert expr.digamma is not None
    assert expr.digamma.argument == Fraction(1, 2)
    assert mu(2, 0.5) == expr
    assert mu(2, "1/2") == expr


def test_mu_recursion():
    for r in range(1, 11):
        for p in range(2, 7):
            assert mu(p, r) == (Z(p) - mu(p - 1, r)) / r


def test_weighted_moment_examples():
    assert weighted_moment(2, 0) == Z(2) - 1
    assert weighted_moment(1, 1) == ZetaExpr.rational(Fraction(1, 4))
    assert weighted_moment(2, 1) == Z(2) / 2 - Fraction(5, 8)
    for p in range(1, 5):
        for m in range(5):
            assert weighted_moment(p, m).digamma is None


def test_sigma_examples():
    assert sigma(1, 2) == Z(3)
    assert sigma(2, 1) == Z(2) - 1
    assert sigma(3, 1) == delta(2, 2) == Z(2) - Fraction(5, 4)
    with pytest.raises(DivergenceError):
        sigma(0, 2)


def test_delta_integral_examples():
    assert delta_integral(1, 2) == Z(2) - 1
    assert delta_integral(2, 2) == Z(2) - Fraction(5, 4)
    assert delta_integral(1, 3) == Z(3) - Z(2) + 1
    with pytest.raises(DomainError):
        delta_integral(3, 1)


def test_delta_recursive_examples():
    assert delta_recursive(4, 1) == ZetaExpr.rational(Fraction(1, 4))
    assert delta_recursive(3, 2) == Z(2) - Fraction(49, 36)
    assert delta_recursive(2, 3) == Z(3) - Z(2) * Fraction(3, 2) + Fraction(13, 8)
    assert delta_recursive(0, 5) == Z(5)
    with pytest.raises(DivergenceError):
        delta_recursive(0, 1)


def test_delta_route_disagreement_raises(monkeypatch):
    monkeypatch.setattr(closed_forms, "delta_integral", lambda n, p: Z(p) + 1)
    with pytest.raises(RouteMismatchError, match=r"delta\(n=3, p=4\)"):
        delta(3, 4)
    with pytest.raises(RouteMismatchError):
        delta(3, 4, EvaluationSettings(delta_route="integral"))
    assert delta(3, 4, EvaluationSettings(cross_check=False)) == delta_recursive(3, 4)
    # p = 1 只有递推路线，无从比对
    assert delta(4, 1) == ZetaExpr.rational(Fraction(1, 4))


def test_sigma_delta_duality():
    for n in range(2, 9):
        for p in range(1, 7):
            assert sigma(n, p) == delta(n - 1, p + 1)


def test_delta_routes_agree():
    for n in range(1, 9):
        for p in range(2, 7):
            assert delta_integral(n, p) == delta_recursive(n, p)


def test_delta_recurrence():
    for n in range(1, 9):
        for p in range(2, 7):
            if n + p - 1 >= 2:
                assert delta(n, p) == delta(n - 1, p) - delta(n, p - 1) / n


def test_delta_low_weight_closed_forms():
    for n in range(1, 21):
        assert delta(n, 1) == ZetaExpr.rational(Fraction(1, n))
        assert delta(n, 2) == Z(2) - harmonic(n, 2)
        tail = sum((harmonic(k, 2) / k for k in range(1, n + 1)), Fraction(0))
        assert delta(n, 3) == Z(3) - Z(2) * harmonic(n) + tail


def test_delta_settings_choose_route():
    integral = EvaluationSettings(delta_route='integral')
    unchecked = EvaluationSettings(cross_check=False)
    assert delta(3, 4, integral) == delta(3, 4, unchecked)
    # p = 1 falls back to the recursive route
    assert delta(5, 1, integral) == ZetaExpr.rational(Fraction(1, 5))


def test_chi_examples():
    assert chi(3, 0, 1) == Z(4)
    assert chi(2, 0, 2) == (Z(3) + Z(2) - 1) / 2
    assert chi(1, 1, 2) == ZetaExpr.rational(1)
    with pytest.raises(DomainError):
        chi(1, 2, 2)


def test_chi_alternating_form():
    for p in range(1, 9):
        assert chi(p, 0, 2) == chi_expanded_k_k2(p)


def test_tau_examples():
    assert tau(2, 2) == Z(3) * 2
    assert tau(3, 2) == (Z(3) - 1) * 2
    assert tau(5, 3) == Z(4) * 6 - Fraction(51, 8)
    with pytest.raises(DivergenceError):
        tau(2, 3)
    with pytest.raises(DomainError):
        tau(3, 1)


def test_rho_examples():
    assert rho(0, 2) == Z(3)
    assert rho(1, 2) == Z(3) - 1
    assert rho(2, 1) == Z(2) - Fraction(5, 4)
    assert rho(2, 1) == delta(2, 2)
    assert jordan_zeta(4) == Z(5)


def test_tau_rho_identity():
    for p in (2, 3, 4):
        for n in range(p, p + 7):
            assert tau(n, p) == rho(n - p, p) * factorial(p)


def test_integer_parameters_never_produce_digamma_terms():
    exprs = [sigma(n, p) for n in range(1, 6) for p in range(1, 4)]
    exprs += [chi(p, n, m) for p in range(1, 4) for n in range(3) for m in range(n + 1, 5)]
    exprs += [mu(p, r) for p in range(1, 5) for r in range(1, 6)]
    assert all(expr.digamma is None for expr in exprs)


def test_evaluate_dispatch():
    assert evaluate(SeriesSpec(Family.SIGMA, n=1, p=2)) == Z(3)
    assert evaluate(SeriesSpec(Family.DELTA, n=4, p=1)) == ZetaExpr.rational(Fraction(1, 4))
    assert evaluate(SeriesSpec(Family.TAU, n=2, p=2)) == Z(3) * 2
    assert evaluate(SeriesSpec('mu', p=2, r=Fraction(1, 2))) == mu(2, Fraction(1, 2))


def test_evaluate_errors_name_the_family():
    with pytest.raises(DivergenceError, match=r"^tau: .*n=1 < p=2"):
        evaluate(SeriesSpec(Family.TAU, n=1, p=2))
    with pytest.raises(DivergenceError, match=r"^delta: "):
        evaluate(SeriesSpec(Family.DELTA, n=0, p=1))
    with pytest.raises(DomainError, match=r"^chi: "):
        validate_spec(SeriesSpec(Family.CHI, p=1, n=3, m=2))


def test_series_spec_helpers():
    spec = SeriesSpec(Family.CHI, p=1, n=1, m=2)
    assert spec.params() == {'p': 1, 'n': 1, 'm': 2}
    assert spec.label() == "chi(p=1, n=1, m=2)"
    assert spec.to_dict() == {"family": "chi", "n": 1, "p": 1, "m": 2}
    assert SeriesSpec.from_dict(spec.to_dict()) == spec
    moment = SeriesSpec(Family.MU, p=2, r=0.5)
    assert moment.to_dict() == {"family": "mu", "p": 2, "r": "1/2"}
    assert SeriesSpec.from_dict(moment.to_dict()) == moment
    assert SeriesSpec(Family.TAU, n=5, p=3).first_index() == 3
    assert SeriesSpec(Family.RHO, n=0, m=4).first_index() == 4


def test_series_spec_validation():
    with pytest.raises(DomainError):
        SeriesSpec(Family.MU, p=2)
    with pytest.raises(DomainError):
        SeriesSpec(Family.SIGMA, n=1.5, p=2)
    with pytest.raises(DomainError):
        SeriesSpec('zeta', n=1)
