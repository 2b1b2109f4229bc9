"""
积分预言机
Quadrature of the integral representations, with scipy.integrate.quad:

- 多对数矩 μ(p; r) = ∫_0^1 x^(r-1) Li_p(x) dx
- 加权矩 ∫_0^1 (1-x)^m Li_p(x) dx
- Euler Beta积分 ∫_0^1 x^(k-1) (1-x)^n dx
- 半无穷积分 ∫_0^∞ t^s e^(-a t)/(1-e^(-t)) dt = s!·ζ(s+1, a)

x -> 1 端在 1-ε 处截断，余下部分用 Li_p(x) <= ζ(p) (p >= 2) 或对数原函数 (p = 1) 界定。
结果为 float64 精度；误差界 = quad 的误差估计 + 截断余项。
"""
from __future__ import annotations

import logging
import math
import warnings
from fractions import Fraction

import mpmath
import numpy as np
from scipy import integrate
from scipy.special import gamma, gammaincc

from EulerSeries.config import QUADRATURE_EPSILON
from EulerSeries.errors import DomainError
from EulerSeries.numeric import NumericResult, working_precision
from EulerSeries.zeta_expr import as_rational

from .summation import FLOAT_DIGITS

logger = logging.getLogger(__name__)

# Li_p(x) <= ζ(p) <= ζ(2) < 2 on [0, 1], p >= 2
_POLYLOG_CEILING = 2.0
_QUAD_OPTIONS = dict(epsabs=1e-14, epsrel=1e-13, limit=200)
_EXPONENTIAL_TAIL_TARGET = 1e-17


def polylog_float(p, x):
    """Li_p(x) 的 float64 值，0 <= x < 1"""
    if p == 1:
        return -math.log1p(-x)
    return float(mpmath.fp.polylog(p, x).real)


def _quad(integrand, lower, upper, label):
    """scipy quad，把 IntegrationWarning 转成日志"""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', integrate.IntegrationWarning)
        value, abserr = integrate.quad(integrand, lower, upper, **_QUAD_OPTIONS)
    for warning in caught:
        logger.warning("%s: %s", label, warning.message)
    return value, abserr


def _result(value, bound):
    rounding = 64 * np.finfo(float).eps * abs(value)
    with working_precision(FLOAT_DIGITS):
        return NumericResult(mpmath.mpf(value), mpmath.mpf(bound) + mpmath.mpf(rounding), FLOAT_DIGITS)


def _endpoint_remainder(p, weight_sup, order):
    """
    ∫_{1-ε}^1 w(x) Li_p(x) dx 的上界，其中 w(x) <= weight_sup·(1-x)^order

    p = 1 时 ∫_0^ε t^m (-ln t) dt = ε^(m+1)/(m+1)·(1/(m+1) - ln ε)
    """
    eps = QUADRATURE_EPSILON
    width = eps ** (order + 1) / (order + 1)
    if p == 1:
        return weight_sup * width * (1 / (order + 1) - math.log(eps))
    return weight_sup * _POLYLOG_CEILING * width


def quadrature_moment(p, r, digits):
    """
    μ(p; r) = ∫_0^1 x^(r-1) Li_p(x) dx 的数值积分

    参数:
        p: 正整数
        r: 正实数 (int / Fraction / float / "p/q")
        digits: 请求精度 (积分本身为 float64)

    返回:
        NumericResult
    """
    r = as_rational(r)
    if p < 1 or r <= 0:
        raise DomainError(f"quadrature_moment needs p >= 1 and r > 0 (got p={p}, r={r})")
    exponent = float(r) - 1
    upper = 1 - QUADRATURE_EPSILON
    value, abserr = _quad(lambda x: x ** exponent * polylog_float(p, x), 0.0, upper,
                          f"quadrature_moment(p={p}, r={r})")
    weight_sup = 1.0 if exponent >= 0 else upper ** exponent
    remainder = _endpoint_remainder(p, weight_sup, 0)
    logger.debug("quadrature_moment p=%d r=%s: %r (quad err %.2e, endpoint %.2e)", p, r, value, abserr, remainder)
    return _result(value, abserr + remainder)


def quadrature_weighted_moment(p, m, digits):
    """∫_0^1 (1-x)^m Li_p(x) dx"""
    if p < 1 or m < 0:
        raise DomainError(f"quadrature_weighted_moment needs p >= 1 and m >= 0 (got p={p}, m={m})")
    value, abserr = _quad(lambda x: (1 - x) ** m * polylog_float(p, x), 0.0, 1 - QUADRATURE_EPSILON,
                          f"quadrature_weighted_moment(p={p}, m={m})")
    return _result(value, abserr + _endpoint_remainder(p, 1.0, m))


def quadrature_beta(k, n, digits):
    """Euler Beta积分 ∫_0^1 x^(k-1) (1-x)^n dx = n!/(k(k+1)…(k+n))"""
    if k < 1 or n < 0:
        raise DomainError(f"quadrature_beta needs k >= 1 and n >= 0 (got k={k}, n={n})")
    value, abserr = _quad(lambda x: x ** (k - 1) * (1 - x) ** n, 0.0, 1.0, f"quadrature_beta(k={k}, n={n})")
    return _result(value, abserr)


def _exponential_integral(power, shift, label):
    """
    ∫_0^∞ t^power e^(-shift·t)/(1-e^(-t)) dt

    在 T 处截断；t >= T >= 1 时 1/(1-e^(-t)) <= 1/(1-e^(-1))，
    尾部 <= Γ(power+1, shift·T)/shift^(power+1)/(1-e^(-1))。
    """
    def tail(cut):
        upper_gamma = gammaincc(power + 1, shift * cut) * gamma(power + 1)
        return upper_gamma / shift ** (power + 1) / (1 - math.exp(-1))

    cut = max(1.0, 40.0 / shift)
    while tail(cut) > _EXPONENTIAL_TAIL_TARGET:
        cut *= 1.5

    def integrand(t):
        if t == 0.0:
            return 1.0 if power == 1 else 0.0
        return t ** power * math.exp(-shift * t) / -math.expm1(-t)

    value, abserr = _quad(integrand, 0.0, cut, label)
    logger.debug("%s: cut at T=%.1f, tail %.2e", label, cut, tail(cut))
    return _result(value, abserr + tail(cut))


def quadrature_log_integral(p, n, digits):
    """
    τ_n(p) 的积分表示

    ∫_0^1 (-ln(1-x))^p (1-x)^(n-p) dx/x，经 x = 1 - e^(-t) 化为
    ∫_0^∞ t^p e^(-(n-p+1)t)/(1-e^(-t)) dt。
    """
    if p < 2 or n < p:
        raise DomainError(f"quadrature_log_integral needs n >= p >= 2 (got n={n}, p={p})")
    return _exponential_integral(p, n - p + 1, f"quadrature_log_integral(p={p}, n={n})")


def quadrature_stirling_integral(m, n, digits):
    """
    ρ_n(m) 的积分表示

    (1/m!) ∫_0^∞ t^m e^(-(n+1)t)/(1-e^(-t)) dt = ζ(m+1, n+1)
    """
    if m < 1 or n < 0:
        raise DomainError(f"quadrature_stirling_integral needs m >= 1 and n >= 0 (got m={m}, n={n})")
    raw = _exponential_integral(m, n + 1, f"quadrature_stirling_integral(m={m}, n={n})")
    return raw.scaled(Fraction(1, math.factorial(m)))
