"""
特殊函数的高精度数值
High-precision special functions with proven error bounds:
polylogarithm Li_p(x) on [0, 1), Hurwitz zeta ζ(s, a) and digamma ψ(x).
"""
from __future__ import annotations

import logging

import mpmath

from EulerSeries.errors import DomainError
from EulerSeries.numeric import NumericResult, euler_maclaurin_sum, rounding_unit, to_mpf, working_precision

logger = logging.getLogger(__name__)


def _check_digits(digits):
    if digits < 1:
        raise DomainError(f"digits must be positive (got {digits})")


def polylog_numeric(p, x, digits):
    """
    多对数 Li_p(x) = Σ x^k/k^p, 0 <= x < 1

    截断到几何尾部界 x^(K+1)/((1-x)(K+1)^p) 小于目标精度为止。

    参数:
        p: 正整数阶数
        x: [0, 1) 内的实数 (int / Fraction / float / mpf)
        digits: 有效数字位数

    返回:
        NumericResult
    """
    _check_digits(digits)
    if p < 1:
        raise DomainError(f"polylog_numeric needs p >= 1 (got p={p})")
    with working_precision(digits):
        x = to_mpf(x)
        if x < 0 or x >= 1:
            raise DomainError(f"polylog_numeric needs 0 <= x < 1 (got x={mpmath.nstr(x, 15)})")
        if x == 0:
            return NumericResult(mpmath.mpf(0), mpmath.mpf(0), digits)
        target = mpmath.mpf(10) ** (-(digits + 2))
        total = mpmath.mpf(0)
        power = x
        k = 1
        while True:
            total += power / mpmath.mpf(k) ** p
            tail = power * x / ((1 - x) * mpmath.mpf(k + 1) ** p)
            if tail < target:
                break
            k += 1
            power *= x
        logger.debug("polylog_numeric p=%d: %d terms", p, k)
        return NumericResult(total, tail + (k + 2) * rounding_unit() * total, digits)


def hurwitz_numeric(s, a, digits):
    """
    Hurwitz zeta ζ(s, a) = Σ_{k>=0} (k+a)^(-s)

    参数:
        s: 整数 s >= 2
        a: 正实数
        digits: 有效数字位数
    """
    _check_digits(digits)
    if int(s) != s or s < 2:
        raise DomainError(f"hurwitz_numeric needs an integer s >= 2 (got s={s})")
    with working_precision(digits):
        a = to_mpf(a)
        if a <= 0:
            raise DomainError(f"hurwitz_numeric needs a > 0 (got a={mpmath.nstr(a, 15)})")
        value, bound = euler_maclaurin_sum(int(s), a, digits)
        return NumericResult(value, bound, digits)


def digamma_numeric(x, digits):
    """
    digamma函数 ψ(x), x > 0

    先用 ψ(x) = ψ(x+N) - Σ_{k<N} 1/(x+k) 把自变量推到大于 digits+10，
    再用渐近展开 ψ(y) ~ ln y - 1/(2y) - Σ B_{2j}/(2j y^(2j))。
    实数 y > 0 时展开的余项不超过第一个被舍弃的项。
    """
    _check_digits(digits)
    with working_precision(digits):
        x = to_mpf(x)
        if x <= 0:
            raise DomainError(f"digamma_numeric needs x > 0 (got x={mpmath.nstr(x, 15)})")
        target = mpmath.mpf(10) ** (-(digits + 2))
        shift = max(0, int(mpmath.ceil(digits + 10 - x)))
        y = x + shift
        value = -mpmath.fsum(1 / (x + k) for k in range(shift))
        value += mpmath.log(y) - 1 / (2 * y)
        y2 = y * y
        power = y2
        j = 1
        while True:
            term = mpmath.bernoulli(2 * j) / (2 * j * power)
            if abs(term) < target:
                break
            value -= term
            power *= y2
            j += 1
        bound = 2 * abs(term) + (shift + j + 4) * rounding_unit() * (abs(value) + mpmath.log(y) + 1)
        return NumericResult(value, bound, digits)
