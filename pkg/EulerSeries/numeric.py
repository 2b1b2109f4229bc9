"""
高精度数值工具
High-precision plumbing: NumericResult, the mpmath precision guard and
the Euler-Maclaurin tail used by zeta and Hurwitz zeta.

mpmath的工作精度是进程级全局状态，库内所有mpmath运算都在
working_precision() 中进行，保证多线程下结果与调度无关。
"""
from __future__ import annotations

import logging
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .config import GUARD_DIGITS
from .errors import DomainError

logger = logging.getLogger(__name__)

_MP_LOCK = threading.RLock()


@contextmanager
def working_precision(digits):
    """持锁并把mpmath精度设为 digits + GUARD_DIGITS"""
    with _MP_LOCK:
        with mpmath.workdps(int(digits) + GUARD_DIGITS):
            yield


def to_mpf(value):
    """把 int / Fraction / float / str / mpf 转为当前精度下的 mpf"""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def rounding_unit():
    """当前工作精度下的单位舍入误差"""
    return mpmath.ldexp(1, 1 - mpmath.mp.prec)


@dataclass(frozen=True)
class NumericResult:
    """
    数值结果与严格误差界

    参数:
        value: 高精度实数 (mpf)
        error_bound: |value - 真值| 的上界
        digits_requested: 请求的有效数字位数
    """
    value: mpmath.mpf
    error_bound: mpmath.mpf
    digits_requested: int

    def __post_init__(self):
        if self.error_bound < 0:
            raise DomainError(f"error bound must be nonnegative (got {self.error_bound})")

    def agrees_with(self, other):
        """两个结果的差不超过各自误差界之和"""
        with working_precision(self.digits_requested):
            return abs(self.value - other.value) <= self.error_bound + other.error_bound

    def scaled(self, factor):
        """乘以精确有理数因子，误差界同比缩放"""
        with working_precision(self.digits_requested):
            c = to_mpf(Fraction(factor))
            return NumericResult(self.value * c, self.error_bound * abs(c), self.digits_requested)

    def __str__(self):
        return f"{mpmath.nstr(self.value, self.digits_requested)} (+/- {mpmath.nstr(self.error_bound, 3)})"


def euler_maclaurin_sum(s, a, digits):
    """
    Euler-Maclaurin求和: Σ_{k>=0} (k + a)^(-s)

    前 N 项直接相加，余项用积分、端点修正以及Bernoulli修正项
        B_{2j}/(2j)! · s(s+1)…(s+2j-2) · (N+a)^(-s-2j+1)
    逼近，直到修正项小于目标精度。实数 s > 1 时余项不超过第一个
    被舍弃的修正项，这里取其2倍作为误差界。

    参数:
        s: 整数 s >= 2
        a: 正实数 (mpf)
        digits: 目标有效数字

    返回:
        (value, error_bound)，需在 working_precision 内调用
    """
    if s < 2:
        raise DomainError(f"Euler-Maclaurin summation needs s >= 2 (got s={s})")
    target = mpmath.mpf(10) ** (-(digits + 2))
    n_direct = max(10, digits + 10)
    head = mpmath.fsum((k + a) ** (-s) for k in range(n_direct))

    x = n_direct + a
    tail = x ** (1 - s) / (s - 1) + x ** (-s) / 2
    rising = mpmath.mpf(s)
    j = 1
    while True:
        correction = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * rising * x ** (-s - 2 * j + 1)
        if abs(correction) < target:
            break
        tail += correction
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        j += 1
        if j > 4 * n_direct:
            # 渐近展开开始发散前必然已达到目标精度
            raise DomainError(f"Euler-Maclaurin corrections did not converge for s={s}, a={a}")

    value = head + tail
    bound = 2 * abs(correction) + (n_direct + j + 2) * rounding_unit() * abs(value)
    logger.debug("euler_maclaurin_sum s=%s a=%s: N=%d, corrections=%d", s, a, n_direct, j - 1)
    return value, bound
