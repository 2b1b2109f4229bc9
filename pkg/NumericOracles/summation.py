"""
截断求和预言机
Direct truncated summation of every series family in float64, with a
rigorous tail bound and a rounding bound.

项的生成全部用正项递推 (numpy累积和)，每一步都是正数相加或相乘，
前向稳定:
- H_k^(p): 1/k^p 的累积和
- W_p(k): (-ln(1-x))^j (1-x)^(-p) 的系数递推 (k+1)a_{k+1} = (k+p)a_k + j·b_k
- [k over m]/k!: k·r_k(m) = Σ_{i<k} r_i(m-1)
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.special import comb

from EulerSeries.closed_forms import Family, validate_spec
from EulerSeries.config import TAIL_SAFETY_FACTOR
from EulerSeries.errors import DomainError
from EulerSeries.numeric import NumericResult, working_precision

logger = logging.getLogger(__name__)

# float64 结果的有效位数
FLOAT_DIGITS = 15
_UNIT_ROUNDOFF = np.finfo(float).eps / 2

TAIL_METHODS = ('integral-comparison', 'geometric', 'exact-remainder')


@dataclass(frozen=True)
class TailBound:
    """
    截断余项的上界

    参数:
        k_max: 最后一个已求和的下标
        bound: |Σ_{k>k_max} 项| 的上界
        method: integral-comparison / geometric / exact-remainder
    """
    k_max: int
    bound: float
    method: str

    def __post_init__(self):
        if self.method not in TAIL_METHODS:
            raise DomainError(f"unknown tail bound method {self.method!r}")
        if not self.bound >= 0:
            raise DomainError(f"tail bound must be nonnegative (got {self.bound})")


# ---- 浮点项生成 ----

def harmonic_floats(p, k_max):
    """[H_0^(p), ..., H_k_max^(p)]，float64"""
    k = np.arange(1, k_max + 1, dtype=float)
    return np.concatenate(([0.0], np.cumsum(k ** -float(p))))


def beta_floats(k, n):
    """n!/(k(k+1)…(k+n))，k 为 float 数组"""
    beta = 1.0 / k
    for j in range(1, n + 1):
        beta *= j / (k + j)
    return beta


def convolution_floats(p, k_max):
    """
    W_p(k), k = 0..k_max，float64

    A_j(x) = (-ln(1-x))^j (1-x)^(-p) 满足 (1-x)A_j' = j·A_{j-1} + p·A_j。
    记 P_k = C(k+p-1, p-1) 为 A_0 的系数，则
        a_k = P_k · Σ_{i<k} j·b_i / ((i+1)·P_{i+1})
    其中 b 是 A_{j-1} 的系数。W_p 即 A_p 的系数。
    """
    if p < 1:
        raise DomainError(f"convolution_floats needs p >= 1 (got p={p})")
    k = np.arange(k_max + 1, dtype=float)
    binomial = comb(k + p - 1, p - 1)
    coefficients = binomial
    for j in range(1, p + 1):
        increments = j * coefficients[:-1] / ((k[:-1] + 1) * binomial[1:])
        nxt = np.zeros(k_max + 1)
        nxt[1:] = binomial[1:] * np.cumsum(increments)
        coefficients = nxt
    return coefficients


def stirling_ratio_floats(m, k_max):
    """
    r_k(m) = [k over m]/k!, k = 0..k_max，float64

    由 (k+1)r_{k+1}(m) = k·r_k(m) + r_k(m-1) 得 k·r_k(m) = Σ_{i<k} r_i(m-1)。
    """
    if m < 0:
        raise DomainError(f"stirling_ratio_floats needs m >= 0 (got m={m})")
    k = np.arange(k_max + 1, dtype=float)
    column = np.zeros(k_max + 1)
    column[0] = 1.0
    for _ in range(m):
        nxt = np.zeros(k_max + 1)
        nxt[1:] = np.cumsum(column[:-1]) / k[1:]
        column = nxt
    return column


def compensated_sum(terms):
    """按给定顺序的补偿求和，结果是浮点项精确和的正确舍入"""
    return math.fsum(terms)


def series_terms(spec, k_max):
    """
    级数从首个下标到 k_max 的各项

    返回:
        (ks, terms, depth)，depth 是生成各项时串联的累积运算层数，用于舍入误差界
    """
    validate_spec(spec)
    first = spec.first_index()
    if k_max < first:
        raise DomainError(f"{spec.family.value}: k_max must be >= {first} (got k_max={k_max})")
    ks = np.arange(first, k_max + 1, dtype=float)
    family = spec.family
    n, p, m = spec.n, spec.p, spec.m

    if family is Family.SIGMA:
        terms = harmonic_floats(p, k_max)[first:] * beta_floats(ks, n)
        depth = 1
    elif family is Family.DELTA:
        terms = beta_floats(ks, n) * ks ** -float(p - 1)
        depth = 0
    elif family is Family.CHI:
        terms = harmonic_floats(p, k_max)[first:] / ((ks + n) * (ks + m))
        depth = 1
    elif family is Family.TAU:
        terms = convolution_floats(p, k_max)[first:] * beta_floats(ks, n)
        depth = 2 * p
    elif family is Family.RHO:
        terms = stirling_ratio_floats(m, k_max)[first:] * beta_floats(ks, n)
        depth = m
    elif family is Family.MU:
        terms = ks ** -float(p) / (ks + float(spec.r))
        depth = 0
    else:
        # ∫(1-x)^m Li_p(x) dx 逐项积分: Σ m!/(k^p (k+1)…(k+m+1))
        terms = beta_floats(ks + 1, m) * ks ** -float(p)
        depth = 0
    return ks, terms, depth


# ---- 尾部界 ----

def _comparison_tail(k_max, coefficient, a, b, c=1.0):
    """
    Σ_{k>K} C·(ln k + c)^a / k^b 的上界，b > 1

    比较函数在 ln x > a/b - c 之后单调递减；此前的项逐个显式相加，
    之后用 ∫_K^∞ (ln x + c)^a x^(-b) dx = K^(-s) Σ_j a!/(a-j)!·(ln K + c)^(a-j)/s^(j+1)，s = b-1。
    """
    start = k_max
    explicit = 0.0
    if a:
        threshold = math.exp(a / b - c)
        if threshold > k_max:
            stop = math.ceil(threshold)
            ks = np.arange(k_max + 1, stop + 1, dtype=float)
            explicit = math.fsum(coefficient * (np.log(ks) + c) ** a / ks ** b)
            start = stop
    s = b - 1
    log_term = math.log(start) + c
    integral = math.fsum(math.factorial(a) / math.factorial(a - j) * log_term ** (a - j) / s ** (j + 1)
                         for j in range(a + 1))
    return explicit + coefficient * integral * float(start) ** (-s)


def series_tail_bound(spec, k_max):
    """
    Σ_{k>k_max} 项 的严格上界 (乘以 TAIL_SAFETY_FACTOR)

    各族的比较函数 (c = 1):
        SIGMA   n!·B/k^(n+1)，p = 1 时 B = ln k + 1，否则 B = 2 (>= ζ(p))
        DELTA   n!/k^(n+p)；p = 1 时余项可精确裂项
        CHI     B/k^2
        TAU     n!/(p-1)!·(ln k + 1)^p/k^(n+2-p)，因 W_p(k) <= C(k-1,p-1)·H_k^p
        RHO     n!/(m-1)!·(ln k + 1)^(m-1)/k^(n+2)，因 [k over m]/(k-1)! <= H_{k-1}^(m-1)/(m-1)!
        MU      1/k^(p+1)
        WMOMENT m!/k^(p+m+1)
    """
    validate_spec(spec)
    family = spec.family
    n, p, m = spec.n, spec.p, spec.m
    method = 'integral-comparison'

    if family is Family.DELTA and p == 1:
        # Σ_{k>K} n!/(k…(k+n)) = (n-1)!/((K+1)…(K+n))
        remainder = float(math.factorial(n - 1))
        for j in range(1, n + 1):
            remainder /= k_max + j
        bound, method = remainder, 'exact-remainder'
    elif family in (Family.SIGMA, Family.CHI):
        b = n + 1 if family is Family.SIGMA else 2
        scale = float(math.factorial(n)) if family is Family.SIGMA else 1.0
        if p == 1:
            bound = _comparison_tail(k_max, scale, 1, b)
        else:
            bound = _comparison_tail(k_max, 2.0 * scale, 0, b)
    elif family is Family.DELTA:
        bound = _comparison_tail(k_max, float(math.factorial(n)), 0, n + p)
    elif family is Family.TAU:
        scale = math.factorial(n) / math.factorial(p - 1)
        bound = _comparison_tail(k_max, scale, p, n + 2 - p)
    elif family is Family.RHO:
        scale = math.factorial(n) / math.factorial(m - 1)
        bound = _comparison_tail(k_max, scale, m - 1, n + 2)
    elif family is Family.MU:
        bound = _comparison_tail(k_max, 1.0, 0, p + 1)
    else:
        bound = _comparison_tail(k_max, float(math.factorial(m)), 0, p + m + 1)

    return TailBound(k_max=k_max, bound=TAIL_SAFETY_FACTOR * bound, method=method)


def geometric_tail_bound(x, k_max, scale=1.0):
    """Σ_{k>K} scale·x^k = scale·x^(K+1)/(1-x)，0 <= x < 1"""
    if not 0 <= x < 1:
        raise DomainError(f"geometric tail needs 0 <= x < 1 (got x={x})")
    return TailBound(k_max=k_max, bound=scale * x ** (k_max + 1) / (1 - x), method='geometric')


# ---- 部分和 ----

def series_partial_sum(spec, k_max):
    """
    级数前若干项 (到 k_max) 的补偿求和

    参数:
        spec: SeriesSpec (须在定义域内)
        k_max: 截断下标，不小于首个下标

    返回:
        NumericResult，误差界 = 舍入界 + 尾部界
    """
    ks, terms, depth = series_terms(spec, k_max)
    total = compensated_sum(terms)
    magnitude = math.fsum(np.abs(terms))
    # 每项的相对误差不超过 (depth·k_max + 4n + 4p + 16)·u，取2倍
    per_term = depth * k_max + 4 * (spec.n + spec.p + spec.m) + 16
    rounding = 2 * per_term * _UNIT_ROUNDOFF * magnitude
    tail = series_tail_bound(spec, k_max)
    logger.debug("%s partial sum to k=%d: %r, tail %.3e (%s), rounding %.3e",
                 spec.label(), k_max, total, tail.bound, tail.method, rounding)
    with working_precision(FLOAT_DIGITS):
        return NumericResult(mpmath.mpf(total), mpmath.mpf(tail.bound) + mpmath.mpf(rounding), FLOAT_DIGITS)
