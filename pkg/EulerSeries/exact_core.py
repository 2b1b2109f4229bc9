"""
精确有理运算与组合数表
Exact rational arithmetic and the combinatorial tables consumed by every
other module: generalized harmonic numbers, unsigned Stirling numbers of the
first kind and p-fold harmonic convolutions.

所有表按需增长且只增不减；增长过程持锁，读取的始终是已完整构建的前缀。
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod

from .config import CONVOLUTION_EXACT_CAP, STIRLING_EXACT_CAP
from .errors import DomainError

logger = logging.getLogger(__name__)

# 分子分母均为任意精度整数，始终保持最简形式
BigRational = Fraction


class HarmonicTable:
    """
    广义调和数表 H_k^(p) = 1 + 1/2^p + ... + 1/k^p

    每个阶数 p 存一行 [H_0, H_1, ..., H_max_k]，H_0 = 0。
    """

    def __init__(self):
        self._rows = {}
        self._max_k = 0
        self._lock = threading.Lock()

    @property
    def max_k(self):
        return self._max_k

    @property
    def max_p(self):
        return max(self._rows, default=0)

    def ensure(self, max_k, max_p):
        """把表扩展到至少覆盖 k <= max_k, p <= max_p"""
        if max_k <= self._max_k and all(p in self._rows for p in range(1, max_p + 1)):
            return self
        with self._lock:
            target_k = max(max_k, self._max_k)
            for p in range(1, max(max_p, self.max_p) + 1):
                row = self._rows.get(p, [Fraction(0)])
                row = list(row)
                for k in range(len(row), target_k + 1):
                    row.append(row[-1] + Fraction(1, k ** p))
                self._rows[p] = row
            if target_k > self._max_k:
                logger.debug("HarmonicTable grown to max_k=%d, max_p=%d", target_k, self.max_p)
            self._max_k = target_k
        return self

    def value(self, k, p):
        self.ensure(k, p)
        return self._rows[p][k]

    def row(self, p, max_k):
        """[H_0^(p), ..., H_max_k^(p)]"""
        self.ensure(max_k, p)
        return self._rows[p][:max_k + 1]


class StirlingTable:
    """
    第一类无符号Stirling数三角表 [k over m]

    递推: [k+1 over m] = k·[k over m] + [k over m-1]，[0 over 0] = 1。
    只为 k <= cap 物化整数表。
    """

    def __init__(self, cap=STIRLING_EXACT_CAP):
        self.cap = cap
        self._rows = [[1]]
        self._lock = threading.Lock()

    @property
    def max_k(self):
        return len(self._rows) - 1

    def ensure(self, max_k):
        if max_k > self.cap:
            raise DomainError(f"exact Stirling table is capped at k <= {self.cap} (requested {max_k})")
        if max_k <= self.max_k:
            return self
        with self._lock:
            rows = self._rows
            while len(rows) <= max_k:
                rows.append(_next_stirling_row(rows[-1]))
            logger.debug("StirlingTable grown to max_k=%d", self.max_k)
        return self

    def value(self, k, m):
        if m > k:
            return 0
        self.ensure(k)
        return self._rows[k][m]


def _next_stirling_row(row):
    k = len(row) - 1
    nxt = [0] * (k + 2)
    for m in range(k + 2):
        left = k * row[m] if m <= k else 0
        below = row[m - 1] if m >= 1 else 0
        nxt[m] = left + below
    return nxt


@dataclass(frozen=True)
class ConvolutionTable:
    """
    调和数 p 重卷积 W_p(k), p <= k <= max_k

    W_p(k) = Σ_{k_1+...+k_p=k, k_j>=1} H_{k_1}···H_{k_p}
    """
    p: int
    max_k: int
    values: tuple

    def __getitem__(self, k):
        if not self.p <= k <= self.max_k:
            raise DomainError(f"W_{self.p}(k) is tabulated for {self.p} <= k <= {self.max_k} (got k={k})")
        return self.values[k - self.p]

    def items(self):
        return zip(range(self.p, self.max_k + 1), self.values)


_HARMONIC = HarmonicTable()
_STIRLING = StirlingTable()


def harmonic(k, p=1):
    """
    广义调和数 H_k^(p)

    参数:
        k: 非负整数 (k = 0 时为空和)
        p: 正整数阶数

    返回:
        Fraction
    """
    if k < 0 or p < 1:
        raise DomainError(f"harmonic needs k >= 0 and p >= 1 (got k={k}, p={p})")
    if k == 0:
        return Fraction(0)
    return _HARMONIC.value(k, p)


def stirling_first(k, m):
    """第一类无符号Stirling数 [k over m]；m > k 时为0"""
    if k < 0 or m < 0:
        raise DomainError(f"stirling_first needs k, m >= 0 (got k={k}, m={m})")
    if m > k:
        return 0
    if k <= _STIRLING.cap:
        return _STIRLING.value(k, m)
    # 超出上限时只保留 0..m 列临时递推，不写入表
    cols = [1] + [0] * m
    for j in range(k):
        cols = [j * cols[i] + (cols[i - 1] if i else 0) for i in range(m + 1)]
    return cols[m]


def series_multiply(a, b, max_k):
    """截断幂级数乘积，系数序列下标即次数"""
    out = [Fraction(0)] * (max_k + 1)
    for i, ai in enumerate(a[:max_k + 1]):
        if ai == 0:
            continue
        for j in range(min(len(b), max_k + 1 - i)):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def series_power(a, e, max_k):
    """截断幂级数的 e 次幂 (二进制快速幂)"""
    result = [Fraction(1)] + [Fraction(0)] * max_k
    base = list(a[:max_k + 1]) + [Fraction(0)] * max(0, max_k + 1 - len(a))
    while e:
        if e & 1:
            result = series_multiply(result, base, max_k)
        e >>= 1
        if e:
            base = series_multiply(base, base, max_k)
    return result


@lru_cache(maxsize=32)
def harmonic_convolution(p, max_k):
    """
    调和数序列的 p 重卷积表 W_p(k)

    参数:
        p: 卷积重数 (>= 2)
        max_k: 最大下标 (p <= max_k <= CONVOLUTION_EXACT_CAP)

    返回:
        ConvolutionTable
    """
    if p < 2 or max_k < p:
        raise DomainError(f"harmonic_convolution needs p >= 2 and max_k >= p (got p={p}, max_k={max_k})")
    if max_k > CONVOLUTION_EXACT_CAP:
        raise DomainError(f"exact convolutions are capped at max_k <= {CONVOLUTION_EXACT_CAP} (got {max_k})")
    h = _HARMONIC.row(1, max_k)
    conv = list(h)
    for _ in range(p - 1):
        conv = series_multiply(conv, h, max_k)
    return ConvolutionTable(p=p, max_k=max_k, values=tuple(conv[p:max_k + 1]))


def harmonic_composition_sum(p, k):
    """按组合直接求和 W_p(k)，仅用于小 k 的独立核对"""
    if p < 1 or k < p:
        raise DomainError(f"harmonic_composition_sum needs 1 <= p <= k (got p={p}, k={k})")
    total = Fraction(0)
    for parts in product(range(1, k - p + 2), repeat=p - 1):
        last = k - sum(parts)
        if last >= 1:
            total += prod((harmonic(j) for j in parts), start=Fraction(1)) * harmonic(last)
    return total


@lru_cache(maxsize=32)
def _log_power_cached(m, max_k):
    log_series = [Fraction(0)] + [Fraction(1, k) for k in range(1, max_k + 1)]
    return tuple(series_power(log_series, m, max_k))


def log_power_coefficients(m, max_k):
    """
    (-ln(1-x))^m 的幂级数系数，次数 0..max_k

    由 -ln(1-x) = Σ x^k/k 截断求幂得到。
    """
    if m < 1 or max_k < m:
        raise DomainError(f"log_power_coefficients needs m >= 1 and max_k >= m (got m={m}, max_k={max_k})")
    return list(_log_power_cached(m, max_k))


def beta_factor(k, n):
    """Euler Beta因子 n!/(k(k+1)...(k+n))"""
    if k < 1 or n < 0:
        raise DomainError(f"beta_factor needs k >= 1 and n >= 0 (got k={k}, n={n})")
    return Fraction(factorial(n), prod(range(k, k + n + 1)))


def partial_fraction_beta(k, n):
    """部分分式形式 Σ_{m=0}^{n} C(n,m)(-1)^m/(k+m)"""
    return sum((Fraction(comb(n, m) * (-1) ** m, k + m) for m in range(n + 1)), Fraction(0))
