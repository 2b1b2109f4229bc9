"""
Euler型级数的闭式求值
Closed-form evaluators for the polylogarithm moments μ(p; r), the weighted
moments ∫(1-x)^m Li_p(x) dx and the five series σ, δ, χ, τ, ρ.

所有结果都是精确的 ZetaExpr。δ 有两条独立推导:
- delta_integral: Beta积分 + 多对数矩
- delta_recursive: δ_n(p) = δ_{n-1}(p) - δ_n(p-1)/n，从 δ_n(1) = 1/n 与 δ_0(p) = ζ(p) 出发
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .config import EvaluationSettings
from .errors import DivergenceError, DomainError, RouteMismatchError
from .exact_core import harmonic
from .zeta_expr import ZetaExpr, as_rational, render_text

logger = logging.getLogger(__name__)


class Family(Enum):
    """级数族；value 即命令行中的名字"""
    SIGMA = 'sigma'
    DELTA = 'delta'
    CHI = 'chi'
    TAU = 'tau'
    RHO = 'rho'
    MU = 'mu'
    WMOMENT = 'wmoment'

    @property
    def parameters(self):
        return _FAMILY_PARAMETERS[self]

    @classmethod
    def parse(cls, name):
        try:
            return cls(str(name).lower())
        except ValueError:
            names = ', '.join(f.value for f in cls)
            raise DomainError(f"unknown family {name!r} (expected one of {names})") from None


_FAMILY_PARAMETERS = {
    Family.SIGMA: ('n', 'p'),
    Family.DELTA: ('n', 'p'),
    Family.CHI: ('p', 'n', 'm'),
    Family.TAU: ('n', 'p'),
    Family.RHO: ('n', 'm'),
    Family.MU: ('p', 'r'),
    Family.WMOMENT: ('p', 'm'),
}

_DICT_ORDER = ('n', 'p', 'm', 'r')


@dataclass(frozen=True)
class SeriesSpec:
    """
    一个级数实例

    参数:
        family: 级数族
        n, p, m: 整数参数 (按族取用)
        r: 正实数参数，仅 MU 使用，以精确有理数保存
    """
    family: Family
    n: int = 0
    p: int = 1
    m: int = 0
    r: Fraction | None = None

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, 'family', Family.parse(self.family))
        for name in ('n', 'p', 'm'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"{self.family.value}: {name} must be an integer (got {value!r})")
            object.__setattr__(self, name, int(value))
        if self.r is not None:
            object.__setattr__(self, 'r', as_rational(self.r))
        if self.family is Family.MU and self.r is None:
            raise DomainError("mu: parameter r is required")

    def params(self):
        """族相关参数，按族的参数顺序"""
        return {name: getattr(self, name) for name in self.family.parameters}

    def label(self):
        inner = ', '.join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.family.value}({inner})"

    def first_index(self):
        """级数的首个求和下标"""
        if self.family is Family.TAU:
            return self.p
        if self.family is Family.RHO:
            return self.m
        return 1

    def to_dict(self):
        data = {"family": self.family.value}
        relevant = self.family.parameters
        for name in _DICT_ORDER:
            if name in relevant:
                value = getattr(self, name)
                data[name] = str(value) if name == 'r' else value
        return data

    @classmethod
    def from_dict(cls, data):
        params = {k: data[k] for k in _DICT_ORDER if k in data}
        if 'r' in params:
            params['r'] = Fraction(params['r'])
        return cls(Family.parse(data["family"]), **params)


# ---- 定义域检查 ----

def _check_positive(name, value, minimum=1):
    if value < minimum:
        raise DomainError(f"requires {name} >= {minimum} (got {name}={value})")


def _check_mu(p, r):
    _check_positive('p', p)
    if r <= 0:
        raise DomainError(f"requires r > 0, the moment integral diverges otherwise (got r={r})")


def _check_sigma(n, p):
    _check_positive('p', p)
    if n < 1:
        raise DivergenceError(f"requires n >= 1, the series diverges for n={n}")


def _check_delta(n, p):
    _check_positive('p', p)
    if n < 0 or n + p < 2:
        raise DivergenceError(f"requires n >= 0 and n + p >= 2, the series diverges for n={n}, p={p}")


def _check_chi(p, n, m):
    _check_positive('p', p)
    if n < 0 or m <= n:
        raise DomainError(f"requires m > n >= 0 (got n={n}, m={m})")


def _check_tau(n, p):
    _check_positive('p', p, 2)
    if n < p:
        raise DivergenceError(f"requires n >= p, the series diverges for n={n} < p={p}")


def _check_rho(n, m):
    _check_positive('m', m)
    if n < 0:
        raise DomainError(f"requires n >= 0 (got n={n})")


def _check_wmoment(p, m):
    _check_positive('p', p)
    if m < 0:
        raise DomainError(f"requires m >= 0 (got m={m})")


def validate_spec(spec):
    """参数不在定义域内时抛出 DomainError / DivergenceError (消息带族名)"""
    checks = {
        Family.SIGMA: lambda s: _check_sigma(s.n, s.p),
        Family.DELTA: lambda s: _check_delta(s.n, s.p),
        Family.CHI: lambda s: _check_chi(s.p, s.n, s.m),
        Family.TAU: lambda s: _check_tau(s.n, s.p),
        Family.RHO: lambda s: _check_rho(s.n, s.m),
        Family.MU: lambda s: _check_mu(s.p, s.r),
        Family.WMOMENT: lambda s: _check_wmoment(s.p, s.m),
    }
    try:
        checks[spec.family](spec)
    except DomainError as err:
        raise type(err)(f"{spec.family.value}: {err}") from None
    return spec


# ---- 多对数矩 ----

@lru_cache(maxsize=1024)
def _mu_cached(p, r):
    expr = ZetaExpr.zero()
    for k in range(1, p):
        expr += ZetaExpr.zeta(p - k + 1, Fraction((-1) ** (k - 1)) / r ** k)
    return expr + ZetaExpr.digamma_shifted(Fraction((-1) ** (p - 1)) / r ** p, r)


def mu(p, r):
    """
    μ(p; r) = ∫_0^1 x^(r-1) Li_p(x) dx = Σ 1/(n^p (n+r))

    = Σ_{k=1}^{p-1} (-1)^(k-1) ζ(p-k+1)/r^k + (-1)^(p-1) (ψ(r+1) + γ)/r^p
    整数 r = m 时 ψ(m+1) + γ 化为 H_m。
    """
    r = as_rational(r)
    _check_mu(p, r)
    return _mu_cached(p, r)


def weighted_moment(p, m):
    """∫_0^1 (1-x)^m Li_p(x) dx = Σ_j C(m,j)(-1)^j μ(p; j+1)"""
    _check_wmoment(p, m)
    return sum((mu(p, j + 1) * (comb(m, j) * (-1) ** j) for j in range(m + 1)), ZetaExpr.zero())


# ---- 五个级数 ----

def sigma(n, p):
    """
    σ_n(p) = n! Σ H_k^(p)/(k(k+1)…(k+n))

    n >= 2: (n-1) Σ_{j=0}^{n-2} C(n-2,j)(-1)^j μ(p+1; j+1)；n = 1: ζ(p+1)
    """
    _check_sigma(n, p)
    if n == 1:
        return ZetaExpr.zeta(p + 1)
    return weighted_moment(p + 1, n - 2) * (n - 1)


def delta_integral(n, p):
    """δ_n(p) = n Σ_{j=0}^{n-1} C(n-1,j)(-1)^j μ(p; j+1)，n >= 1, p >= 2"""
    _check_positive('n', n)
    if p < 2:
        raise DomainError(f"the integral route requires p >= 2 (got p={p}); use delta_recursive")
    return weighted_moment(p, n - 1) * n


@lru_cache(maxsize=256)
def delta_recursive(n, p):
    """
    δ_n(p) 递推求值

    δ_n(p) = δ_{n-1}(p) - δ_n(p-1)/n，起点 δ_n(1) = 1/n (n >= 1) 与 δ_0(p) = ζ(p) (p >= 2)。
    """
    _check_delta(n, p)
    # row[i] = δ_i(q)，q = 1 时 i = 0 发散，不会被 q >= 2 的递推用到
    row = [None] + [ZetaExpr.rational(Fraction(1, i)) for i in range(1, n + 1)]
    for q in range(2, p + 1):
        nxt = [ZetaExpr.zeta(q)]
        for i in range(1, n + 1):
            nxt.append(nxt[i - 1] - row[i] / i)
        row = nxt
    return row[n]


def delta(n, p, settings=None):
    """按配置选择路线求 δ_n(p)；两条路线都适用且开启比对时断言二者一致"""
    settings = settings or EvaluationSettings()
    _check_delta(n, p)
    integral_applies = n >= 1 and p >= 2
    if settings.delta_route == 'integral' and integral_applies:
        result = delta_integral(n, p)
    else:
        result = delta_recursive(n, p)
    if settings.cross_check and integral_applies:
        other = delta_recursive(n, p) if settings.delta_route == 'integral' else delta_integral(n, p)
        if other != result:
            raise RouteMismatchError(
                f"delta(n={n}, p={p}): recursive and integral routes disagree: "
                f"{render_text(result)} vs {render_text(other)}")
        logger.debug("delta(n=%d, p=%d) cross-checked: %s", n, p, render_text(result))
    return result


def chi(p, n, m):
    """
    χ(p; n, m) = Σ H_k^(p)/((k+n)(k+m))

    = ζ(p+1) - (1/(m-n)) Σ_{j=n}^{m-1} j μ(p+1; j)，j = 0 的项为零
    """
    _check_chi(p, n, m)
    inner = sum((mu(p + 1, j) * j for j in range(max(n, 1), m)), ZetaExpr.zero())
    return ZetaExpr.zeta(p + 1) - inner / (m - n)


def chi_expanded_k_k2(p):
    """
    χ(p; 0, 2) 的展开交错形式

    ½[ζ(p+1) + ζ(p) - ζ(p-1) + … + (-1)^p ζ(2) + (-1)^(p+1)]
    """
    _check_positive('p', p)
    expr = ZetaExpr.zeta(p + 1, Fraction(1, 2))
    for i in range(1, p):
        expr += ZetaExpr.zeta(p + 1 - i, Fraction((-1) ** (i + 1), 2))
    return expr + Fraction((-1) ** (p + 1), 2)


def tau(n, p):
    """τ_n(p) = p! (ζ(p+1) - H_{n-p}^(p+1))，n >= p >= 2"""
    _check_tau(n, p)
    return (ZetaExpr.zeta(p + 1) - harmonic(n - p, p + 1)) * factorial(p)


def rho(n, m):
    """ρ_n(m) = ζ(m+1) - H_n^(m+1) = ζ(m+1, n+1)"""
    _check_rho(n, m)
    return ZetaExpr.zeta(m + 1) - harmonic(n, m + 1)


def jordan_zeta(m):
    """ζ(m+1) = Σ_{k>=m} [k over m]/(k!·k)，即 ρ_0(m)"""
    return rho(0, m)


def evaluate(spec, settings=None):
    """
    按族分派到对应的闭式

    参数:
        spec: SeriesSpec
        settings: EvaluationSettings (δ 路线与交叉核对)

    返回:
        ZetaExpr
    """
    validate_spec(spec)
    dispatch = {
        Family.SIGMA: lambda s: sigma(s.n, s.p),
        Family.DELTA: lambda s: delta(s.n, s.p, settings),
        Family.CHI: lambda s: chi(s.p, s.n, s.m),
        Family.TAU: lambda s: tau(s.n, s.p),
        Family.RHO: lambda s: rho(s.n, s.m),
        Family.MU: lambda s: mu(s.p, s.r),
        Family.WMOMENT: lambda s: weighted_moment(s.p, s.m),
    }
    try:
        return dispatch[spec.family](spec)
    except DomainError as err:
        raise type(err)(f"{spec.family.value}: {err}") from None
