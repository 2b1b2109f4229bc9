"""
全局配置
Defaults, environment variables and the CLI configuration record
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import ConfigError

# 数值精度
DEFAULT_DIGITS = 50
GUARD_DIGITS = 10

# 级数截断
DEFAULT_K_MAX = 100_000
TAIL_SAFETY_FACTOR = 2
# 预言机误差界超过 |闭式值| 的这一比例时记 WARNING，报告标为 weak_bound
WEAK_BOUND_FRACTION = 1e-3

# 精确表的上限 (Stirling整数位数 ~ k log k, H_k分母 ~ e^k)
STIRLING_EXACT_CAP = 200
CONVOLUTION_EXACT_CAP = 200

# 积分在 x -> 1 处的截断宽度
QUADRATURE_EPSILON = 1e-12

OUTPUT_FORMATS = ('text', 'json', 'csv')
DELTA_ROUTES = ('recursive', 'integral')

ENV_DIGITS = 'EULER_SERIES_DIGITS'
ENV_K_MAX = 'EULER_SERIES_KMAX'
ENV_DELTA_ROUTE = 'EULER_SERIES_DELTA_ROUTE'
ENV_CROSS_CHECK = 'EULER_SERIES_CROSS_CHECK'


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer (got {raw!r})") from None


@dataclass(frozen=True)
class CliConfig:
    """
    命令行配置

    参数:
        digits: 有效数字位数 (>= 10)
        k_max: 数值验证的截断项数 (>= 10)
        format: 输出格式 text / json / csv
        fail_fast: 首个FAIL后停止
        jobs: 并行验证的线程数
    """
    digits: int = DEFAULT_DIGITS
    k_max: int = DEFAULT_K_MAX
    format: str = 'text'
    fail_fast: bool = False
    jobs: int = 1

    def validate(self):
        if self.digits < 10:
            raise ConfigError(f"digits must be >= 10 (got {self.digits})")
        if self.k_max < 10:
            raise ConfigError(f"kmax must be >= 10 (got {self.k_max})")
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be one of {', '.join(OUTPUT_FORMATS)} (got {self.format!r})")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1 (got {self.jobs})")
        return self

    @classmethod
    def from_env(cls, **overrides):
        """环境变量提供默认值，显式参数覆盖之"""
        base = cls(digits=_env_int(ENV_DIGITS, DEFAULT_DIGITS),
                   k_max=_env_int(ENV_K_MAX, DEFAULT_K_MAX))
        overrides = {key: value for key, value in overrides.items() if value is not None}
        return replace(base, **overrides).validate()


@dataclass(frozen=True)
class EvaluationSettings:
    """
    δ的求值路线

    参数:
        delta_route: 'recursive' (递推, 覆盖p=1) 或 'integral' (Beta积分)
        cross_check: 两条路线都适用时是否比对
    """
    delta_route: str = 'recursive'
    cross_check: bool = True

    def __post_init__(self):
        if self.delta_route not in DELTA_ROUTES:
            raise ConfigError(f"delta route must be one of {', '.join(DELTA_ROUTES)} (got {self.delta_route!r})")

    @classmethod
    def from_env(cls):
        route = os.environ.get(ENV_DELTA_ROUTE, 'recursive').strip() or 'recursive'
        cross_check = os.environ.get(ENV_CROSS_CHECK, '1').strip() not in ('0', 'false', 'no')
        return cls(delta_route=route, cross_check=cross_check)
