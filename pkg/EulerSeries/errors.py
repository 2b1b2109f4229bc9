"""
异常类型
Exception hierarchy shared by EulerSeries and NumericOracles
"""


class EulerSeriesError(Exception):
    """所有库内异常的基类"""


class DomainError(EulerSeriesError, ValueError):
    """参数不满足运算的前置条件"""


class DivergenceError(DomainError):
    """给定参数下级数发散，没有有意义的闭式"""


class IncompatibleDigammaError(EulerSeriesError):
    """两个ZetaExpr的digamma项自变量不同，无法合并"""


class RouteMismatchError(EulerSeriesError):
    """δ的两条独立推导路线给出不同结果（实现缺陷）"""


class ConfigError(DomainError):
    """配置值无效 (CLI参数或环境变量)"""
