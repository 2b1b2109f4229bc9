"""
闭式与数值预言机的交叉验证
Verification: closed form vs truncated-sum oracle vs alternative routes
(Hurwitz zeta, quadrature), serializable reports, the built-in acceptance
grid and ordered sweeps over it.
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath

from EulerSeries.closed_forms import Family, SeriesSpec, evaluate, validate_spec
from EulerSeries.config import WEAK_BOUND_FRACTION
from EulerSeries.numeric import working_precision
from EulerSeries.zeta_expr import ZetaExpr, expr_eval, from_dict, render_text, to_dict

from .quadrature import (quadrature_log_integral, quadrature_moment, quadrature_stirling_integral,
                         quadrature_weighted_moment)
from .special_functions import hurwitz_numeric
from .summation import FLOAT_DIGITS, series_partial_sum

logger = logging.getLogger(__name__)

PASS = 'PASS'
FAIL = 'FAIL'


def _grid(family, rows):
    names = family.parameters
    return [SeriesSpec(family, **dict(zip(names, row))) for row in rows]


# `verify all` 的内置网格；与 doc/验收网格.md 同步维护
ACCEPTANCE_GRID = (
    _grid(Family.SIGMA, [(1, 1), (1, 2), (2, 1), (3, 1), (3, 2), (4, 3)])
    + _grid(Family.DELTA, [(4, 1), (1, 2), (2, 2), (3, 2), (2, 3), (1, 3), (0, 2)])
    + _grid(Family.CHI, [(1, 0, 1), (3, 0, 1), (2, 0, 2), (1, 1, 2), (2, 1, 3)])
    + _grid(Family.TAU, [(2, 2), (3, 2), (4, 2), (3, 3), (5, 3), (6, 4)])
    + _grid(Family.RHO, [(0, 1), (0, 2), (1, 2), (2, 1), (0, 3), (3, 4)])
    + _grid(Family.MU, [(1, 1), (2, 1), (2, 2), (3, 1), (2, Fraction(1, 2)), (3, Fraction(3, 2))])
    + _grid(Family.WMOMENT, [(2, 0), (1, 1), (2, 1), (3, 2)])
)


@dataclass(frozen=True)
class AltRoute:
    """独立数值路线的结果；数值以字符串保存，保证JSON往返逐字节一致"""
    name: str
    value: str
    bound: str

    def to_dict(self):
        return {"name": self.name, "value": self.value, "bound": self.bound}


@dataclass(frozen=True)
class VerificationReport:
    """
    一个级数实例的验证报告

    参数:
        spec: SeriesSpec
        closed_form: 精确闭式 ZetaExpr
        closed_value / closed_bound: 闭式的数值及误差界
        oracle_value / oracle_bound: 截断求和的数值及误差界
        alt_routes: 其余独立路线
        verdict: PASS / FAIL
        weak_bound: 预言机误差界超过 WEAK_BOUND_FRACTION·|闭式值|，PASS 几乎不说明问题
    """
    spec: SeriesSpec
    closed_form: ZetaExpr
    closed_value: str
    closed_bound: str
    oracle_value: str
    oracle_bound: str
    alt_routes: tuple = field(default=())
    verdict: str = FAIL
    weak_bound: bool = False

    @property
    def passed(self):
        return self.verdict == PASS

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "closed_form": to_dict(self.closed_form),
            "closed_value": self.closed_value,
            "closed_bound": self.closed_bound,
            "oracle_value": self.oracle_value,
            "oracle_bound": self.oracle_bound,
            "alt_routes": [route.to_dict() for route in self.alt_routes],
            "verdict": self.verdict,
            "weak_bound": self.weak_bound,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, data):
        return cls(spec=SeriesSpec.from_dict(data["spec"]),
                   closed_form=from_dict(data["closed_form"]),
                   closed_value=data["closed_value"],
                   closed_bound=data["closed_bound"],
                   oracle_value=data["oracle_value"],
                   oracle_bound=data["oracle_bound"],
                   alt_routes=tuple(AltRoute(**route) for route in data["alt_routes"]),
                   verdict=data["verdict"],
                   weak_bound=data.get("weak_bound", False))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_text(self):
        routes = ''.join(f"  {route.name}={route.value}" for route in self.alt_routes)
        weak = "  [weak bound]" if self.weak_bound else ""
        return (f"{self.verdict}  {self.spec.label()} = {render_text(self.closed_form)}  "
                f"closed={self.closed_value}  oracle={self.oracle_value} (+/- {self.oracle_bound}){routes}"
                f"{weak}")


def alternative_routes(spec, digits):
    """
    各族可用的独立数值路线 [(名字, NumericResult)]

    TAU: p!·ζ(p+1, n-p+1) 与半无穷积分；RHO: ζ(m+1, n+1) 与Stirling积分；
    MU: 矩积分；WMOMENT / DELTA / SIGMA: 加权矩积分。
    """
    n, p, m = spec.n, spec.p, spec.m
    family = spec.family
    routes = []
    if family is Family.TAU:
        routes.append(("hurwitz", hurwitz_numeric(p + 1, n - p + 1, digits).scaled(factorial(p))))
        routes.append(("quadrature", quadrature_log_integral(p, n, digits)))
    elif family is Family.RHO:
        routes.append(("hurwitz", hurwitz_numeric(m + 1, n + 1, digits)))
        routes.append(("quadrature", quadrature_stirling_integral(m, n, digits)))
    elif family is Family.MU:
        routes.append(("quadrature", quadrature_moment(p, spec.r, digits)))
    elif family is Family.WMOMENT:
        routes.append(("quadrature", quadrature_weighted_moment(p, m, digits)))
    elif family is Family.DELTA:
        if n == 0:
            routes.append(("hurwitz", hurwitz_numeric(p, 1, digits)))
        else:
            routes.append(("quadrature", quadrature_weighted_moment(p, n - 1, digits).scaled(n)))
    elif family is Family.SIGMA:
        if n == 1:
            routes.append(("hurwitz", hurwitz_numeric(p + 1, 1, digits)))
        else:
            routes.append(("quadrature", quadrature_weighted_moment(p + 1, n - 2, digits).scaled(n - 1)))
    return routes


def _number(value, digits):
    return mpmath.nstr(value, digits)


def _is_weak(closed, oracle):
    with working_precision(FLOAT_DIGITS):
        return bool(oracle.error_bound > WEAK_BOUND_FRACTION * abs(closed.value))


def verify(spec, k_max, digits, settings=None):
    """
    闭式 vs 截断求和 (vs 其他路线)

    参数:
        spec: SeriesSpec
        k_max: 截断求和的项数上限
        digits: 闭式求值的有效位数
        settings: EvaluationSettings (δ 路线)

    返回:
        VerificationReport；所有路线都与闭式在误差界之和内一致时为 PASS
    """
    validate_spec(spec)
    expr = evaluate(spec, settings)
    closed = expr_eval(expr, digits)
    oracle = series_partial_sum(spec, k_max)
    routes = alternative_routes(spec, digits)

    weak_bound = _is_weak(closed, oracle)
    if weak_bound:
        logger.warning("%s: oracle bound %s is weak against closed value %s (k_max=%d)",
                       spec.label(), mpmath.nstr(oracle.error_bound, 3), mpmath.nstr(closed.value, 10), k_max)

    agreements = [closed.agrees_with(oracle)] + [closed.agrees_with(result) for _, result in routes]
    verdict = PASS if all(agreements) else FAIL
    if verdict == FAIL:
        logger.warning("%s failed verification: closed %s, oracle %s, routes %s",
                       spec.label(), closed, oracle, [(name, str(result)) for name, result in routes])

    with working_precision(digits):
        report = VerificationReport(
            spec=spec,
            closed_form=expr,
            closed_value=_number(closed.value, digits),
            closed_bound=_number(closed.error_bound, 3),
            oracle_value=_number(oracle.value, FLOAT_DIGITS + 2),
            oracle_bound=_number(oracle.error_bound, 3),
            alt_routes=tuple(AltRoute(name, _number(result.value, FLOAT_DIGITS + 2), _number(result.error_bound, 3))
                             for name, result in routes),
            verdict=verdict,
            weak_bound=weak_bound,
        )
    logger.debug("verified %s: %s", spec.label(), verdict)
    return report


def run_sweep(specs, k_max, digits, jobs=1, fail_fast=False, settings=None):
    """
    批量验证，结果顺序与输入顺序一致

    fail_fast 时顺序执行并在首个 FAIL 后停止；否则 jobs > 1 时用线程池并行。
    """
    specs = list(specs)
    if fail_fast or jobs <= 1:
        reports = []
        for spec in specs:
            report = verify(spec, k_max, digits, settings)
            reports.append(report)
            if fail_fast and not report.passed:
                logger.info("stopping after first failure: %s", spec.label())
                break
        return reports
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda spec: verify(spec, k_max, digits, settings), specs))
