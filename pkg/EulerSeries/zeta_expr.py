"""
ZetaExpr: 闭式结果的规范表示
Canonical closed forms: rational constant + Σ c_s·ζ(s) + optional
c·(ψ(r+1) + γ) term, with exact arithmetic, numeric evaluation, canonical
JSON and canonical text rendering.

规范形式:
- zeta系数表中不存零系数
- 整数 r 的digamma项构造时即化为 c·H_r 并入常数
- 不使用 ζ 值之间的任何关系化简 (ζ(2) = π²/6 只作为测试参照)
"""
from __future__ import annotations

import json
import logging
import numbers
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError, IncompatibleDigammaError
from .exact_core import harmonic
from .numeric import NumericResult, euler_maclaurin_sum, rounding_unit, to_mpf, working_precision

logger = logging.getLogger(__name__)


def as_rational(value):
    """把 int / Fraction / float / "p/q" 字符串精确转为 Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"expected a rational number, got {value!r}")
    if isinstance(value, (int, float, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError, OverflowError):
            raise DomainError(f"cannot read {value!r} as an exact rational") from None
    raise DomainError(f"expected a rational number, got {type(value).__name__}")


def zeta_index(s):
    """ζ(s) 的下标：须为 >= 2 的整数，"3" 或 3.0 也接受"""
    if isinstance(s, numbers.Integral) and not isinstance(s, bool):
        s = int(s)
    try:
        value = as_rational(s)
    except DomainError:
        raise DomainError(f"zeta index must be an integer (got {s!r})") from None
    if value.denominator != 1:
        raise DomainError(f"zeta index must be an integer (got {s!r})")
    if value < 2:
        raise DomainError(f"zeta(s) needs s >= 2 (got s={value})")
    return value.numerator


@dataclass(frozen=True)
class DigammaTerm:
    """c·(ψ(r+1) + γ)，r 为精确有理数且不是整数"""
    coefficient: Fraction
    argument: Fraction


@dataclass(frozen=True)
class ZetaExpr:
    """
    constant + Σ_s zeta_coeffs[s]·ζ(s) + digamma

    zeta_items 按 s 升序存放 (s, 系数)，不含零系数；用 zeta_coeffs 取得字典视图。
    """
    constant: Fraction = Fraction(0)
    zeta_items: tuple = ()
    digamma: DigammaTerm | None = None

    # ---- 构造 ----

    @classmethod
    def build(cls, constant=0, zeta_coeffs=None, digamma=None):
        """从任意输入构造并规范化"""
        items = {}
        for s, c in (zeta_coeffs or {}).items():
            s = zeta_index(s)
            items[s] = items.get(s, Fraction(0)) + as_rational(c)
        constant = as_rational(constant)
        if digamma is not None:
            folded = cls.digamma_shifted(digamma.coefficient, digamma.argument)
            constant += folded.constant
            digamma = folded.digamma
        return cls(constant=constant,
                   zeta_items=tuple(sorted((s, c) for s, c in items.items() if c != 0)),
                   digamma=digamma)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def rational(cls, value):
        return cls(constant=as_rational(value))

    @classmethod
    def zeta(cls, s, coefficient=1):
        return cls.build(zeta_coeffs={s: coefficient})

    @classmethod
    def digamma_shifted(cls, coefficient, r):
        """
        c·(ψ(r+1) + γ)

        r 为正整数 m 时 ψ(m+1) + γ = H_m，直接折叠为有理常数。
        """
        coefficient = as_rational(coefficient)
        r = as_rational(r)
        if r <= 0:
            raise DomainError(f"digamma term needs r > 0 (got r={r})")
        if coefficient == 0:
            return cls()
        if r.denominator == 1:
            return cls(constant=coefficient * harmonic(r.numerator))
        return cls(digamma=DigammaTerm(coefficient, r))

    def normalized(self):
        return ZetaExpr.build(self.constant, self.zeta_coeffs, self.digamma)

    # ---- 查询 ----

    @property
    def zeta_coeffs(self):
        return dict(self.zeta_items)

    def is_zero(self):
        return self.constant == 0 and not self.zeta_items and self.digamma is None

    def is_rational(self):
        return not self.zeta_items and self.digamma is None

    def zeta_weight(self):
        return max((s for s, _ in self.zeta_items), default=0)

    # ---- 运算 ----

    def __add__(self, other):
        if not isinstance(other, ZetaExpr):
            if isinstance(other, (int, Fraction)):
                other = ZetaExpr.rational(other)
            else:
                return NotImplemented
        return expr_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return expr_scale(self, -1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ZetaExpr.rational(other)
        if not isinstance(other, ZetaExpr):
            return NotImplemented
        return expr_add(self, expr_scale(other, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, factor):
        if isinstance(factor, (int, Fraction)) and not isinstance(factor, bool):
            return expr_scale(self, factor)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, divisor):
        if isinstance(divisor, (int, Fraction)) and not isinstance(divisor, bool):
            return expr_scale(self, 1 / Fraction(divisor))
        return NotImplemented

    def __str__(self):
        return render_text(self)


def expr_add(a, b):
    """精确相加；digamma项自变量不同则拒绝"""
    digamma = a.digamma
    if b.digamma is not None:
        if digamma is None:
            digamma = b.digamma
        elif digamma.argument != b.digamma.argument:
            raise IncompatibleDigammaError(
                f"cannot add digamma terms with different arguments r={digamma.argument} and r={b.digamma.argument}")
        else:
            coefficient = digamma.coefficient + b.digamma.coefficient
            digamma = DigammaTerm(coefficient, digamma.argument) if coefficient != 0 else None
    coeffs = a.zeta_coeffs
    for s, c in b.zeta_items:
        coeffs[s] = coeffs.get(s, Fraction(0)) + c
    return ZetaExpr.build(a.constant + b.constant, coeffs, digamma)


def expr_scale(a, c):
    """乘以有理数 c"""
    c = as_rational(c)
    if c == 0:
        return ZetaExpr.zero()
    digamma = None
    if a.digamma is not None:
        digamma = DigammaTerm(a.digamma.coefficient * c, a.digamma.argument)
    return ZetaExpr(constant=a.constant * c,
                    zeta_items=tuple((s, v * c) for s, v in a.zeta_items),
                    digamma=digamma)


def zeta_numeric(s, digits):
    """
    ζ(s), 整数 s >= 2

    直接求和 + Euler-Maclaurin尾部修正，误差界严格。
    """
    if int(s) != s or s < 2:
        raise DomainError(f"zeta_numeric needs an integer s >= 2 (got s={s})")
    if digits < 1:
        raise DomainError(f"digits must be positive (got {digits})")
    with working_precision(digits):
        value, bound = euler_maclaurin_sum(int(s), mpmath.mpf(1), digits)
        return NumericResult(+value, +bound, digits)


def expr_eval(expr, digits):
    """
    数值求值: constant + Σ c_s·ζ(s) + c_ψ·(ψ(r+1) + γ)

    误差界由各组成部分的误差界按系数绝对值累加。
    """
    with working_precision(digits):
        value = to_mpf(expr.constant)
        bound = mpmath.mpf(0)
        for s, c in expr.zeta_items:
            z = zeta_numeric(s, digits)
            coefficient = to_mpf(c)
            value += coefficient * z.value
            bound += abs(coefficient) * z.error_bound
        if expr.digamma is not None:
            # 延迟导入: NumericOracles 依赖本包
            from NumericOracles.special_functions import digamma_numeric
            psi = digamma_numeric(expr.digamma.argument + 1, digits)
            coefficient = to_mpf(expr.digamma.coefficient)
            value += coefficient * (psi.value + mpmath.euler)
            bound += abs(coefficient) * psi.error_bound
        if not (expr.is_rational() and _exact_binary(expr.constant)):
            bound += 4 * rounding_unit() * (abs(value) + 1) * (len(expr.zeta_items) + 2)
        return NumericResult(value, bound, digits)


def _exact_binary(q):
    """有理数能否在当前精度下被 mpf 精确表示"""
    d = q.denominator
    return d & (d - 1) == 0 and abs(q.numerator).bit_length() <= mpmath.mp.prec


# ---- 序列化 ----

def _fraction_text(value):
    return str(Fraction(value))


def to_dict(expr):
    return {
        "const": _fraction_text(expr.constant),
        "zeta": {str(s): _fraction_text(c) for s, c in expr.zeta_items},
        "digamma": None if expr.digamma is None else {
            "coeff": _fraction_text(expr.digamma.coefficient),
            "r": _fraction_text(expr.digamma.argument),
        },
    }


def from_dict(data):
    digamma = None
    if data.get("digamma") is not None:
        digamma = DigammaTerm(Fraction(data["digamma"]["coeff"]), Fraction(data["digamma"]["r"]))
    return ZetaExpr.build(Fraction(data["const"]),
                          {s: Fraction(c) for s, c in data.get("zeta", {}).items()},
                          digamma)


def to_json(expr):
    """规范JSON: 字段顺序固定，有理数为最简 "p/q" 字符串"""
    return json.dumps(to_dict(expr))


def from_json(text):
    return from_dict(json.loads(text))


def render_text(expr):
    """
    规范文本: ζ项按 s 降序，其后digamma项，常数最后

    例: "zeta(3) - 3/2*zeta(2) + 13/8"
    """
    terms = [(c, f"zeta({s})") for s, c in sorted(expr.zeta_items, reverse=True)]
    if expr.digamma is not None:
        terms.append((expr.digamma.coefficient, f"(psi({expr.digamma.argument + 1}) + gamma)"))
    if expr.constant != 0:
        terms.append((expr.constant, None))
    if not terms:
        return "0"

    pieces = []
    for index, (c, token) in enumerate(terms):
        magnitude = abs(c)
        if token is None:
            body = str(magnitude)
        elif magnitude == 1:
            body = token
        else:
            body = f"{magnitude}*{token}"
        if index == 0:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces)
