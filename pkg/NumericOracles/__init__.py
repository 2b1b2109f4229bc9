"""
Numeric Oracles Package
数值预言机包

与闭式推导相互独立的数值真值: 带尾部界的截断求和、多对数/Hurwitz zeta/digamma
高精度数值、积分表示的数值积分，以及闭式的交叉验证。
"""

from .quadrature import (quadrature_beta, quadrature_log_integral, quadrature_moment, quadrature_stirling_integral,
                         quadrature_weighted_moment)
from .special_functions import digamma_numeric, hurwitz_numeric, polylog_numeric
from .summation import (TailBound, convolution_floats, harmonic_floats, series_partial_sum, series_tail_bound,
                        stirling_ratio_floats)
from .verification import ACCEPTANCE_GRID, VerificationReport, run_sweep, verify

__version__ = "2.0.0"
__author__ = "Euler Series Lab"

__all__ = [
    'TailBound',
    'series_partial_sum',
    'series_tail_bound',
    'harmonic_floats',
    'convolution_floats',
    'stirling_ratio_floats',
    'polylog_numeric',
    'hurwitz_numeric',
    'digamma_numeric',
    'quadrature_moment',
    'quadrature_weighted_moment',
    'quadrature_beta',
    'quadrature_log_integral',
    'quadrature_stirling_integral',
    'verify',
    'run_sweep',
    'VerificationReport',
    'ACCEPTANCE_GRID',
]
