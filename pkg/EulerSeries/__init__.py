"""
Euler Series Package
Euler型级数闭式求值包

精确有理运算、ζ值线性组合的规范表示，以及七类Euler型级数
(调和数和、Beta和、多对数矩、加权矩、调和卷积、Stirling数和) 的闭式。
"""

from .closed_forms import (Family, SeriesSpec, chi, delta, delta_integral, delta_recursive, evaluate,
                           jordan_zeta, mu, rho, sigma, tau, validate_spec, weighted_moment)
from .config import CliConfig, EvaluationSettings
from .errors import (ConfigError, DivergenceError, DomainError, EulerSeriesError, IncompatibleDigammaError,
                     RouteMismatchError)
from .exact_core import (BigRational, ConvolutionTable, HarmonicTable, StirlingTable, beta_factor, harmonic,
                         harmonic_convolution, log_power_coefficients, stirling_first)
from .numeric import NumericResult
from .zeta_expr import DigammaTerm, ZetaExpr, expr_add, expr_eval, expr_scale, render_text, zeta_numeric

__version__ = "2.0.0"
__author__ = "Euler Series Lab"

__all__ = [
    'BigRational',
    'HarmonicTable',
    'StirlingTable',
    'ConvolutionTable',
    'harmonic',
    'stirling_first',
    'harmonic_convolution',
    'log_power_coefficients',
    'beta_factor',
    'ZetaExpr',
    'DigammaTerm',
    'NumericResult',
    'expr_add',
    'expr_scale',
    'expr_eval',
    'zeta_numeric',
    'render_text',
    'Family',
    'SeriesSpec',
    'mu',
    'weighted_moment',
    'sigma',
    'delta',
    'delta_integral',
    'delta_recursive',
    'chi',
    'tau',
    'rho',
    'jordan_zeta',
    'evaluate',
    'validate_spec',
    'CliConfig',
    'EvaluationSettings',
    'EulerSeriesError',
    'DomainError',
    'DivergenceError',
    'IncompatibleDigammaError',
    'RouteMismatchError',
    'ConfigError',
]
