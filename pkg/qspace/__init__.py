"""
q-deformed analysis on quantum spaces: exact symbolic algebra over Q(q)
and numeric Jackson integration
"""

from .config import EngineParams, IntegralParams
from .coords import coordinate_system
from .errors import QSpaceError
from .expression import parse_expression, render_polyfun
from .polyfun import PolyFun, TensorPolyFun
from .qscalar import QScalar

__version__ = "0.1.0"

__all__ = [
    'EngineParams', 'IntegralParams', 'PolyFun', 'QScalar', 'QSpaceError', 'TensorPolyFun',
    'coordinate_system', 'parse_expression', 'render_polyfun',
]
