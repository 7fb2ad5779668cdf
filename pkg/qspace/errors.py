"""
Exception hierarchy for the qspace engine
"""

from typing import Optional


class QSpaceError(Exception):
    """Base class for all engine errors"""


class ScalarPoleError(QSpaceError):
    """Scalar evaluated at a zero of its denominator"""


class ExpressionSyntaxError(QSpaceError):
    """Malformed expression text"""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownCoordinateError(QSpaceError):
    """Coordinate label not present in the selected coordinate system"""

    def __init__(self, label: str, offset: Optional[int] = None):
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"Unknown coordinate '{label}'{where}")
        self.label = label
        self.offset = offset


class LaurentInputError(QSpaceError):
    """Negative exponents passed to a polynomial-only operation"""


class SingularExponentError(QSpaceError):
    """Formal antiderivative of an exponent -1 monomial"""


class CounitError(QSpaceError):
    """f(0) requested for a function with negative exponents"""


class RewriteError(QSpaceError):
    """Normal-ordering failure: foreign generator, guard hit or non-normal word"""


class UnsupportedSpaceError(QSpaceError):
    """Unknown space tag, or operation not available on the space"""


class DecayError(QSpaceError):
    """Infinite integration limits on a function without decay metadata"""


class ConvergenceError(QSpaceError):
    """Lattice-sum tail estimate exceeds the tolerance"""


class DivergenceError(QSpaceError):
    """Whole-line integral of a factor that is already log-periodic"""


class SeriesTerminationError(QSpaceError):
    """Inverse-derivative series did not terminate within its bound"""


class UnknownSuiteError(QSpaceError):
    """Verification suite name not registered"""
