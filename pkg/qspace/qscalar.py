"""
Exact q-dependent coefficients.

Values live in the rational function field Q(t) with t = q^(1/4), so every
coefficient the engine meets (q^(±1/2), q^(±1/4), lambda = q - 1/q,
lambda_+ = q + 1/q, q-numbers and their quotients) is represented exactly.
Each value is kept reduced with a monic denominator, which makes equality
a structural comparison.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.fields import field

from .errors import ScalarPoleError

logger = logging.getLogger(__name__)

FIELD, _T = field("t", QQ)
_RING = FIELD.ring
FIELD_DOMAIN = FIELD.to_domain()

Rational = Union[int, Fraction]


def _qq(value: Rational):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _normalize(v):
    """Reduce and make the denominator monic"""
    numer, denom = v.numer.cancel(v.denom)
    lc = denom.LC
    if lc != QQ.one:
        inv = QQ.one / lc
        numer = numer.mul_ground(inv)
        denom = denom.mul_ground(inv)
    return FIELD.raw_new(numer, denom)


class QScalar:
    """Immutable element of Q(t), t**4 = q"""

    __slots__ = ("_v",)

    def __init__(self, value: Union["QScalar", Rational] = 0):
        if isinstance(value, QScalar):
            self._v = value._v
        elif isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            self._v = FIELD.ground_new(_qq(value))
        else:
            raise TypeError(f"Cannot build a QScalar from {type(value).__name__}")

    @classmethod
    def _wrap(cls, v, normalized: bool = False) -> "QScalar":
        obj = cls.__new__(cls)
        obj._v = v if normalized else _normalize(v)
        return obj

    @classmethod
    def from_laurent(cls, terms: Dict[int, Rational]) -> "QScalar":
        """Build sum c * t**e from {e: c}, e may be negative"""
        terms = {e: Fraction(c) for e, c in terms.items() if c}
        if not terms:
            return cls._wrap(FIELD.zero, normalized=True)
        shift = max(0, -min(terms))
        numer = _RING.from_dict({(e + shift,): _qq(c) for e, c in terms.items()})
        denom = _RING.from_dict({(shift,): QQ.one})
        return cls._wrap(FIELD.raw_new(numer, denom), normalized=True)

    # -- structure -------------------------------------------------------

    def numerator_terms(self) -> Dict[int, Fraction]:
        return {m[0]: _fraction(c) for m, c in self._v.numer.items()}

    def denominator_terms(self) -> Dict[int, Fraction]:
        return {m[0]: _fraction(c) for m, c in self._v.denom.items()}

    def laurent_terms(self) -> Optional[Dict[int, Fraction]]:
        """{t-exponent: coefficient} when the value is a Laurent polynomial in t"""
        denom = self._v.denom
        if len(denom) != 1:
            return None
        (shift,), lc = next(iter(denom.items()))
        scale = _fraction(lc)
        return {m[0] - shift: _fraction(c) / scale for m, c in self._v.numer.items()}

    def to_domain_element(self):
        """The underlying element of FIELD_DOMAIN, for exact linear algebra"""
        return self._v

    @classmethod
    def from_domain_element(cls, v) -> "QScalar":
        return cls._wrap(v)

    def is_zero(self) -> bool:
        return not self._v

    def invert_q(self) -> "QScalar":
        """Substitute q -> 1/q"""
        num = sum((_fraction(c) * _tpow(-m[0]) for m, c in self._v.numer.items()), ZERO)
        den = sum((_fraction(c) * _tpow(-m[0]) for m, c in self._v.denom.items()), ZERO)
        return num / den

    def evaluate(self, q0: float) -> float:
        """Double-precision value at q = q0"""
        if not q0 > 0:
            raise ValueError(f"q must be positive, got {q0}")
        den = _eval_poly(self._v.denom, q0)
        if den == 0.0:
            raise ScalarPoleError(f"{render_scalar(self)} has a pole at q = {q0}")
        return _eval_poly(self._v.numer, q0) / den

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["QScalar"]:
        if isinstance(other, QScalar):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QScalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QScalar._wrap(self._v + other._v)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QScalar._wrap(self._v - other._v)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QScalar._wrap(other._v - self._v)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QScalar._wrap(self._v * other._v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return QScalar._wrap(self._v / other._v)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return QScalar._wrap(-self._v, normalized=True)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n >= 0:
            return QScalar._wrap(self._v ** n)
        if self.is_zero():
            raise ZeroDivisionError("negative power of the zero scalar")
        return QScalar._wrap(FIELD.one / self._v ** (-n))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._v == other._v

    def __hash__(self):
        return hash(self._v)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"QScalar({render_scalar(self)!r})"

    def __str__(self):
        return render_scalar(self)


def _eval_poly(poly, q0: float) -> float:
    return math.fsum(float(c) * q0 ** (m[0] / 4) for m, c in poly.items())


def _tpow(e: int) -> QScalar:
    return QScalar.from_laurent({e: 1})


def q_power(a: Rational) -> QScalar:
    """q**a for rational a with 4a integral"""
    e = Fraction(a) * 4
    if e.denominator != 1:
        raise ValueError(f"q^{a} is not a power of q^(1/4)")
    return _tpow(int(e))


ZERO = QScalar(0)
ONE = QScalar(1)
Q = q_power(1)
Q_HALF = q_power(Fraction(1, 2))
LAMBDA = Q - q_power(-1)
LAMBDA_PLUS = Q + q_power(-1)


@lru_cache(maxsize=None)
def qnum(n: int, a: int) -> QScalar:
    """[[n]]_{q^a}, expanded; negative n gives -(q^-a + ... + q^(an))"""
    if a == 0:
        raise ValueError("q-number base exponent must be nonzero")
    if n >= 0:
        return QScalar.from_laurent(_count(4 * a * k for k in range(n)))
    return -QScalar.from_laurent(_count(-4 * a * k for k in range(1, -n + 1)))


@lru_cache(maxsize=None)
def qfact(n: int, a: int) -> QScalar:
    """[[n]]_{q^a}! = [[1]]...[[n]], qfact(0) = 1"""
    if n < 0:
        raise ValueError(f"q-factorial of negative n = {n}")
    if n == 0:
        return ONE
    return qfact(n - 1, a) * qnum(n, a)


def _count(exps) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for e in exps:
        counts[e] = counts.get(e, 0) + 1
    return counts


def eval_scalar(s: QScalar, q0: float) -> float:
    return s.evaluate(q0)


# -- text form -------------------------------------------------------------

def _power_text(k: Fraction) -> str:
    if k == 1:
        return "q"
    if k.denominator == 1 and k > 0:
        return f"q^{k}"
    return f"q^({k})"


def signed_terms(terms: Dict[int, Fraction]) -> Tuple[Tuple[bool, str], ...]:
    """(negative, body) pairs for a Laurent polynomial in t, ascending powers of q"""
    out = []
    for e in sorted(terms):
        c = terms[e]
        k = Fraction(e, 4)
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = _power_text(k)
        else:
            body = f"{mag}*{_power_text(k)}"
        out.append((c < 0, body))
    return tuple(out)


def join_terms(pieces) -> str:
    if not pieces:
        return "0"
    text = ""
    for idx, (negative, body) in enumerate(pieces):
        if idx == 0:
            text = f"-{body}" if negative else body
        else:
            text += f" - {body}" if negative else f" + {body}"
    return text


def render_scalar(s: QScalar) -> str:
    """Text form, e.g. `q^(-1/2)`, `1 + q^2`, `(1)/(1 + q^2)`"""
    laurent = s.laurent_terms()
    if laurent is not None:
        return join_terms(signed_terms(laurent))
    num = join_terms(signed_terms(s.numerator_terms()))
    den = join_terms(signed_terms(s.denominator_terms()))
    return f"({num})/({den})"
