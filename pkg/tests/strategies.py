"""
Hypothesis strategies for engine values
"""

from fractions import Fraction

from hypothesis import strategies as st

from qspace.coords import coordinate_system
from qspace.polyfun import PolyFun
from qspace.qscalar import LAMBDA, LAMBDA_PLUS, ONE, Q, QScalar, q_power

COEFFICIENTS = (
    ONE, -ONE, QScalar(2), QScalar(Fraction(1, 3)), Q, -q_power(Fraction(-1, 2)),
    q_power(Fraction(1, 4)), LAMBDA, ONE / LAMBDA_PLUS,
)


def coefficients():
    return st.sampled_from(COEFFICIENTS)


def laurent_scalars():
    """Sums of a few signed rational multiples of powers of q^(1/4)"""
    return st.dictionaries(st.integers(-8, 8), st.integers(-3, 3), max_size=3).map(QScalar.from_laurent)


@st.composite
def scalars(draw):
    s = draw(laurent_scalars())
    if draw(st.booleans()):
        d = draw(laurent_scalars())
        if not d.is_zero():
            s = s / d
    return s


@st.composite
def polyfuns(draw, tag='plane', max_exponent=2, max_terms=4, laurent=False):
    coords = coordinate_system(tag)
    low = -2 if laurent else 0
    exps = st.tuples(*[st.integers(low, max_exponent)] * coords.dim)
    pairs = draw(st.lists(st.tuples(exps, coefficients()), max_size=max_terms))
    return PolyFun.from_terms(coords, pairs)


def monomial(tag, *exps, c=1):
    return PolyFun.monomial(coordinate_system(tag), exps, c)
