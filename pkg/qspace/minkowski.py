"""
Integration on q-deformed Minkowski space in the coordinates (r2, xp, x30, xm).

r2 is an independent fourth coordinate; no relation to the quadratic form
is imposed.  The four conjugate-left derivatives are operator pipelines
split into an invertible leading part and a correction; their inverses are
the series  sum_k (-1)^k [cl^-1 cor]^k cl^-1.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .config import IntegralParams
from .coords import CoordinateSystem, coordinate_system
from .errors import SeriesTerminationError, UnsupportedSpaceError
from .manin import invert_single
from .operators import JacksonD, JacksonInverse, MulMonomial, Operator, Scale
from .polyfun import PolyFun, jackson_d, scale_coord, weight_by
from .qint import IntegralResult, LatticeFun, integrate_operator, numeric_operator_apply
from .qscalar import FIELD_DOMAIN, LAMBDA, LAMBDA_PLUS, ONE, QScalar, q_power, qfact

logger = logging.getLogger(__name__)

R2, XP, X30, XM = range(4)
DIRECTIONS = ('3', '+', '-', '2')
MODES = ('closed_form', 'nested_series', 'main_text')
NESTING_ORDERS = ('standard', 'definition')

# degree weights: r2 counts twice
WEIGHTS = (2, 1, 1, 1)

# the inverse coefficients (-q^-1)(1)(-q)(q^-1 l+^-3) multiply to +q^-1 l+^-3,
# the closed-form volume pipeline carries -q^-1 l+^-3
NESTED_SIGN = -1

CLOSURE_LIMIT = 4000


def minkowski() -> CoordinateSystem:
    return coordinate_system('minkowski_radial')


def _require_minkowski(f: PolyFun):
    if f.coords.tag != 'minkowski_radial':
        raise UnsupportedSpaceError(f"Minkowski operators act on minkowski_radial, not {f.coords.tag}")


def _direction(which) -> str:
    which = str(which)
    if which not in DIRECTIONS:
        raise ValueError(f"unknown Minkowski direction {which!r}, expected one of {DIRECTIONS}")
    return which


def _D(coord: int) -> JacksonD:
    return JacksonD(coord, 2)


def _S(coord: int, a: int = 2) -> Scale:
    return Scale(coord, Fraction(a))


def _x(r2: int = 0, xp: int = 0, x30: int = 0, xm: int = 0) -> MulMonomial:
    return MulMonomial((r2, xp, x30, xm))


def _op(coeff, *ops) -> Operator:
    return Operator.of(*ops, coeff=coeff)


@lru_cache(maxsize=None)
def summands(which) -> Tuple[Operator, ...]:
    """Displayed summands of the derivative, leading (invertible) part first"""
    which = _direction(which)
    q = q_power
    lp = LAMBDA_PLUS
    if which == '3':
        return (
            _op(ONE, _D(X30), _S(R2)),
            _op(q(-1) * lp, _x(x30=1), _D(R2), _S(XP)),
            _op(-q(-2), _x(r2=1, x30=-1), _D(R2)) + _op(-q(-4), _x(x30=1), _D(R2)),
            _op(q(-2) * lp, _x(xp=1, x30=-1, xm=1), _D(R2), _S(X30)),
            _op(-q(1) / lp * LAMBDA, _x(x30=1), _D(XP), _D(XM), _S(R2)),
        )
    if which == '+':
        return (
            _op(-q(1), _D(XM), _S(R2)),
            _op(q(-1) * lp, _x(xp=1), _D(R2)),
        )
    if which == '-':
        return (
            _op(-q(-1), _D(XP)),
            _op(q(-1) * lp, _x(xm=1), _D(R2), _S(XP), _S(X30)),
            _op(q(-2) * LAMBDA, _x(x30=2), _D(XP), _D(R2), _S(XP), _S(XM)),
            _op(-q(-1) * LAMBDA ** 2, _x(x30=2, xm=1), _D(XP), _D(XM), _D(R2), _S(XP)),
        )
    c = (q(-1) * lp) ** 2
    return (
        _op(q(1) * lp ** 3, _D(R2), _S(XP), _S(X30), _S(XM)),
        _op(q(3) * lp ** 3, _x(r2=1), _D(R2), _D(R2), _S(XP), _S(X30), _S(XM)),
        _op(c, _x(xm=1), _D(XM), _D(R2), _S(XP), _S(X30)),
        _op(c, _x(x30=1), _D(X30), _D(R2), _S(XP)),
        _op(-lp, _D(XP), _D(XM), _S(R2)),
        _op(c, _x(xp=1), _D(XP), _D(R2)),
    )


def leading_part(which) -> Operator:
    return summands(which)[0]


@lru_cache(maxsize=None)
def correction_part(which) -> Operator:
    total = Operator.zero()
    for part in summands(which)[1:]:
        total = total + part
    return total


@lru_cache(maxsize=None)
def deriv_operator(which) -> Operator:
    return leading_part(which) + correction_part(which)


@lru_cache(maxsize=None)
def leading_inverse(which) -> Operator:
    return invert_single(leading_part(which))


@lru_cache(maxsize=None)
def _series_step(which) -> Operator:
    """-cl^-1 cor"""
    return -(leading_inverse(which) @ correction_part(which))


@lru_cache(maxsize=None)
def inverse_operator_series(which, order: int = 2, reduced: bool = True) -> Operator:
    """Partial sum of the inverse series through k = order, as a pipeline.

    With `reduced` every partial product drops the terms that vanish under
    whole-line integration.
    """
    which = _direction(which)
    step = _series_step(which)
    term = leading_inverse(which)
    total = term
    for _ in range(order):
        term = step @ term
        if reduced:
            term = term.whole_line_reduced(4)
        total = total + term
    return total


def mink_deriv(f: Union[PolyFun, LatticeFun], which, params: Optional[IntegralParams] = None):
    """Conjugate-left derivative in direction which, symbolic or numeric"""
    op = deriv_operator(_direction(which))
    if isinstance(f, LatticeFun):
        return numeric_operator_apply(op, f, params or IntegralParams())
    _require_minkowski(f)
    return op.apply(f)


# -- symbolic inverse --------------------------------------------------------

@dataclass(frozen=True)
class SeriesResult:
    value: PolyFun
    order: int
    resummed: bool = False


def weighted_degree(f: PolyFun) -> int:
    return max((sum(w * e for w, e in zip(WEIGHTS, exps)) for exps in f.terms), default=0)


def mink_inverse_series(f: PolyFun, which, resum: bool = True) -> SeriesResult:
    """Formal inverse of the derivative in direction which.

    The series is summed while it terminates within k <= weighted degree + 1.
    A nonterminating series is resummed exactly by solving (1 + A) g = cl^-1 f
    on the span of monomials reachable under A = cl^-1 cor.
    """
    _require_minkowski(f)
    which = _direction(which)
    cl_inv = leading_inverse(which)
    step = _series_step(which)
    seed = cl_inv.apply(f)
    guard = weighted_degree(f) + 1
    total, term, k = seed, seed, 0
    while not term.is_zero() and k <= guard:
        term = step.apply(term)
        if term.is_zero():
            break
        k += 1
        total = total + term
    if term.is_zero():
        logger.debug(f"Inverse series in direction {which} terminated at k = {k}")
        return SeriesResult(total, k)
    if not resum:
        raise SeriesTerminationError(f"inverse series in direction {which} still running at k = {k}")
    logger.warning(f"Inverse series in direction {which} does not terminate by k = {k}; resumming exactly")
    value = _resum(seed, lambda g: -step.apply(g), which)
    if mink_deriv(value, which) != f:
        raise SeriesTerminationError(f"resummed inverse in direction {which} fails the round trip")
    return SeriesResult(value, k, resummed=True)


def _resum(seed: PolyFun, a_map, which: str) -> PolyFun:
    coords = seed.coords
    basis: List[Tuple[int, ...]] = sorted(seed.terms)
    index: Dict[Tuple[int, ...], int] = {m: i for i, m in enumerate(basis)}
    images: List[PolyFun] = []
    pos = 0
    while pos < len(basis):
        image = a_map(PolyFun.monomial(coords, basis[pos]))
        images.append(image)
        for m in sorted(image.terms):
            if m not in index:
                index[m] = len(basis)
                basis.append(m)
        if len(basis) > CLOSURE_LIMIT:
            raise SeriesTerminationError(f"inverse series in direction {which} reaches too many monomials")
        pos += 1

    n = len(basis)
    K = FIELD_DOMAIN
    rows = [[K.zero] * n for _ in range(n)]
    for j, image in enumerate(images):
        rows[j][j] = K.one
        for m, c in image.terms.items():
            rows[index[m]][j] = rows[index[m]][j] + c.to_domain_element()
    rhs = [[seed.coefficient(m).to_domain_element()] for m in basis]
    try:
        solution = DomainMatrix(rows, (n, n), K).lu_solve(DomainMatrix(rhs, (n, 1), K))
    except DMNonInvertibleMatrixError as e:
        raise SeriesTerminationError(f"inverse series in direction {which} cannot be resummed") from e
    logger.debug(f"Resummed inverse series in direction {which} on {n} monomials")
    values = solution.to_list()
    return PolyFun.from_terms(coords, ((m, QScalar.from_domain_element(values[i][0])) for i, m in enumerate(basis)))


def mink_deriv_inverse(f: Union[PolyFun, LatticeFun], which, limits: str = 'formal',
                       params: Optional[IntegralParams] = None, series_order: int = 2,
                       resum: bool = True):
    """Inverse derivative: formal series on PolyFun, whole-line pipeline on LatticeFun"""
    which = _direction(which)
    if isinstance(f, LatticeFun):
        if limits != 'whole_line':
            raise ValueError("numeric Minkowski inverse derivatives are whole-line integrals")
        return numeric_operator_apply(inverse_operator_series(which, series_order), f,
                                      params or IntegralParams())
    if limits != 'formal':
        raise ValueError("symbolic Minkowski inverse derivatives use formal limits")
    return mink_inverse_series(f, which, resum).value


# -- whole-space integrals ---------------------------------------------------

def closed_form_operator() -> Operator:
    return _op(-q_power(-1) * LAMBDA_PLUS ** -3,
               JacksonInverse(XM, 2), _S(R2, -2), JacksonInverse(X30, 2), _S(R2, -2),
               JacksonInverse(XP, 2), JacksonInverse(R2, 2), _S(XP, -2), _S(X30, -2), _S(XM, -2))


def main_text_operator() -> Operator:
    """Equivalent pipeline with lattices in base q^-2 and scalings placed differently"""
    return _op(-q_power(1) * LAMBDA_PLUS ** -3,
               JacksonInverse(R2, -2), _S(XP), _S(X30), _S(XM), JacksonInverse(XP, -2),
               JacksonInverse(X30, -2), _S(R2), JacksonInverse(XM, -2), _S(R2))


def nested_operator(series_order: int = 2, order: str = 'standard') -> Operator:
    """Inverse derivatives composed in succession, innermost first.

    'standard' applies the r2 direction first, then -, 3 and +;
    'definition' applies -, 3, + and r2 last.
    """
    if order not in NESTING_ORDERS:
        raise ValueError(f"unknown nesting order {order!r}")
    outer_to_inner = ('+', '3', '-', '2') if order == 'standard' else ('2', '+', '3', '-')
    total = Operator.identity()
    for which in reversed(outer_to_inner):
        total = (inverse_operator_series(which, series_order) @ total).whole_line_reduced(4)
        logger.debug(f"Nested volume after direction {which}: {len(total)} terms")
    return total


def volume_operator(mode: str = 'closed_form', series_order: int = 2, order: str = 'standard') -> Operator:
    if mode == 'closed_form':
        return closed_form_operator()
    if mode == 'main_text':
        return main_text_operator()
    if mode == 'nested_series':
        return nested_operator(series_order, order).scaled(NESTED_SIGN)
    raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")


def mink_whole_space_integral(f: LatticeFun, params: IntegralParams, mode: str = 'closed_form',
                              series_order: int = 2, order: str = 'standard',
                              method: str = 'auto', strict: bool = False) -> IntegralResult:
    if f.dim != 4:
        raise ValueError(f"Minkowski integrands take 4 coordinates, got {f.dim}")
    op = volume_operator(mode, series_order, order)
    return integrate_operator(op, f, params, method, strict=strict)


# -- ordering reversal -------------------------------------------------------

def _reversal_exponent(i: int):
    def exponent(n):
        return 2 * n[XP] * n[XM] + (n[XP] + n[XM]) * (2 * n[X30] + i) + 2 * n[X30] * i
    return exponent


def ordering_reverse_terms(ftilde: PolyFun) -> Dict[int, PolyFun]:
    """Contributions of each power i of (D+ D-) to the reordered function"""
    _require_minkowski(ftilde)
    ftilde.require_polynomial("ordering reversal")
    coords = ftilde.coords
    ratio = LAMBDA / LAMBDA_PLUS
    out: Dict[int, PolyFun] = {}
    g = ftilde
    i = 0
    while not g.is_zero():
        part = PolyFun.zero(coords)
        for k in range(i + 1):
            coeff = (ratio ** i * (-1) ** k * q_power(-(i - k) - k * k)
                     / (qfact(k, 2) * qfact(i - k, 2)))
            h = scale_coord(scale_coord(g, XP, i - 2 * k), XM, i - 2 * k)
            h = weight_by(h, _reversal_exponent(i))
            part = part + h * PolyFun.monomial(coords, (i - k, 0, 2 * k, 0), coeff)
        if not part.is_zero():
            out[i] = part
        g = jackson_d(jackson_d(g, XP, 2), XM, 2)
        i += 1
    return out


def mink_ordering_reverse(ftilde: PolyFun) -> PolyFun:
    """Function of the normal ordering xm x30 xp r2 from one of the reversed ordering"""
    total = PolyFun.zero(ftilde.coords)
    for part in ordering_reverse_terms(ftilde).values():
        total = total + part
    return total


def paired_weight(ftilde: PolyFun) -> PolyFun:
    """q^(2 n+ n- + 2 (n+ + n-) n30) f; integrates like the reordered function"""
    _require_minkowski(ftilde)
    return weight_by(ftilde, lambda n: 2 * n[XP] * n[XM] + 2 * (n[XP] + n[XM]) * n[X30])
