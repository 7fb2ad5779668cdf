"""
Numeric Jackson integration on q-lattices.

One-dimensional integrals are truncated lattice sums with an explicit tail
estimate.  Whole-space integrals are operator pipelines (see operators.py)
whose inverse Jackson derivatives are read as whole-line sums; separable
integrands are evaluated one coordinate at a time, everything else by
nested lattice sums.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .config import IntegralParams
from .errors import ConvergenceError, DecayError, UnsupportedSpaceError
from .manin import (qderiv, qderiv_inverse, qderiv_inverse_operator, qderiv_operator,
                    sign_rules, star)
from .ncalg import extract_l_action
from .operators import JacksonInverse, MulMonomial, Operator, Scale, Term, check_chain
from .polyfun import PolyFun, TensorPolyFun, conjugation_factors
from .coords import coordinate_system
from .qscalar import ONE, q_power

logger = logging.getLogger(__name__)

Factor = Callable[[np.ndarray], np.ndarray]
Evaluator = Callable[[np.ndarray], np.ndarray]

LIMITS = ('0..x', 'x..inf', '-inf..x', 'x..0', '-inf..0', '0..inf', '-inf..inf')
INFINITE_LIMITS = ('x..inf', '-inf..x', '-inf..0', '0..inf', '-inf..inf')
METHODS = ('auto', 'separable', 'joint')
VOLUME_SPACES = ('plane', 'euclid3', 'euclid4')


@dataclass(frozen=True)
class LatticeFun:
    """Real function given by a vectorized evaluator `points (dim, M) -> (M,)`.

    `separable` optionally lists the same function as a sum of products
    c * g_1(x^1) * ... * g_n(x^n) of one-variable vectorized factors.
    """

    dim: int
    evaluator: Evaluator
    decaying: bool = True
    separable: Optional[Tuple[Tuple[float, Tuple[Factor, ...]], ...]] = field(default=None, compare=False)

    @classmethod
    def from_callable(cls, fn: Callable[..., np.ndarray], dim: int, decaying: bool = True) -> "LatticeFun":
        """fn takes one array per coordinate"""
        return cls(dim, lambda points: np.asarray(fn(*points), dtype=float), decaying)

    @classmethod
    def product(cls, *factors: Factor, coeff: float = 1.0, decaying: bool = True) -> "LatticeFun":
        def evaluate(points):
            values = np.full(np.shape(points)[1], coeff, dtype=float)
            for g, row in zip(factors, points):
                values = values * g(np.asarray(row, dtype=float))
            return values
        return cls(len(factors), evaluate, decaying, ((coeff, tuple(factors)),))

    @classmethod
    def from_polyfun(cls, f: PolyFun, q: float) -> "LatticeFun":
        return cls(f.coords.dim, lambda points: np.asarray(f.evaluate(points, q), dtype=float), decaying=False)

    @classmethod
    def gaussian_weighted(cls, f: PolyFun, q: float, scale: float = 1.0) -> "LatticeFun":
        """f(x) exp(-|x|^2 / scale^2), one separable product per monomial of f"""
        f.require_polynomial("Gaussian weighting")
        total = cls.product(*(gaussian(scale) for _ in range(f.coords.dim)), coeff=0.0)
        for exps, c in f.items():
            total = total + cls.product(*(gaussian(scale, 0.0, e) for e in exps), coeff=float(c.evaluate(q)))
        return total

    def __call__(self, *coords) -> np.ndarray:
        points = np.atleast_2d(np.array([np.atleast_1d(np.asarray(x, dtype=float)) for x in coords]))
        return self.evaluator(points)

    def __add__(self, other: "LatticeFun") -> "LatticeFun":
        if other.dim != self.dim:
            raise ValueError("adding lattice functions of different dimension")
        separable = None
        if self.separable is not None and other.separable is not None:
            separable = self.separable + other.separable
        return LatticeFun(self.dim, lambda p: self.evaluator(p) + other.evaluator(p),
                          self.decaying and other.decaying, separable)

    def scaled(self, c: float) -> "LatticeFun":
        separable = None
        if self.separable is not None:
            separable = tuple((c * coeff, factors) for coeff, factors in self.separable)
        return LatticeFun(self.dim, lambda p: c * self.evaluator(p), self.decaying, separable)


@dataclass(frozen=True)
class IntegralResult:
    value: float
    tail_bound: float
    params: Dict

    @property
    def converged(self) -> bool:
        return self.tail_bound <= self.params.get('tol', 0.0)

    def to_dict(self) -> Dict:
        return {'value': self.value, 'tail_bound': self.tail_bound, 'params': dict(self.params)}


def gaussian(scale: float = 1.0, center: float = 0.0, power: int = 0) -> Factor:
    """x^power * exp(-((x - center) / scale)^2), a one-variable decaying factor"""
    def g(x):
        x = np.asarray(x, dtype=float)
        return x ** power * np.exp(-((x - center) / scale) ** 2)
    return g


# -- one-dimensional Jackson integrals --------------------------------------

def _lattice_constants(q: float, a: int) -> Tuple[float, float]:
    """Ratio r = q^|a| and measure constant c"""
    if a == 0:
        raise ValueError("lattice exponent a must be nonzero")
    qa = q ** a
    return q ** abs(a), (qa - 1.0 if a > 0 else 1.0 - qa)


def _slice(f: LatticeFun, i: int, point: Optional[Sequence[float]]) -> Factor:
    """f as a function of coordinate i with the other coordinates fixed"""
    if f.dim == 1:
        return lambda xs: f.evaluator(np.asarray(xs, dtype=float)[None, :])
    if point is None or len(point) != f.dim:
        raise ValueError(f"a {f.dim}-dimensional integrand needs a full reference point")
    fixed = np.asarray(point, dtype=float)

    def sliced(xs):
        xs = np.asarray(xs, dtype=float)
        points = np.repeat(fixed[:, None], xs.size, axis=1)
        points[i] = xs
        return f.evaluator(points)
    return sliced


def _geometric_sum(g: Factor, start: float, r: float, ks: np.ndarray, c: float) -> Tuple[float, float]:
    points = start * r ** ks
    terms = c * points * g(points)
    bound = float(abs(terms[-1])) * r / (r - 1.0) if terms.size else 0.0
    return float(terms.sum()), bound


def _head(g, x, r, c, a, K):
    ks = -np.arange(1 if a > 0 else 0, K + 1, dtype=float)
    return _geometric_sum(g, x, r, ks, c)


def _tail(g, x, r, c, a, K):
    ks = np.arange(0 if a > 0 else 1, K + 1, dtype=float)
    return _geometric_sum(g, x, r, ks, c)


def _half_line(g, x0, r, c, K, sign):
    ks = np.arange(-K, K + 1, dtype=float)
    points = x0 * r ** ks
    terms = c * points * g(sign * points)
    bound = (float(abs(terms[0])) + float(abs(terms[-1]))) * r / (r - 1.0)
    return float(terms.sum()), bound


def jackson_int_num(f: LatticeFun, i: int, a: int, limits: str, params: IntegralParams,
                    x: Optional[float] = None, point: Optional[Sequence[float]] = None,
                    strict: bool = False) -> IntegralResult:
    """Jackson integral of f over coordinate i on the lattice with base q^a"""
    if limits not in LIMITS:
        raise ValueError(f"unknown limits {limits!r}, expected one of {LIMITS}")
    if limits in INFINITE_LIMITS and not f.decaying:
        raise DecayError(f"infinite limits {limits} need a decaying integrand")
    if 'x' in limits.replace('..', ' ').split() and (x is None or x == 0.0):
        raise ValueError(f"limits {limits} need a nonzero x")

    g = _slice(f, i, point)
    r, c = _lattice_constants(params.q_real, a)
    K = params.trunc_K
    x0 = params.x0

    if limits == '0..x':
        value, bound = _head(g, x, r, c, a, K)
    elif limits == 'x..0':
        value, bound = _head(g, x, r, c, a, K)
        value = -value
    elif limits == '0..inf':
        value, bound = _half_line(g, x0, r, c, K, 1.0)
    elif limits == '-inf..0':
        value, bound = _half_line(g, x0, r, c, K, -1.0)
    elif limits == '-inf..inf':
        plus, b1 = _half_line(g, x0, r, c, K, 1.0)
        minus, b2 = _half_line(g, x0, r, c, K, -1.0)
        value, bound = plus + minus, b1 + b2
    elif limits == 'x..inf':
        if x > 0:
            value, bound = _tail(g, x, r, c, a, K)
        else:
            head, b1 = _head(g, x, r, c, a, K)
            plus, b2 = _half_line(g, x0, r, c, K, 1.0)
            value, bound = plus - head, b1 + b2
    else:
        if x < 0:
            value, bound = _tail(g, x, r, c, a, K)
            value = -value
        else:
            head, b1 = _head(g, x, r, c, a, K)
            minus, b2 = _half_line(g, x0, r, c, K, -1.0)
            value, bound = minus + head, b1 + b2

    logger.debug(f"Jackson integral {limits} (a={a}, K={K}): {value:.15g} +- {bound:.3g}")
    result = IntegralResult(value, bound, params.to_dict())
    if strict and not result.converged:
        raise ConvergenceError(f"tail estimate {bound:.3g} exceeds tol {params.tol:.3g}")
    return result


# -- operator pipelines ------------------------------------------------------

def numeric_operator_apply(op: Operator, f: LatticeFun, params: IntegralParams) -> LatticeFun:
    """Lazy evaluator of op applied to f; JacksonInverse primitives are whole-line sums"""
    evaluator = op.numeric(f.evaluator, params.q_real, params.trunc_K)
    return LatticeFun(f.dim, evaluator, f.decaying)


def _chain_value(chain, factor: Factor, x: float, q: float, K: int) -> float:
    def h(points):
        return factor(np.asarray(points, dtype=float)[0])
    for prim in reversed(chain):
        h = prim.numeric(h, q, K)
    return float(h(np.array([[x]], dtype=float))[0])


def _separable_value(op: Operator, f: LatticeFun, point: np.ndarray, q: float, K: int) -> float:
    total = 0.0
    cache: Dict = {}
    for term in op.terms:
        chains = [term.chain(i) for i in range(f.dim)]
        for chain in chains:
            check_chain(chain)
        coeff = term.coeff.evaluate(q)
        for fc, factors in f.separable:
            value = coeff * fc
            for i, (chain, factor) in enumerate(zip(chains, factors)):
                key = (chain, id(factor), i)
                if key not in cache:
                    cache[key] = _chain_value(chain, factor, point[i], q, K)
                value *= cache[key]
                if value == 0.0:
                    break
            total += value
    return total


def _joint_value(op: Operator, f: LatticeFun, point: np.ndarray, q: float, K: int) -> float:
    evaluator = op.numeric(f.evaluator, q, K)
    return float(evaluator(point[:, None])[0])


def integrate_operator(op: Operator, f: LatticeFun, params: IntegralParams,
                       method: str = 'auto', point: Optional[Sequence[float]] = None,
                       strict: bool = False) -> IntegralResult:
    """Value of a whole-line pipeline at the reference point, with a truncation estimate.

    The estimate compares the sums at K and 0.9 K.  The separable method
    drops terms that vanish structurally; the joint method sums everything.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
    if not f.decaying:
        raise DecayError("whole-line integration needs a decaying integrand")
    if method == 'auto':
        method = 'separable' if f.separable is not None else 'joint'
    if method == 'separable' and f.separable is None:
        raise ValueError("integrand has no separable form")
    point = np.asarray(point if point is not None else (params.x0,) * f.dim, dtype=float)
    q, K = params.q_real, params.trunc_K
    coarse_K = max(1, int(0.9 * K))
    if method == 'separable':
        op = op.whole_line_reduced(f.dim)
        value = _separable_value(op, f, point, q, K)
        coarse = _separable_value(op, f, point, q, coarse_K)
    else:
        value = _joint_value(op, f, point, q, K)
        coarse = _joint_value(op, f, point, q, coarse_K)
    tail = abs(value - coarse)
    logger.debug(f"Pipeline of {len(op)} terms ({method}): {value:.15g} +- {tail:.3g}")
    result = IntegralResult(value, tail, params.to_dict())
    if strict and not result.converged:
        raise ConvergenceError(f"tail estimate {tail:.3g} exceeds tol {params.tol:.3g}")
    return result


# -- whole-space integrals ---------------------------------------------------

def _pipeline(coeff, *ops) -> Operator:
    return Operator.of(*ops, coeff=coeff)


def volume_operator(space: str, variant: str = 'L', order: str = 'standard') -> Operator:
    """Whole-space integral as a pipeline of scalings and whole-line integrals.

    On the plane the L and Rbar volumes are the inverse derivatives taken in
    succession; `order='swapped'` takes them in the other order.  Lbar and R
    use their closed forms.
    """
    one = Fraction(1)
    if space == 'plane':
        if variant in ('L', 'Rbar'):
            first, second = (1, 2) if variant == 'L' else (2, 1)
            if order == 'swapped':
                first, second = second, first
            return qderiv_inverse_operator(second, variant) @ qderiv_inverse_operator(first, variant)
        if order != 'standard':
            raise ValueError(f"order swapping is only tabulated for L and Rbar, not {variant}")
        if variant == 'Lbar':
            return _pipeline(-ONE, JacksonInverse(1, -2), Scale(0, 2 * one),
                             JacksonInverse(0, -2), Scale(1, one))
        if variant == 'R':
            return _pipeline(-ONE, JacksonInverse(0, -2), Scale(1, 2 * one),
                             JacksonInverse(1, -2), Scale(0, one))
        raise ValueError(f"unknown variant {variant!r}")
    if space == 'euclid3':
        # coordinates xp, x3, xm
        return _pipeline(ONE, JacksonInverse(0, 4), JacksonInverse(1, 2), Scale(0, 2 * one),
                         JacksonInverse(2, 4), Scale(1, 2 * one))
    if space == 'euclid4':
        return _pipeline(ONE, JacksonInverse(0, 2), Scale(1, one), Scale(2, one),
                         JacksonInverse(1, 2), Scale(3, one), JacksonInverse(2, 2),
                         Scale(3, one), JacksonInverse(3, 2))
    raise UnsupportedSpaceError(f"no whole-space integral for {space!r}; expected one of {VOLUME_SPACES}")


def whole_space_integral(space: str, f: LatticeFun, params: IntegralParams, variant: str = 'L',
                         order: str = 'standard', method: str = 'auto',
                         strict: bool = False) -> IntegralResult:
    expected = coordinate_system(space).dim if space in VOLUME_SPACES else None
    if expected is not None and f.dim != expected:
        raise ValueError(f"{space} integrand must have {expected} coordinates, got {f.dim}")
    return integrate_operator(volume_operator(space, variant, order), f, params, method, strict=strict)


def conjugate_lattice(f: LatticeFun, q: float, tag: str = 'plane', convention: str = 'involutive') -> LatticeFun:
    """f(x) -> f(c_1 x^(conj 1), ..., c_n x^(conj n)) for real f"""
    coords = coordinate_system(tag)
    factors = [c.evaluate(q) for c in conjugation_factors(coords, convention)]
    conj = coords.conjugate

    def evaluate(points):
        points = np.asarray(points, dtype=float)
        moved = np.array([factors[i] * points[conj[i]] for i in range(coords.dim)])
        return f.evaluator(moved)

    separable = None
    if f.separable is not None:
        separable = []
        for coeff, gs in f.separable:
            placed = [None] * coords.dim
            for i, g in enumerate(gs):
                placed[conj[i]] = _scaled_factor(g, factors[i])
            separable.append((coeff, tuple(placed)))
        separable = tuple(separable)
    return LatticeFun(f.dim, evaluate, f.decaying, separable)


def _scaled_factor(g: Factor, c: float) -> Factor:
    return lambda x: g(c * np.asarray(x, dtype=float))


# -- star products with polynomials -----------------------------------------

def star_operator(f: PolyFun, side: str = 'left') -> Operator:
    """h -> f * h (side='left') or h -> h * f (side='right') on the plane"""
    if f.coords.tag != 'plane':
        raise UnsupportedSpaceError("numeric star products are only available on the plane")
    terms = []
    for (m1, m2), c in f.terms.items():
        if side == 'left':
            scale = Scale(0, Fraction(-m2))
        elif side == 'right':
            scale = Scale(1, Fraction(-m1))
        else:
            raise ValueError(f"unknown side {side!r}")
        terms.append(Term(c, (MulMonomial((m1, m2)), scale)))
    return Operator(terms)


def numeric_star(f: PolyFun, g: LatticeFun, params: IntegralParams, side: str = 'left') -> LatticeFun:
    return numeric_operator_apply(star_operator(f, side), g, params)


def by_parts_whole_space(f: PolyFun, g: LatticeFun, which: int, params: IntegralParams
                         ) -> Tuple[IntegralResult, IntegralResult]:
    """Whole-space integrals of f * (d^which acting on g) and of (f acted on from the right) * g"""
    volume = volume_operator('plane', 'L')
    lhs = integrate_operator(volume @ star_operator(f, 'left') @ qderiv_operator(which, 'L'), g, params)
    # right action of d through the hatted right action: d = hat * q^-3 dh
    factor = sign_rules('plane').hat * q_power(-3)
    f_right = qderiv(f, which, 'R') * factor
    rhs = integrate_operator(volume @ star_operator(f_right, 'left'), g, params)
    return lhs, rhs


# -- symbolic integration by parts ------------------------------------------

def definite_inverse_derivative(h: PolyFun, which: int, upper: str = 'y', lower: str = 'z') -> TensorPolyFun:
    """Inverse derivative of h between two formal limits: H(upper) (x) 1 - 1 (x) H(lower)"""
    H = qderiv_inverse(h, which, 'L')
    return _between(H, upper, lower)


def _between(H: PolyFun, upper: str, lower: str) -> TensorPolyFun:
    one = PolyFun.constant(H.coords)
    return (TensorPolyFun.from_factors(H, one, slots=(upper, lower))
            - TensorPolyFun.from_factors(one, H, slots=(upper, lower)))


def by_parts_formal_sides(f: PolyFun, g: PolyFun, which: int) -> Tuple[TensorPolyFun, TensorPolyFun]:
    """Both sides of the integration-by-parts rule for d^which over formal limits"""
    lhs = definite_inverse_derivative(star(qderiv(f, which, 'L'), g), which)
    product = star(f, g)
    boundary = product.restrict_zero(f.coords.conjugate[which - 1])
    rhs = _between(product - boundary, 'y', 'z')
    for j in range(f.coords.dim):
        l_part = extract_l_action(which - 1, j, f)
        if l_part.is_zero():
            continue
        rhs = rhs - definite_inverse_derivative(star(l_part, qderiv(g, j + 1, 'L')), which)
    return lhs, rhs
