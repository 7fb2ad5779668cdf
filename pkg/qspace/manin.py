"""
Closed forms on the Manin plane.

Everything here acts on commutative images of plane elements (PolyFun /
TensorPolyFun over the `plane` coordinate system): star products, the
ordering flips U and U^-1, braided products, q-translations and antipodes,
the four derivative actions and their inverses, the dual pairings and the
q-exponentials.  Variants are named

    L     left action of d,             coproduct of the L family
    Lbar  left action of the hatted d,  coproduct of the Lbar family
    R     right action of the hatted d, coproduct equal to Lbar
    Rbar  right action of d,            coproduct equal to L

Derivative-slot polynomials hold exponents of the lowered derivatives:
(n1, n2) means d_1^n1 d_2^n2 for the unhatted algebra and
dh_2^n2 dh_1^n1 for the hatted one.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Tuple

from . import crossing
from .coords import CoordinateSystem, coordinate_system
from .errors import LaurentInputError, UnsupportedSpaceError
from .operators import JacksonD, JacksonInverse, Operator, Scale, Term
from .polyfun import PolyFun, TensorPolyFun, jackson_d, scale_coord, weight_by
from .qscalar import LAMBDA, ONE, Q_HALF, QScalar, q_power, qfact

logger = logging.getLogger(__name__)

VARIANTS = ('L', 'Lbar', 'R', 'Rbar')
ORDERINGS = ('standard', 'reversed')
PAIRING_VARIANTS = ('L,Rbar', 'Lbar,R')
EXP_VARIANTS = ('R,Lbar', 'Rbar,L')

# f(x +_L y) = f(x +_Rbar y), f(x +_Lbar y) = f(x +_R y)
COPRODUCT_CLASS = {'L': 'L', 'Rbar': 'L', 'Lbar': 'Lbar', 'R': 'Lbar'}

# exp(x|d) acting on g by its derivative slot translates g with this coproduct
TAYLOR_TRANSLATION = {'Rbar,L': 'Lbar', 'R,Lbar': 'L'}
EXP_ACTION = {'Rbar,L': 'L', 'R,Lbar': 'Lbar'}
PAIRING_OF_EXP = {'Rbar,L': 'L,Rbar', 'R,Lbar': 'Lbar,R'}


@dataclass(frozen=True)
class SignRules:
    """Per-space sign conventions.

    hat: the hatted derivatives equal hat * q^3 times the unhatted ones.
    exp_inverse: the inverse exponential substitutes d^i -> exp_inverse * dh^i.
    """

    hat: int = 1
    exp_inverse: int = -1


# the plane drops the minus sign of the inverse-exponential substitution
SIGN_RULES: Dict[str, SignRules] = {'plane': SignRules(hat=-1, exp_inverse=1)}


def sign_rules(tag: str) -> SignRules:
    return SIGN_RULES.get(tag, SignRules())


def plane() -> CoordinateSystem:
    return coordinate_system('plane')


def _require_plane(f):
    if f.coords.tag != 'plane':
        raise UnsupportedSpaceError(f"closed forms are only available on the plane, not {f.coords.tag}")


def _check(value: str, allowed: Tuple[str, ...], what: str):
    if value not in allowed:
        raise ValueError(f"unknown {what} {value!r}, expected one of {allowed}")


def _mono(coords: CoordinateSystem, exps) -> PolyFun:
    return PolyFun._raw(coords, {tuple(exps): ONE})


# -- star products and ordering flips ----------------------------------------

def star(f: PolyFun, g: PolyFun, ordering: str = 'standard') -> PolyFun:
    """f * g pulled back through W (standard) or through the reversed order"""
    _check(ordering, ORDERINGS, "ordering")
    _require_plane(f)
    if g.coords != f.coords:
        raise UnsupportedSpaceError("star product of functions over different spaces")
    if ordering == 'standard':
        def weight(a, b):
            return -a[1] * b[0]
    else:
        def weight(a, b):
            return a[0] * b[1]
    return PolyFun.from_terms(f.coords, (
        ((a[0] + b[0], a[1] + b[1]), ca * cb * q_power(weight(a, b)))
        for a, ca in f.terms.items() for b, cb in g.terms.items()))


def ordering_flip(f, direction: str = 'forward'):
    """U = q^(n1 n2) (forward) or its inverse, slot-wise on tensors"""
    _check(direction, ('forward', 'inverse'), "direction")
    return crossing.u_hat(f, inverse=direction == 'inverse')


def merge_slots(T: TensorPolyFun, slot: int = 0, ordering: str = 'standard') -> TensorPolyFun:
    """Star-multiply slot and slot + 1 into one slot"""
    pairs = []
    for key, c in T.terms.items():
        product = star(_mono(T.coords, key[slot]), _mono(T.coords, key[slot + 1]), ordering)
        for e, c2 in product.terms.items():
            pairs.append((key[:slot] + (e,) + key[slot + 2:], c * c2))
    return TensorPolyFun.from_terms(T.coords, T.slots[:slot + 1] + T.slots[slot + 2:], pairs)


def merge(F: TensorPolyFun, ordering: str = 'standard') -> PolyFun:
    """Sum of first (*) second over the terms of a two-slot tensor"""
    if F.rank != 2:
        raise ValueError("merge needs a two-slot tensor")
    return merge_slots(F, 0, ordering).collapse()


# -- braided products --------------------------------------------------------

def _scale_all(f: PolyFun, a) -> PolyFun:
    for i in range(f.coords.dim):
        f = scale_coord(f, i, a)
    return f


def _braid_series_L(f: PolyFun, g: PolyFun) -> Iterator[Tuple[QScalar, PolyFun, PolyFun, int]]:
    i = 0
    while not f.is_zero() and not g.is_zero():
        coeff = (-LAMBDA) ** i * q_power(-i * i) / qfact(i, -2)
        yield coeff, _scale_all(g, -i), _scale_all(f, -i), i
        f, g = jackson_d(f, 1, -2), jackson_d(g, 0, -2)
        i += 1


def _braid_series_Lbar(f: PolyFun, g: PolyFun) -> Iterator[Tuple[QScalar, PolyFun, PolyFun, int]]:
    k = 0
    while not f.is_zero() and not g.is_zero():
        coeff = LAMBDA ** k * q_power(k * k) / qfact(k, 2)
        yield coeff, scale_coord(g, 0, 2 * k), scale_coord(f, 1, 2 * k), k
        f, g = jackson_d(f, 0, 2), jackson_d(g, 1, 2)
        k += 1


# flat exponents of the (g-slot, f-slot) bracket: y1, y2, x1, x2
def _weight_L(n):
    return -n[0] * n[3] - 2 * n[1] * n[3] - 2 * n[0] * n[2] - n[1] * n[2]


def _weight_Lbar(n):
    return 2 * n[0] * n[2] + n[1] * n[2] + n[0] * n[3] + 2 * n[1] * n[3]


# (series, bracket weight, g-slot shift coordinate, f-slot shift coordinate)
_BRAIDINGS = {
    'L': (_braid_series_L, _weight_L, 1, 0),
    'Lbar': (_braid_series_Lbar, _weight_Lbar, 0, 1),
}


def braided_product(F: TensorPolyFun, variant: str = 'L') -> TensorPolyFun:
    """f (x) g -> sum g_k (x) f_k; the output slots are (g-side, f-side)"""
    _check(variant, VARIANTS, "variant")
    _require_plane(F)
    if F.rank != 2:
        raise ValueError("braided product needs a two-slot tensor")
    if not F.is_polynomial():
        raise LaurentInputError("braided product needs polynomial factors")
    series, weight, g_shift, f_shift = _BRAIDINGS[COPRODUCT_CLASS[variant]]
    out_slots = (F.slots[1], F.slots[0])
    pairs = []
    for (ef, eg), c in F.terms.items():
        for coeff, g_part, f_part, k in series(_mono(F.coords, ef), _mono(F.coords, eg)):
            bracket = weight_by(TensorPolyFun.from_factors(g_part, f_part, slots=out_slots), weight)
            for (a, b), c2 in bracket.terms.items():
                a = list(a)
                b = list(b)
                a[g_shift] += k
                b[f_shift] += k
                pairs.append(((tuple(a), tuple(b)), c * coeff * c2))
    return TensorPolyFun.from_terms(F.coords, out_slots, pairs)


def braided_tensor_mul(F: TensorPolyFun, G: TensorPolyFun, variant: str = 'L') -> TensorPolyFun:
    """(f (x) f')(g (x) g') = sum (f * g_k) (x) (f'_k * g') with f' (x) g braided"""
    if F.rank != 2 or G.rank != 2:
        raise ValueError("braided tensor product needs two-slot tensors")
    four = F.outer(G)
    braided = four.map_pair(1, lambda T: braided_product(T, variant))
    merged = merge_slots(merge_slots(braided, 0), 1)
    return merged.relabel_slots(F.slots)


# -- translations and antipodes ----------------------------------------------

def _qbinom(n: int, k: int, a: int) -> QScalar:
    return qfact(n, a) / (qfact(k, a) * qfact(n - k, a))


def _translate_L(f: PolyFun, slots) -> TensorPolyFun:
    pairs = []
    for (n1, n2), c in f.terms.items():
        for k1 in range(n1 + 1):
            for k2 in range(n2 + 1):
                coeff = _qbinom(n1, k1, -2) * _qbinom(n2, k2, -2) * q_power(-k2 * (n1 - k1))
                pairs.append((((k1, k2), (n1 - k1, n2 - k2)), c * coeff))
    return TensorPolyFun.from_terms(f.coords, slots, pairs)


def _translate_Lbar(f: PolyFun, slots) -> TensorPolyFun:
    # Taylor rule in the reversed ordering, conjugated by the ordering flips
    pairs = []
    for (n1, n2), c in crossing.u_hat(f).terms.items():
        for k1 in range(n1 + 1):
            for k2 in range(n2 + 1):
                coeff = _qbinom(n1, k1, 2) * _qbinom(n2, k2, 2) * q_power(k1 * (n2 - k2))
                pairs.append((((k1, k2), (n1 - k1, n2 - k2)), c * coeff))
    return crossing.u_hat(TensorPolyFun.from_terms(f.coords, slots, pairs), inverse=True)


def translate(f: PolyFun, variant: str = 'L', slots=('x', 'y')) -> TensorPolyFun:
    """f(x (+) y) as a two-slot tensor"""
    _check(variant, VARIANTS, "variant")
    _require_plane(f)
    f.require_polynomial("translate")
    if COPRODUCT_CLASS[variant] == 'L':
        return _translate_L(f, slots)
    return _translate_Lbar(f, slots)


def antipode(f: PolyFun, variant: str = 'L') -> PolyFun:
    """f(-x) in the braided sense: (-1)^N q^(+-(N - N^2)) on degree-N monomials"""
    _check(variant, VARIANTS, "variant")
    _require_plane(f)
    f.require_polynomial("antipode")
    sign = 1 if COPRODUCT_CLASS[variant] == 'L' else -1

    def step(exps, c):
        n = sum(exps)
        yield exps, c * (-1) ** n * q_power(sign * (n - n * n))

    return f.map_terms(step)


# -- derivatives -------------------------------------------------------------

def _single(coeff, *ops) -> Operator:
    return Operator.of(*ops, coeff=coeff)


@lru_cache(maxsize=None)
def qderiv_operator(which: int, action: str = 'L') -> Operator:
    """Closed form of d^which for one of the four actions as an operator pipeline"""
    _check(action, VARIANTS, "action")
    if which not in (1, 2):
        raise ValueError(f"plane derivative index must be 1 or 2, got {which}")
    half = Q_HALF
    one = Fraction(1)
    table = {
        ('L', 1): _single(-1 / half, JacksonD(1, 2), Scale(0, one)),
        ('L', 2): _single(half, JacksonD(0, 2), Scale(1, 2 * one)),
        ('Lbar', 1): _single(1 / half, JacksonD(1, -2), Scale(0, -one)),
        ('Lbar', 2): _single(-half, JacksonD(0, -2)),
        ('Rbar', 1): _single(half, JacksonD(1, 2), Scale(0, 2 * one)),
        ('Rbar', 2): _single(-1 / half, JacksonD(0, 2), Scale(1, one)),
        ('R', 1): _single(-half, JacksonD(1, -2)),
        ('R', 2): _single(1 / half, JacksonD(0, -2), Scale(1, -one)),
    }
    return table[(action, which)]


def invert_single(op: Operator) -> Operator:
    """Inverse of a one-term pipeline of scalings and Jackson derivatives"""
    if len(op) != 1:
        raise ValueError("only single-term pipelines have a closed-form inverse")
    term = op.terms[0]
    inverse_ops = []
    for prim in reversed(term.ops):
        if isinstance(prim, Scale):
            inverse_ops.append(Scale(prim.coord, -prim.a))
        elif isinstance(prim, JacksonD):
            inverse_ops.append(JacksonInverse(prim.coord, prim.a))
        else:
            raise ValueError(f"{type(prim).__name__} has no closed-form inverse")
    return Operator((Term(ONE / term.coeff, tuple(inverse_ops)),))


@lru_cache(maxsize=None)
def qderiv_inverse_operator(which: int, action: str = 'L') -> Operator:
    return invert_single(qderiv_operator(which, action))


def qderiv(f: PolyFun, which: int, action: str = 'L') -> PolyFun:
    _require_plane(f)
    return qderiv_operator(which, action).apply(f)


def qderiv_inverse(f: PolyFun, which: int, action: str = 'L', limits: str = 'formal') -> PolyFun:
    """Formal inverse: scalings undone, Jackson derivatives replaced by antiderivatives"""
    if limits != 'formal':
        raise ValueError("symbolic inverse derivatives use formal limits; see qint for lattice sums")
    _require_plane(f)
    return qderiv_inverse_operator(which, action).apply(f)


# upper index -> (lowered index, c) with d^i = c * d_lowered
UPPER_FROM_LOWERED = {
    False: {1: (1, -1 / Q_HALF), 2: (0, Q_HALF)},
    True: {1: (1, 1 / Q_HALF), 2: (0, -Q_HALF)},
}


def _lowered_source(index: int, hatted: bool) -> Tuple[int, QScalar]:
    for upper, (low, c) in UPPER_FROM_LOWERED[hatted].items():
        if low == index:
            return upper, c
    raise ValueError(f"no lowered derivative with index {index}")


def lowered_deriv(f: PolyFun, index: int, hatted: bool = False) -> PolyFun:
    """d_index (left action) or dh_index (hatted left action); index is 0-based"""
    upper, c = _lowered_source(index, hatted)
    return qderiv(f, upper, 'Lbar' if hatted else 'L') * (ONE / c)


def deriv_poly_action(d: PolyFun, g: PolyFun, hatted: bool = False) -> PolyFun:
    """d(derivatives) acting on g, the rightmost derivative acting first"""
    total = PolyFun.zero(g.coords)
    for (n1, n2), c in d.terms.items():
        h = g
        # unhatted words d_1^n1 d_2^n2, hatted words dh_2^n2 dh_1^n1
        order = ((1, n2), (0, n1)) if not hatted else ((0, n1), (1, n2))
        for index, count in order:
            for _ in range(count):
                h = lowered_deriv(h, index, hatted)
        total = total + h * c
    return total


def deriv_star(a: PolyFun, b: PolyFun, hatted: bool = False) -> PolyFun:
    """Product in the derivative algebra on lowered-derivative exponents"""
    if hatted:
        def weight(x, y):
            return -x[0] * y[1]
    else:
        def weight(x, y):
            return x[1] * y[0]
    return PolyFun.from_terms(a.coords, (
        ((x[0] + y[0], x[1] + y[1]), cx * cy * q_power(weight(x, y)))
        for x, cx in a.terms.items() for y, cy in b.terms.items()))


def upper_in_lowered(which: int, hatted: bool = False) -> PolyFun:
    """d^which written in the lowered basis"""
    low, c = UPPER_FROM_LOWERED[hatted][which]
    exps = [0, 0]
    exps[low] = 1
    return PolyFun.monomial(plane(), exps, c)


# -- pairings ----------------------------------------------------------------

def pairing(d: PolyFun, g: PolyFun, variant: str = 'L,Rbar') -> QScalar:
    """<d, g> from the monomial rule; g is brought to the reversed ordering first"""
    _check(variant, PAIRING_VARIANTS, "pairing variant")
    _require_plane(g)
    d.require_polynomial("pairing")
    g.require_polynomial("pairing")
    if variant == 'L,Rbar':
        g, a = crossing.u_hat(g), 2
    else:
        a = -2
    total = QScalar(0)
    for exps, c in d.terms.items():
        value = g.coefficient(exps)
        if value:
            total = total + c * value * qfact(exps[0], a) * qfact(exps[1], a)
    return total


def pairing_by_action(d: PolyFun, g: PolyFun, variant: str = 'L,Rbar') -> QScalar:
    """(d(derivatives) acting on g) at x = 0"""
    _check(variant, PAIRING_VARIANTS, "pairing variant")
    return deriv_poly_action(d, g, hatted=variant == 'Lbar,R').counit()


# -- exponentials ------------------------------------------------------------

def qexp(N: int, variant: str = 'R,Lbar') -> TensorPolyFun:
    """exp(x|d) truncated at total x-degree N; slots (x, d)"""
    _check(variant, EXP_VARIANTS, "exponential variant")
    if N < 0:
        raise ValueError("truncation degree must be non-negative")
    pairs = []
    for total in range(N + 1):
        for n1 in range(total + 1):
            n2 = total - n1
            if variant == 'R,Lbar':
                c = ONE / (qfact(n1, -2) * qfact(n2, -2))
            else:
                c = q_power(-n1 * n2) / (qfact(n1, 2) * qfact(n2, 2))
            pairs.append((((n1, n2), (n1, n2)), c))
    return TensorPolyFun.from_terms(plane(), ('x', 'd'), pairs)


def _hatted(variant: str) -> bool:
    return variant == 'R,Lbar'


def exp_contract(E: TensorPolyFun, g: PolyFun, variant: str = 'R,Lbar') -> TensorPolyFun:
    """sum e_a(x) (x) (f^a acting on g)(y)"""
    hatted = _hatted(variant)
    pairs = []
    for (ex, ed), c in E.terms.items():
        h = deriv_poly_action(_mono(E.coords, ed), g, hatted)
        pairs.extend(((ex, eh), c * ch) for eh, ch in h.terms.items())
    return TensorPolyFun.from_terms(E.coords, ('x', 'y'), pairs)


def exp_completeness(E: TensorPolyFun, u: PolyFun, variant: str = 'R,Lbar') -> PolyFun:
    """sum <u, e_a> f^a"""
    pv = PAIRING_OF_EXP[variant]
    return E.contract(0, lambda e: pairing(u, e, pv)).collapse()


def exp_dual_completeness(E: TensorPolyFun, g: PolyFun, variant: str = 'R,Lbar') -> PolyFun:
    """sum e_a <f^a, g>"""
    pv = PAIRING_OF_EXP[variant]
    return E.contract(1, lambda d: pairing(d, g, pv)).collapse()


def exp_eigen_sides(N: int, variant: str, which: int) -> Tuple[TensorPolyFun, TensorPolyFun]:
    """d^which on the x-slot versus right multiplication on the d-slot, x-degree <= N - 1"""
    E = qexp(N, variant)
    hatted = _hatted(variant)
    lhs = E.map_slot(0, lambda f: qderiv(f, which, EXP_ACTION[variant]))
    factor = upper_in_lowered(which, hatted)
    rhs = E.map_slot(1, lambda d: deriv_star(d, factor, hatted))
    return lhs.truncate(0, N - 1), rhs.truncate(0, N - 1)


def exp_addition_sides(N: int, variant: str) -> Tuple[TensorPolyFun, TensorPolyFun]:
    """exp(x (+) y|d) versus exp(x|d) exp(y|d) with the d-factors multiplied, total degree <= N"""
    E = qexp(N, variant)
    hatted = _hatted(variant)
    lhs = E.expand_slot(0, lambda f: translate(f, TAYLOR_TRANSLATION[variant]))
    pairs = []
    for (ea, fa), ca in E.terms.items():
        for (eb, fb), cb in E.terms.items():
            if sum(ea) + sum(eb) > N:
                continue
            product = deriv_star(_mono(E.coords, fb), _mono(E.coords, fa), hatted)
            pairs.extend(((ea, eb, ed), ca * cb * cd) for ed, cd in product.terms.items())
    rhs = TensorPolyFun.from_terms(E.coords, ('x', 'y', 'd'), pairs)
    return lhs.truncate_total(N), rhs


def _hat_substitution(d: PolyFun, rules: SignRules) -> PolyFun:
    """d_i -> s dh_i in lowered coordinates, reordered into hatted words"""
    ratio = {}
    for upper, (low, c) in UPPER_FROM_LOWERED[False].items():
        ratio[low] = rules.exp_inverse * UPPER_FROM_LOWERED[True][upper][1] / c

    def step(exps, c):
        n1, n2 = exps
        # d_1^n1 d_2^n2 -> dh_1^n1 dh_2^n2 = q^(-n1 n2) dh_2^n2 dh_1^n1
        yield exps, c * ratio[0] ** n1 * ratio[1] ** n2 * q_power(-n1 * n2)

    return d.map_terms(step)


def inverse_exponential_sides(N: int, tag: str = 'plane') -> Tuple[TensorPolyFun, TensorPolyFun]:
    """exp(-x|dh) with the L antipode on x versus exp(x|d) with d -> dh substituted"""
    rules = sign_rules(tag)
    lhs = qexp(N, 'R,Lbar').map_slot(0, lambda f: antipode(f, 'L'))
    rhs = qexp(N, 'Rbar,L').map_slot(1, lambda d: _hat_substitution(d, rules))
    return lhs, rhs


# -- crossing-generated variants ---------------------------------------------

TRANSLATION_CROSSING = {'Lbar': 'horizontal', 'Rbar': 'diagonal', 'R': 'vertical'}


def _conjugate_which(which: int) -> int:
    return 3 - which


def translate_generated(f: PolyFun, variant: str) -> TensorPolyFun:
    _check(variant, VARIANTS, "variant")

    def base(h):
        return translate(h, 'L')

    if variant == 'L':
        return base(f)
    return crossing.crossing(TRANSLATION_CROSSING[variant])(base)(f)


def braided_product_generated(F: TensorPolyFun, variant: str) -> TensorPolyFun:
    _check(variant, VARIANTS, "variant")
    if COPRODUCT_CLASS[variant] == 'L':
        return braided_product(F, 'L')
    return crossing.horizontal(lambda T: braided_product(T, 'L'))(F)


def antipode_generated(f: PolyFun, variant: str) -> PolyFun:
    _check(variant, VARIANTS, "variant")
    if COPRODUCT_CLASS[variant] == 'L':
        return antipode(f, 'L')
    return crossing.horizontal(lambda h: antipode(h, 'L'))(f)


def qderiv_generated(f: PolyFun, which: int, action: str) -> PolyFun:
    """L as printed; Lbar by the horizontal, Rbar and R by the diagonal substitution"""
    _check(action, VARIANTS, "action")
    if action == 'L':
        return qderiv(f, which, 'L')
    source = _conjugate_which(which)
    if action == 'Lbar':
        return crossing.horizontal(lambda h: qderiv(h, source, 'L'))(f)
    if action == 'Rbar':
        return crossing.diagonal(lambda h: qderiv(h, source, 'L'))(f)
    return crossing.diagonal(lambda h: qderiv_generated(h, source, 'Lbar'))(f)


def pairing_generated(d: PolyFun, g: PolyFun, variant: str) -> QScalar:
    _check(variant, PAIRING_VARIANTS, "pairing variant")
    if variant == 'L,Rbar':
        return pairing(d, g, variant)
    d_crossed = crossing.conjugate_indices(d)
    g_crossed = crossing.u_hat(crossing.conjugate_indices(g), inverse=True)
    return pairing(d_crossed, g_crossed, 'L,Rbar').invert_q()


def qexp_generated(N: int, variant: str) -> TensorPolyFun:
    """Rbar,L from R,Lbar: U^-1 C on the x-slot, C on the derivative slot"""
    _check(variant, EXP_VARIANTS, "exponential variant")
    E = qexp(N, 'R,Lbar')
    if variant == 'R,Lbar':
        return E
    return weight_by(crossing.conjugate_indices(E), lambda n: -n[0] * n[1])
