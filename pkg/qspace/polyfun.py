"""
Commutative function algebra over a coordinate system.

A PolyFun is a finitely supported map from integer exponent vectors
(negative entries allowed) to exact coefficients.  A TensorPolyFun holds
several labelled copies of one coordinate system side by side; it carries
coproducts, braided products and exponentials.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .coords import CoordinateSystem
from .errors import CounitError, LaurentInputError, SingularExponentError, UnsupportedSpaceError
from .qscalar import ONE, ZERO, QScalar, q_power, qnum

logger = logging.getLogger(__name__)

Exps = Tuple[int, ...]
Coefficient = Union[QScalar, int, Fraction]


def _scalar(c: Coefficient) -> QScalar:
    return c if isinstance(c, QScalar) else QScalar(c)


def _accumulate(target: Dict, key, value: QScalar):
    total = target.get(key)
    total = value if total is None else total + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


class PolyFun:
    """Laurent polynomial in the coordinates of one system"""

    __slots__ = ('coords', 'terms')

    def __init__(self, coords: CoordinateSystem, terms: Optional[Mapping[Sequence[int], Coefficient]] = None):
        self.coords = coords
        clean: Dict[Exps, QScalar] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != coords.dim:
                raise ValueError(f"exponent vector {exps} does not match {coords.tag}")
            _accumulate(clean, exps, _scalar(c))
        self.terms = clean

    @classmethod
    def _raw(cls, coords: CoordinateSystem, terms: Dict[Exps, QScalar]) -> "PolyFun":
        obj = cls.__new__(cls)
        obj.coords = coords
        obj.terms = terms
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, coords: CoordinateSystem) -> "PolyFun":
        return cls._raw(coords, {})

    @classmethod
    def constant(cls, coords: CoordinateSystem, c: Coefficient = 1) -> "PolyFun":
        return cls(coords, {(0,) * coords.dim: c})

    @classmethod
    def monomial(cls, coords: CoordinateSystem, exps: Sequence[int], c: Coefficient = 1) -> "PolyFun":
        return cls(coords, {tuple(exps): c})

    @classmethod
    def coordinate(cls, coords: CoordinateSystem, label) -> "PolyFun":
        exps = [0] * coords.dim
        exps[coords.index(label)] = 1
        return cls(coords, {tuple(exps): 1})

    @classmethod
    def from_terms(cls, coords: CoordinateSystem, pairs: Iterable[Tuple[Exps, QScalar]]) -> "PolyFun":
        """Sum of (exponents, coefficient) pairs, repeated exponents accumulate"""
        terms: Dict[Exps, QScalar] = {}
        for exps, c in pairs:
            _accumulate(terms, tuple(exps), c)
        return cls._raw(coords, terms)

    # -- inspection ------------------------------------------------------

    def items(self) -> Iterator[Tuple[Exps, QScalar]]:
        return iter(sorted(self.terms.items(), key=lambda item: item[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exps in self.terms for e in exps)

    def require_polynomial(self, operation: str) -> "PolyFun":
        if not self.is_polynomial():
            raise LaurentInputError(f"{operation} needs a polynomial, got negative exponents")
        return self

    def degree(self) -> int:
        return max((sum(exps) for exps in self.terms), default=0)

    def coord_degree(self, i) -> int:
        i = self.coords.index(i)
        return max((exps[i] for exps in self.terms), default=0)

    def coefficient(self, exps: Sequence[int]) -> QScalar:
        return self.terms.get(tuple(exps), ZERO)

    def counit(self) -> QScalar:
        """f(0), the coefficient of the zero exponent vector"""
        if not self.is_polynomial():
            raise CounitError("f(0) is undefined for negative exponents")
        return self.coefficient((0,) * self.coords.dim)

    def truncate(self, max_degree: int) -> "PolyFun":
        return PolyFun._raw(self.coords, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def evaluate(self, point, q0: float):
        """Numeric value at a point; `point` rows may be numpy arrays"""
        point = [np.asarray(x, dtype=float) for x in point]
        total = np.zeros(np.broadcast(*point).shape) if point else 0.0
        for exps, c in self.terms.items():
            term = c.evaluate(q0)
            for x, e in zip(point, exps):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    # -- algebra ---------------------------------------------------------

    def _check(self, other: "PolyFun"):
        if other.coords != self.coords:
            raise UnsupportedSpaceError(f"mixing {self.coords.tag} and {other.coords.tag} functions")

    def __add__(self, other):
        if isinstance(other, PolyFun):
            self._check(other)
            terms = dict(self.terms)
            for e, c in other.terms.items():
                _accumulate(terms, e, c)
            return PolyFun._raw(self.coords, terms)
        if isinstance(other, (QScalar, int, Fraction)):
            return self + PolyFun.constant(self.coords, other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return PolyFun._raw(self.coords, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (PolyFun, QScalar, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PolyFun):
            self._check(other)
            terms: Dict[Exps, QScalar] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    _accumulate(terms, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
            return PolyFun._raw(self.coords, terms)
        if isinstance(other, (QScalar, int, Fraction)):
            c = _scalar(other)
            if not c:
                return PolyFun.zero(self.coords)
            return PolyFun._raw(self.coords, {e: v * c for e, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PolyFun):
            return self.coords == other.coords and self.terms == other.terms
        if isinstance(other, (QScalar, int, Fraction)):
            return self == PolyFun.constant(self.coords, other)
        return NotImplemented

    __hash__ = None

    def map_terms(self, fn: Callable[[Exps, QScalar], Iterable[Tuple[Exps, QScalar]]]) -> "PolyFun":
        """Linear extension of a monomial map"""
        terms: Dict[Exps, QScalar] = {}
        for exps, c in self.terms.items():
            for e2, c2 in fn(exps, c):
                _accumulate(terms, e2, c2)
        return PolyFun._raw(self.coords, terms)

    def relabel(self, perm: Sequence[int]) -> "PolyFun":
        """Move the exponent of coordinate i to coordinate perm[i]"""
        def move(exps, c):
            out = [0] * len(exps)
            for i, e in enumerate(exps):
                out[perm[i]] = e
            yield tuple(out), c
        return self.map_terms(move)

    def index_swap(self) -> "PolyFun":
        """i -> conjugate index on every coordinate"""
        return self.relabel(self.coords.conjugate)

    def invert_q(self) -> "PolyFun":
        return PolyFun._raw(self.coords, {e: c.invert_q() for e, c in self.terms.items()})

    def restrict_zero(self, i) -> "PolyFun":
        """The slice with exponent 0 in coordinate i, i.e. f at x^i = 0"""
        i = self.coords.index(i)
        if any(exps[i] < 0 for exps in self.terms):
            raise CounitError(f"{self.coords.names[i]} = 0 is not in the domain of a Laurent function")
        return PolyFun._raw(self.coords, {e: c for e, c in self.terms.items() if e[i] == 0})

    def __repr__(self):
        from .expression import render_polyfun
        return f"PolyFun({self.coords.tag}, {render_polyfun(self)!r})"

    def __str__(self):
        from .expression import render_polyfun
        return render_polyfun(self)


class TensorPolyFun:
    """Sum of tensor products of PolyFuns over one coordinate system.

    Keys are tuples of per-slot exponent vectors; `slots` names the factors
    (x, y, ...) for display.
    """

    __slots__ = ('coords', 'slots', 'terms')

    def __init__(self, coords: CoordinateSystem, slots: Sequence[str],
                 terms: Optional[Mapping[Tuple[Exps, ...], Coefficient]] = None):
        self.coords = coords
        self.slots = tuple(slots)
        clean: Dict[Tuple[Exps, ...], QScalar] = {}
        for key, c in (terms or {}).items():
            key = tuple(tuple(int(e) for e in part) for part in key)
            if len(key) != len(self.slots) or any(len(part) != coords.dim for part in key):
                raise ValueError(f"tensor key {key} does not match slots {self.slots}")
            _accumulate(clean, key, _scalar(c))
        self.terms = clean

    @classmethod
    def _raw(cls, coords, slots, terms) -> "TensorPolyFun":
        obj = cls.__new__(cls)
        obj.coords = coords
        obj.slots = tuple(slots)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, coords: CoordinateSystem, slots: Sequence[str]) -> "TensorPolyFun":
        return cls._raw(coords, slots, {})

    @classmethod
    def from_factors(cls, *factors: PolyFun, slots: Optional[Sequence[str]] = None) -> "TensorPolyFun":
        """f1 (x) f2 (x) ... expanded term by term"""
        coords = factors[0].coords
        slots = tuple(slots) if slots else default_slots(len(factors))
        terms: Dict[Tuple[Exps, ...], QScalar] = {(): ONE}
        for f in factors:
            if f.coords != coords:
                raise UnsupportedSpaceError("tensor factors over different coordinate systems")
            nxt: Dict[Tuple[Exps, ...], QScalar] = {}
            for key, c in terms.items():
                for e, c2 in f.terms.items():
                    _accumulate(nxt, key + (e,), c * c2)
            terms = nxt
        return cls._raw(coords, slots, terms)

    @classmethod
    def from_terms(cls, coords: CoordinateSystem, slots: Sequence[str],
                   pairs: Iterable[Tuple[Tuple[Exps, ...], QScalar]]) -> "TensorPolyFun":
        terms: Dict[Tuple[Exps, ...], QScalar] = {}
        for key, c in pairs:
            _accumulate(terms, key, c)
        return cls._raw(coords, slots, terms)

    def outer(self, other: "TensorPolyFun") -> "TensorPolyFun":
        """self (x) other with the slots of both side by side"""
        if other.coords != self.coords:
            raise UnsupportedSpaceError("tensor factors over different coordinate systems")
        return TensorPolyFun.from_terms(
            self.coords, self.slots + other.slots,
            ((k1 + k2, c1 * c2) for k1, c1 in self.terms.items() for k2, c2 in other.terms.items()))

    @property
    def rank(self) -> int:
        return len(self.slots)

    def items(self):
        return iter(sorted(self.terms.items(), key=lambda item: item[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(e >= 0 for key in self.terms for part in key for e in part)

    def truncate(self, slot: int, max_degree: int) -> "TensorPolyFun":
        return TensorPolyFun._raw(self.coords, self.slots,
                                  {k: c for k, c in self.terms.items() if sum(k[slot]) <= max_degree})

    def truncate_total(self, max_degree: int) -> "TensorPolyFun":
        return TensorPolyFun._raw(self.coords, self.slots,
                                  {k: c for k, c in self.terms.items()
                                   if sum(sum(part) for part in k) <= max_degree})

    def relabel_slots(self, slots: Sequence[str]) -> "TensorPolyFun":
        return TensorPolyFun._raw(self.coords, slots, dict(self.terms))

    def permute(self, order: Sequence[int]) -> "TensorPolyFun":
        """New slot j is old slot order[j]"""
        terms = {tuple(key[o] for o in order): c for key, c in self.terms.items()}
        return TensorPolyFun._raw(self.coords, tuple(self.slots[o] for o in order), terms)

    def swap(self) -> "TensorPolyFun":
        return self.permute(tuple(reversed(range(self.rank))))

    def map_slot(self, slot: int, fn: Callable[[PolyFun], PolyFun]) -> "TensorPolyFun":
        """Apply a linear map of PolyFuns to one slot"""
        cache: Dict[Exps, PolyFun] = {}
        terms: Dict[Tuple[Exps, ...], QScalar] = {}
        for key, c in self.terms.items():
            mono = key[slot]
            image = cache.get(mono)
            if image is None:
                image = cache[mono] = fn(PolyFun._raw(self.coords, {mono: ONE}))
            for e, c2 in image.terms.items():
                _accumulate(terms, key[:slot] + (e,) + key[slot + 1:], c * c2)
        return TensorPolyFun._raw(self.coords, self.slots, terms)

    def map_pair(self, slot: int, fn: Callable[["TensorPolyFun"], "TensorPolyFun"]) -> "TensorPolyFun":
        """Apply a linear map of two-slot tensors to slots (slot, slot + 1)"""
        cache: Dict[Tuple[Exps, Exps], TensorPolyFun] = {}
        terms: Dict[Tuple[Exps, ...], QScalar] = {}
        pair_slots = self.slots[slot:slot + 2]
        for key, c in self.terms.items():
            pair = key[slot:slot + 2]
            image = cache.get(pair)
            if image is None:
                image = cache[pair] = fn(TensorPolyFun._raw(self.coords, pair_slots, {pair: ONE}))
            for k2, c2 in image.terms.items():
                _accumulate(terms, key[:slot] + k2 + key[slot + 2:], c * c2)
        return TensorPolyFun._raw(self.coords, self.slots, terms)

    def expand_slot(self, slot: int, fn: Callable[[PolyFun], "TensorPolyFun"]) -> "TensorPolyFun":
        """Replace one slot by the slots of a tensor-valued linear map"""
        inserted = fn(PolyFun.constant(self.coords)).slots
        cache: Dict[Exps, TensorPolyFun] = {}
        pairs = []
        for key, c in self.terms.items():
            mono = key[slot]
            image = cache.get(mono)
            if image is None:
                image = cache[mono] = fn(PolyFun._raw(self.coords, {mono: ONE}))
            for k2, c2 in image.terms.items():
                pairs.append((key[:slot] + k2 + key[slot + 1:], c * c2))
        slots = self.slots[:slot] + tuple(inserted) + self.slots[slot + 1:]
        return TensorPolyFun.from_terms(self.coords, slots, pairs)

    def contract(self, slot: int, fn: Callable[[PolyFun], QScalar]) -> "TensorPolyFun":
        """Replace a slot by a scalar-valued linear functional"""
        slots = self.slots[:slot] + self.slots[slot + 1:]
        terms: Dict[Tuple[Exps, ...], QScalar] = {}
        cache: Dict[Exps, QScalar] = {}
        for key, c in self.terms.items():
            mono = key[slot]
            value = cache.get(mono)
            if value is None:
                value = cache[mono] = fn(PolyFun._raw(self.coords, {mono: ONE}))
            if value:
                _accumulate(terms, key[:slot] + key[slot + 1:], c * value)
        return TensorPolyFun._raw(self.coords, slots, terms)

    def collapse(self) -> PolyFun:
        """The single factor of a one-slot tensor"""
        if self.rank != 1:
            raise ValueError("collapse needs a one-slot tensor")
        return PolyFun._raw(self.coords, {key[0]: c for key, c in self.terms.items()})

    def map_coefficients(self, fn: Callable[[QScalar], QScalar]) -> "TensorPolyFun":
        terms: Dict[Tuple[Exps, ...], QScalar] = {}
        for key, c in self.terms.items():
            _accumulate(terms, key, fn(c))
        return TensorPolyFun._raw(self.coords, self.slots, terms)

    def __add__(self, other):
        if not isinstance(other, TensorPolyFun):
            return NotImplemented
        if other.coords != self.coords or other.rank != self.rank:
            raise UnsupportedSpaceError("adding tensors of different shape")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(terms, key, c)
        return TensorPolyFun._raw(self.coords, self.slots, terms)

    def __neg__(self):
        return TensorPolyFun._raw(self.coords, self.slots, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorPolyFun):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (QScalar, int, Fraction)):
            c = _scalar(other)
            if not c:
                return TensorPolyFun.zero(self.coords, self.slots)
            return TensorPolyFun._raw(self.coords, self.slots, {k: v * c for k, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorPolyFun):
            return NotImplemented
        return self.coords == other.coords and self.rank == other.rank and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        from .expression import render_tensor
        return f"TensorPolyFun({self.coords.tag}, {render_tensor(self)!r})"

    def __str__(self):
        from .expression import render_tensor
        return render_tensor(self)


def default_slots(n: int) -> Tuple[str, ...]:
    return tuple("xyzuvw"[:n]) if n <= 6 else tuple(f"s{k}" for k in range(n))


# -- operators on functions ------------------------------------------------

def scale_coord(f: PolyFun, i, a) -> PolyFun:
    """f(..., x^i, ...) -> f(..., q^a x^i, ...)"""
    i = f.coords.index(i)
    a = Fraction(a)
    return PolyFun._raw(f.coords, {e: c * q_power(a * e[i]) for e, c in f.terms.items()} if a else dict(f.terms))


def weight_monomials(f, quadratic: Optional[Mapping[Tuple[int, int], int]] = None,
                     linear: Optional[Mapping[int, Fraction]] = None):
    """Multiply each monomial by q^(Q(n) + L(n)); indices are flat exponent positions"""
    quadratic = dict(quadratic or {})
    linear = {k: Fraction(v) for k, v in (linear or {}).items()}

    def exponent(flat: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for (a, b), coeff in quadratic.items():
            total += coeff * flat[a] * flat[b]
        for a, coeff in linear.items():
            total += coeff * flat[a]
        return total

    return weight_by(f, exponent)


def weight_by(f, exponent: Callable[[Sequence[int]], Fraction]):
    """Multiply each monomial by q^exponent(flattened exponents)"""
    if isinstance(f, PolyFun):
        return PolyFun._raw(f.coords, {e: _weighted(c, exponent(e)) for e, c in f.terms.items()})
    if isinstance(f, TensorPolyFun):
        terms = {}
        for key, c in f.terms.items():
            flat = tuple(e for part in key for e in part)
            terms[key] = _weighted(c, exponent(flat))
        return TensorPolyFun._raw(f.coords, f.slots, terms)
    raise TypeError(f"cannot weight {type(f).__name__}")


def _weighted(c: QScalar, exponent: Fraction) -> QScalar:
    return c * q_power(exponent) if exponent else c


def jackson_d(f: PolyFun, i, a: int) -> PolyFun:
    """Jackson derivative D_{q^a} in coordinate i"""
    i = f.coords.index(i)

    def step(exps, c):
        n = exps[i]
        if n == 0:
            return
        out = list(exps)
        out[i] = n - 1
        yield tuple(out), c * qnum(n, a)

    return f.map_terms(step)


def jackson_antideriv(f: PolyFun, i, a: int) -> PolyFun:
    """Formal inverse of the Jackson derivative (lower limit 0 on polynomials)"""
    i = f.coords.index(i)

    def step(exps, c):
        n = exps[i]
        if n == -1:
            raise SingularExponentError(
                f"no formal antiderivative of {f.coords.names[i]}^-1")
        out = list(exps)
        out[i] = n + 1
        yield tuple(out), c / qnum(n + 1, a)

    return f.map_terms(step)


def definite_integral_formal(f: PolyFun, i, a: int, lower="z", upper="y") -> TensorPolyFun:
    """F(upper) (x) 1 - 1 (x) F(lower) with F the formal antiderivative.

    `lower=0` evaluates the second term at x^i = 0 instead; equal limit
    symbols give the zero tensor.
    """
    antideriv = jackson_antideriv(f, i, a)
    one = PolyFun.constant(f.coords)
    if lower == 0:
        at_zero = antideriv.restrict_zero(i)
        return TensorPolyFun.from_factors(antideriv - at_zero, one, slots=(upper, "z"))
    if lower == upper:
        return TensorPolyFun.zero(f.coords, (upper, f"{lower}'"))
    return (TensorPolyFun.from_factors(antideriv, one, slots=(upper, lower))
            - TensorPolyFun.from_factors(one, antideriv, slots=(upper, lower)))


CONJUGATION_CONVENTIONS = ('involutive', 'literal')


def conjugation_factors(coords: CoordinateSystem, convention: str = 'involutive') -> Tuple[QScalar, ...]:
    """Factor c_i in x^i -> c_i x^(conjugate i)"""
    if convention not in CONJUGATION_CONVENTIONS:
        raise ValueError(f"unknown conjugation convention {convention!r}")
    if not coords.has_metric() or coords.tag == 'minkowski':
        raise UnsupportedSpaceError(f"conjugation is not available on {coords.tag}")
    factors = [coords.metric_lower(i, j) for i, j in enumerate(coords.conjugate)]
    if coords.tag == 'plane' and convention == 'involutive':
        # upper entry for x2 so that c1 * c2 = 1
        factors[1] = coords.metric(1, 0)
    return tuple(factors)


def conjugate_fun(f: PolyFun, convention: str = 'involutive') -> PolyFun:
    """Conjugate function: real coefficients, x^i -> c_i x^(conjugate i)"""
    f.require_polynomial("conjugation")
    factors = conjugation_factors(f.coords, convention)
    conj = f.coords.conjugate

    def step(exps, c):
        out = [0] * len(exps)
        coeff = c
        for i, e in enumerate(exps):
            out[conj[i]] = e
            if e:
                coeff = coeff * factors[i] ** e
        yield tuple(out), coeff

    return f.map_terms(step)
