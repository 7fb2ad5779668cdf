"""
Operator pipelines shared by the symbolic and the numeric engines.

An Operator is a sum of Terms; a Term is a coefficient times a composition of
primitives written in reading order, so `Term(c, (A, B, C))` means
c * A(B(C(f))).  Symbolically the primitives act on PolyFun; numerically they
act on vectorized callables `points (dim, M) -> values (M,)`, where
JacksonInverse becomes the whole-line Jackson integral.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Sequence, Tuple, Union

import numpy as np

from .errors import DivergenceError
from .polyfun import PolyFun, jackson_antideriv, jackson_d, scale_coord
from .qscalar import ONE, QScalar, render_scalar

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]


def _lattice_base(q: float, a) -> float:
    return q ** float(a)


@dataclass(frozen=True)
class Scale:
    """q^(a n_i): f(x^i) -> f(q^a x^i)"""

    coord: int
    a: Fraction

    def touches(self) -> Tuple[int, ...]:
        return (self.coord,)

    def apply(self, f: PolyFun) -> PolyFun:
        return scale_coord(f, self.coord, self.a)

    def numeric(self, g: Evaluator, q: float, trunc_K: int) -> Evaluator:
        factor = _lattice_base(q, self.a)
        coord = self.coord

        def scaled(points):
            moved = np.array(points, dtype=float, copy=True)
            moved[coord] *= factor
            return g(moved)
        return scaled

    def on(self, coord: int) -> "Scale":
        return Scale(coord, self.a)

    def label(self, names: Sequence[str]) -> str:
        return f"S[{names[self.coord]}; {self.a}]"


@dataclass(frozen=True)
class MulMonomial:
    """Multiplication by a (Laurent) monomial"""

    exps: Tuple[int, ...]

    def touches(self) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exps) if e)

    def apply(self, f: PolyFun) -> PolyFun:
        return f * PolyFun.monomial(f.coords, self.exps)

    def numeric(self, g: Evaluator, q: float, trunc_K: int) -> Evaluator:
        exps = self.exps

        def multiplied(points):
            values = g(points)
            for row, e in zip(points, exps):
                if e:
                    values = values * np.asarray(row, dtype=float) ** e
            return values
        return multiplied

    def label(self, names: Sequence[str]) -> str:
        parts = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(self.exps) if e]
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class JacksonD:
    """Jackson derivative D_{q^a} in one coordinate"""

    coord: int
    a: int

    def touches(self) -> Tuple[int, ...]:
        return (self.coord,)

    def apply(self, f: PolyFun) -> PolyFun:
        return jackson_d(f, self.coord, self.a)

    def numeric(self, g: Evaluator, q: float, trunc_K: int) -> Evaluator:
        step = _lattice_base(q, self.a)
        coord = self.coord

        def difference_quotient(points):
            points = np.asarray(points, dtype=float)
            x = points[coord]
            if np.any(x == 0.0):
                raise ValueError("x = 0 is not a lattice point of a Jackson derivative")
            moved = np.array(points, copy=True)
            moved[coord] *= step
            return (g(points) - g(moved)) / ((1.0 - step) * x)
        return difference_quotient

    def on(self, coord: int) -> "JacksonD":
        return JacksonD(coord, self.a)

    def label(self, names: Sequence[str]) -> str:
        return f"D[{names[self.coord]}; q^{self.a}]"


@dataclass(frozen=True)
class JacksonInverse:
    """Inverse Jackson derivative: formal antiderivative, or whole-line sum numerically"""

    coord: int
    a: int

    def touches(self) -> Tuple[int, ...]:
        return (self.coord,)

    def apply(self, f: PolyFun) -> PolyFun:
        return jackson_antideriv(f, self.coord, self.a)

    def numeric(self, g: Evaluator, q: float, trunc_K: int) -> Evaluator:
        """Whole-line sum on the lattice through |x^i|, hence log-periodic in x^i"""
        coord = self.coord
        qa = _lattice_base(q, self.a)
        prefactor = qa - 1.0 if self.a > 0 else 1.0 - qa
        ratio = _lattice_base(q, abs(self.a))
        ks = np.arange(-trunc_K, trunc_K + 1, dtype=float)
        steps = ratio ** ks

        def whole_line(points):
            points = np.asarray(points, dtype=float)
            ref = np.abs(points[coord])
            if np.any(ref == 0.0):
                raise ValueError("whole-line reference point must be nonzero")
            lattice = (ref[:, None] * steps[None, :]).ravel()
            width = steps.size
            expanded = np.repeat(points, width, axis=1)
            total = np.zeros(lattice.size)
            for sign in (1.0, -1.0):
                expanded[coord] = sign * lattice
                total = total + g(expanded)
            sums = (total * lattice).reshape(-1, width).sum(axis=1)
            return prefactor * sums
        return whole_line

    def on(self, coord: int) -> "JacksonInverse":
        return JacksonInverse(coord, self.a)

    def label(self, names: Sequence[str]) -> str:
        return f"Dinv[{names[self.coord]}; q^{self.a}]"


Primitive = Union[Scale, MulMonomial, JacksonD, JacksonInverse]


@dataclass(frozen=True)
class Term:
    coeff: QScalar
    ops: Tuple[Primitive, ...] = ()

    def apply(self, f: PolyFun) -> PolyFun:
        for op in reversed(self.ops):
            f = op.apply(f)
            if f.is_zero():
                return f
        return f * self.coeff

    def chain(self, coord: int) -> Tuple[Primitive, ...]:
        """Primitives acting on one coordinate, in reading order, moved to coordinate 0"""
        out: List[Primitive] = []
        for op in self.ops:
            if isinstance(op, MulMonomial):
                e = op.exps[coord] if coord < len(op.exps) else 0
                if e:
                    out.append(MulMonomial((e,)))
            elif op.coord == coord:
                out.append(op.on(0))
        return tuple(out)

    def vanishes_on_whole_line(self, dim: int) -> bool:
        return any(chain_vanishes(self.chain(i)) for i in range(dim))

    def label(self, names: Sequence[str]) -> str:
        body = " ".join(op.label(names) for op in self.ops) or "id"
        return f"({render_scalar(self.coeff)}) {body}"


def chain_vanishes(chain: Sequence[Primitive]) -> bool:
    """Structural zeros of one-coordinate chains under whole-line integration.

    A Jackson derivative applied after a whole-line integral on the same
    lattice differentiates a log-periodic function; a whole-line integral of
    a Jackson derivative telescopes. Scalings in between do not matter.
    """
    # chain is in reading order: index 0 is applied last
    for pos, op in enumerate(chain):
        if isinstance(op, JacksonD):
            for inner in chain[pos + 1:]:
                if isinstance(inner, Scale):
                    continue
                if isinstance(inner, JacksonInverse) and abs(op.a) % abs(inner.a) == 0:
                    return True
                break
        if isinstance(op, JacksonInverse):
            for inner in chain[pos + 1:]:
                if isinstance(inner, Scale):
                    continue
                if isinstance(inner, JacksonD) and abs(inner.a) == abs(op.a):
                    return True
                break
    return False


def chain_diverges(chain: Sequence[Primitive]) -> bool:
    """Two whole-line integrals on one coordinate sum a log-periodic function"""
    return sum(1 for op in chain if isinstance(op, JacksonInverse)) > 1


class Operator:
    """Finite sum of coefficient-weighted compositions of primitives"""

    __slots__ = ('terms',)

    def __init__(self, terms: Iterable[Term] = ()):
        self.terms = tuple(t for t in terms if t.coeff)

    @classmethod
    def identity(cls) -> "Operator":
        return cls((Term(ONE, ()),))

    @classmethod
    def zero(cls) -> "Operator":
        return cls(())

    @classmethod
    def of(cls, *ops: Primitive, coeff=ONE) -> "Operator":
        coeff = coeff if isinstance(coeff, QScalar) else QScalar(coeff)
        return cls((Term(coeff, tuple(ops)),))

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.terms + other.terms)

    def __neg__(self) -> "Operator":
        return Operator(Term(-t.coeff, t.ops) for t in self.terms)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def scaled(self, c) -> "Operator":
        c = c if isinstance(c, QScalar) else QScalar(c)
        return Operator(Term(t.coeff * c, t.ops) for t in self.terms)

    def compose(self, other: "Operator") -> "Operator":
        """self after other"""
        return Operator(Term(a.coeff * b.coeff, a.ops + b.ops) for a in self.terms for b in other.terms)

    def __matmul__(self, other: "Operator") -> "Operator":
        return self.compose(other)

    def __len__(self):
        return len(self.terms)

    def apply(self, f: PolyFun) -> PolyFun:
        total = PolyFun.zero(f.coords)
        for term in self.terms:
            total = total + term.apply(f)
        return total

    def whole_line_reduced(self, dim: int) -> "Operator":
        """Drop the terms that vanish structurally under whole-line integration"""
        kept = [t for t in self.terms if not t.vanishes_on_whole_line(dim)]
        if len(kept) != len(self.terms):
            logger.debug(f"Dropped {len(self.terms) - len(kept)} vanishing whole-line terms")
        return Operator(kept)

    def numeric(self, g: Evaluator, q: float, trunc_K: int) -> Evaluator:
        """Evaluator of the operator applied to g, JacksonInverse read as whole-line sums"""
        parts = []
        for term in self.terms:
            h = g
            for op in reversed(term.ops):
                h = op.numeric(h, q, trunc_K)
            parts.append((term.coeff.evaluate(q), h))

        def combined(points):
            points = np.asarray(points, dtype=float)
            total = np.zeros(points.shape[1])
            for c, h in parts:
                total = total + c * h(points)
            return total
        return combined

    def render(self, names: Sequence[str]) -> List[str]:
        return [t.label(names) for t in self.terms]

    def __repr__(self):
        return f"Operator({len(self.terms)} terms)"


def check_chain(chain: Sequence[Primitive]):
    if chain_diverges(chain):
        raise DivergenceError("whole-line integral of an already integrated coordinate")

