"""
Inputs shared by the verification suites: monomial grids, seeded random
polynomials and batteries of decaying lattice functions.
"""

import itertools
from fractions import Fraction
from typing import Iterator, List, Tuple

import numpy as np

from ..coords import CoordinateSystem
from ..polyfun import PolyFun
from ..qint import LatticeFun, gaussian
from ..qscalar import QScalar, q_power

# coefficient pool for random polynomials
_COEFF_POWERS = (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1))


def exponent_vectors(dim: int, max_degree: int) -> Iterator[Tuple[int, ...]]:
    """All non-negative exponent vectors of total degree <= max_degree, by degree"""
    for total in range(max_degree + 1):
        for exps in itertools.product(range(total + 1), repeat=dim):
            if sum(exps) == total:
                yield exps


def monomials(coords: CoordinateSystem, max_degree: int) -> List[PolyFun]:
    return [PolyFun.monomial(coords, exps) for exps in exponent_vectors(coords.dim, max_degree)]


def random_coefficient(rng: np.random.Generator) -> QScalar:
    scale = int(rng.integers(1, 4)) * int(rng.choice((-1, 1)))
    return q_power(_COEFF_POWERS[int(rng.integers(len(_COEFF_POWERS)))]) * scale


def random_polyfun(rng: np.random.Generator, coords: CoordinateSystem, max_degree: int,
                   terms: int = 3) -> PolyFun:
    """A few random monomials of total degree <= max_degree with q-power coefficients"""
    pool = list(exponent_vectors(coords.dim, max_degree))
    picks = rng.choice(len(pool), size=min(terms, len(pool)), replace=False)
    return PolyFun.from_terms(coords, ((pool[int(i)], random_coefficient(rng)) for i in sorted(picks)))


# (label, per-coordinate (scale, center, power)) of the Gaussian batteries
_SHAPES = (
    (1.0, 0.0, 0),
    (0.8, 0.3, 0),
    (1.3, -0.4, 0),
    (1.0, 0.2, 1),
    (0.7, 0.5, 2),
)


def gaussian_factors(dim: int, index: int) -> Tuple[Tuple[float, float, int], ...]:
    """Deterministic parameters of the index-th factorized test function"""
    return tuple(_SHAPES[(index + 2 * i) % len(_SHAPES)] for i in range(dim))


def gaussian_battery(dim: int, count: int) -> List[Tuple[str, LatticeFun]]:
    out = []
    for index in range(count):
        shape = gaussian_factors(dim, index)
        factors = [gaussian(scale, center, power) for scale, center, power in shape]
        label = " * ".join(f"g({s}, {c}, {p})" for s, c, p in shape)
        out.append((label, LatticeFun.product(*factors)))
    return out


def plane_test_functions() -> List[Tuple[str, LatticeFun]]:
    """Decaying plane functions, separable and not"""
    return [
        ("exp(-x1^2 - x2^2)",
         LatticeFun.from_callable(lambda x1, x2: np.exp(-x1 ** 2 - x2 ** 2), 2)),
        ("exp(-(x1 - 0.3)^2 - (x2 + 0.5)^2)",
         LatticeFun.from_callable(lambda x1, x2: np.exp(-(x1 - 0.3) ** 2 - (x2 + 0.5) ** 2), 2)),
        ("x1 x2 exp(-x1^2 - 2 x2^2)",
         LatticeFun.from_callable(lambda x1, x2: x1 * x2 * np.exp(-x1 ** 2 - 2 * x2 ** 2), 2)),
        ("exp(-x1^2 - x2^2 - x1 x2)",
         LatticeFun.from_callable(lambda x1, x2: np.exp(-x1 ** 2 - x2 ** 2 - x1 * x2), 2)),
        ("(1 + x1^2) exp(-x1^2 - x2^2 / 2)",
         LatticeFun.from_callable(lambda x1, x2: (1 + x1 ** 2) * np.exp(-x1 ** 2 - x2 ** 2 / 2), 2)),
    ]
