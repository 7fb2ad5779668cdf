"""
Coordinate systems of the supported quantum spaces
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .errors import UnknownCoordinateError, UnsupportedSpaceError
from .qscalar import ONE, QScalar, q_power

logger = logging.getLogger(__name__)

SPACE_TAGS = ('plane', 'euclid3', 'euclid4', 'minkowski', 'minkowski_radial')


@dataclass(frozen=True)
class CoordinateSystem:
    """Ordered coordinate labels with conjugate index, metric and normal order.

    `normal_order` lists coordinate indices in the order their generators
    appear in a normal-ordered word (the W map).  `metric_entries` holds the
    upper metric g^{ij}, nonzero only on (i, conjugate[i]) pairs.
    """

    tag: str
    names: Tuple[str, ...]
    conjugate: Tuple[int, ...]
    normal_order: Tuple[int, ...]
    metric_entries: Tuple[Tuple[Tuple[int, int], QScalar], ...] = ()
    lowered_sign: int = 1
    _index: Dict[str, int] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        self._index.update({name: i for i, name in enumerate(self.names)})
        if sorted(self.normal_order) != list(range(len(self.names))):
            raise ValueError(f"{self.tag}: normal order is not a permutation")
        for i, j in enumerate(self.conjugate):
            if self.conjugate[j] != i:
                raise ValueError(f"{self.tag}: conjugate index is not an involution")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, coord) -> int:
        """Resolve a label or an integer index"""
        if isinstance(coord, int):
            if 0 <= coord < self.dim:
                return coord
            raise UnknownCoordinateError(str(coord))
        if coord not in self._index:
            raise UnknownCoordinateError(coord)
        return self._index[coord]

    def metric(self, i: int, j: int) -> QScalar:
        """Upper metric g^{ij}"""
        for key, value in self.metric_entries:
            if key == (i, j):
                return value
        return QScalar(0)

    def metric_lower(self, i: int, j: int) -> QScalar:
        """Lowered metric g_{ij}; the plane's lowered epsilon carries a sign flip"""
        return self.lowered_sign * self.metric(i, j)

    def has_metric(self) -> bool:
        return bool(self.metric_entries)


def _metric(entries: Dict[Tuple[int, int], QScalar]):
    return tuple(sorted(entries.items(), key=lambda item: item[0]))


@lru_cache(maxsize=None)
def coordinate_system(tag: str) -> CoordinateSystem:
    """Built-in coordinate system for a space tag"""
    half = Fraction(1, 2)
    if tag == 'plane':
        return CoordinateSystem(
            'plane', ('x1', 'x2'), (1, 0), (0, 1),
            _metric({(0, 1): q_power(-half), (1, 0): -q_power(half)}),
            lowered_sign=-1)
    if tag == 'euclid3':
        return CoordinateSystem(
            'euclid3', ('xp', 'x3', 'xm'), (2, 1, 0), (0, 1, 2),
            _metric({(0, 2): -q_power(1), (1, 1): ONE, (2, 0): -q_power(-1)}))
    if tag == 'euclid4':
        return CoordinateSystem(
            'euclid4', ('x1', 'x2', 'x3', 'x4'), (3, 2, 1, 0), (3, 2, 1, 0),
            _metric({(0, 3): q_power(-1), (1, 2): ONE, (2, 1): ONE, (3, 0): q_power(1)}))
    if tag == 'minkowski':
        return CoordinateSystem(
            'minkowski', ('xp', 'x0', 'x3', 'xm'), (3, 1, 2, 0), (0, 1, 2, 3),
            _metric({(1, 1): -ONE, (2, 2): ONE, (0, 3): -q_power(1), (3, 0): -q_power(-1)}))
    if tag == 'minkowski_radial':
        return CoordinateSystem(
            'minkowski_radial', ('r2', 'xp', 'x30', 'xm'), (0, 1, 2, 3), (0, 1, 2, 3))
    raise UnsupportedSpaceError(f"Unknown space tag: {tag}")
