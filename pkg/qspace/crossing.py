"""
Crossing substitutions between the four plane variants.

The closed forms of one variant (L) generate the others:

  horizontal  L -> Lbar     U^-1 . C . O . C . U, C = index swap and q -> 1/q
  diagonal    L -> Rbar,  Lbar -> R     I . O . I, I = index swap
  vertical    L -> R      U^-1 . swap . Q . O . Q . U, Q = q -> 1/q

Input transforms act on the argument (a PolyFun or a tensor), output
transforms act slot-wise on the result.  Tensor-valued results of the
diagonal and vertical substitutions also exchange their two slots.
"""

import logging
from typing import Callable, Union

from .errors import UnsupportedSpaceError
from .polyfun import PolyFun, TensorPolyFun, weight_by
from .qscalar import QScalar

logger = logging.getLogger(__name__)

Value = Union[PolyFun, TensorPolyFun, QScalar]
Map = Callable[[Value], Value]

CROSSINGS = ('horizontal', 'diagonal', 'vertical')


def _require_plane(f):
    if f.coords.tag != 'plane':
        raise UnsupportedSpaceError(f"ordering flips are only tabulated for the plane, not {f.coords.tag}")


def u_hat(f, inverse: bool = False):
    """U = q^(n1 n2) on every slot; U^-1 with inverse=True"""
    _require_plane(f)
    sign = -1 if inverse else 1
    if isinstance(f, PolyFun):
        return weight_by(f, lambda n: sign * n[0] * n[1])
    return weight_by(f, lambda n: sign * sum(n[k] * n[k + 1] for k in range(0, len(n), 2)))


def invert_q(value: Value) -> Value:
    if isinstance(value, QScalar):
        return value.invert_q()
    if isinstance(value, PolyFun):
        return value.invert_q()
    return value.map_coefficients(lambda c: c.invert_q())


def index_swap(value: Value) -> Value:
    if isinstance(value, QScalar):
        return value
    if isinstance(value, PolyFun):
        return value.index_swap()
    swapped = value
    for slot in range(value.rank):
        swapped = swapped.map_slot(slot, lambda f: f.index_swap())
    return swapped


def conjugate_indices(value: Value) -> Value:
    """C: index swap together with q -> 1/q"""
    return invert_q(index_swap(value))


def _swap_slots(value: Value) -> Value:
    if isinstance(value, TensorPolyFun) and value.rank == 2:
        return value.swap().relabel_slots(value.slots)
    return value


def _flip(value: Value, inverse: bool) -> Value:
    return value if isinstance(value, QScalar) else u_hat(value, inverse=inverse)


def horizontal(op: Map) -> Map:
    def crossed(f):
        return _flip(conjugate_indices(op(conjugate_indices(_flip(f, False)))), True)
    return crossed


def diagonal(op: Map) -> Map:
    def crossed(f):
        return _swap_slots(index_swap(op(index_swap(f))))
    return crossed


def vertical(op: Map) -> Map:
    def crossed(f):
        return _flip(_swap_slots(invert_q(op(invert_q(_flip(f, False))))), True)
    return crossed


def crossing(kind: str) -> Callable[[Map], Map]:
    if kind not in CROSSINGS:
        raise ValueError(f"unknown crossing {kind!r}, expected one of {CROSSINGS}")
    return {'horizontal': horizontal, 'diagonal': diagonal, 'vertical': vertical}[kind]
