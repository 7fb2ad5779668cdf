"""
Dual pairing table and the pairing as a derivative action at zero
"""

from ..coords import coordinate_system
from ..manin import PAIRING_VARIANTS, ordering_flip, pairing, pairing_by_action
from ..polyfun import PolyFun
from ..qscalar import ZERO, qfact
from .base_verifier import BaseVerifier
from .samples import exponent_vectors, random_polyfun


class PairingVerifier(BaseVerifier):
    description = "<d_1^n1 d_2^n2, (x2)^m2 (x1)^m1> = delta [[n1]]! [[n2]]! and the action form"

    def __init__(self, params=None):
        super().__init__("pairing", params)

    def verify(self):
        plane = coordinate_system('plane')
        vectors = [v for v in exponent_vectors(2, 2 * self.params.degree)
                   if max(v) <= self.params.degree]
        for n in vectors:
            d = PolyFun.monomial(plane, n)
            for m in vectors:
                # (x2)^m2 (x1)^m1 is the reversed-order monomial
                g = ordering_flip(PolyFun.monomial(plane, m), 'inverse')
                expected = qfact(n[0], 2) * qfact(n[1], 2) if n == m else ZERO
                case = f"n = {n}, m = {m}"
                self.guarded('table', case, lambda: self.check(
                    'table', pairing(d, g, 'L,Rbar'), expected, case))
                self.guarded('table_by_action', case, lambda: self.check(
                    'table_by_action', pairing_by_action(d, g, 'L,Rbar'), expected, case))

        rng = self.rng()
        for _ in range(self.params.samples):
            d = random_polyfun(rng, plane, 3)
            g = random_polyfun(rng, plane, 3)
            for variant in PAIRING_VARIANTS:
                case = f"{variant}: <{d}, {g}>"
                self.guarded('action_form', case, lambda: self.check(
                    'action_form', pairing_by_action(d, g, variant), pairing(d, g, variant), case))
