"""
Crossing-generated variants against the hand-coded ones, plus conjugation
and the hatted/unhatted proportionality
"""

import logging

from ..coords import coordinate_system
from ..manin import (EXP_VARIANTS, VARIANTS, antipode, antipode_generated, braided_product,
                     braided_product_generated, pairing, pairing_generated, qderiv,
                     qderiv_generated, qexp, qexp_generated, sign_rules, star, translate,
                     translate_generated)
from ..ncalg import builtin_space, relation_defect
from ..polyfun import TensorPolyFun, conjugate_fun
from ..qscalar import q_power
from .base_verifier import BaseVerifier
from .samples import monomials, random_polyfun

logger = logging.getLogger(__name__)


class CrossingVerifier(BaseVerifier):
    description = "substitution-generated variants equal the tabulated ones"

    def __init__(self, params=None):
        super().__init__("crossing", params)

    def verify(self):
        plane = coordinate_system('plane')
        grid = monomials(plane, self.params.degree)
        small = monomials(plane, max(1, self.params.degree // 2))

        for variant in VARIANTS:
            for f in grid:
                case = f"{variant}: {f}"
                self.guarded('translate', case, lambda: self.check(
                    'translate', translate_generated(f, variant), translate(f, variant), case))
                self.guarded('antipode', case, lambda: self.check(
                    'antipode', antipode_generated(f, variant), antipode(f, variant), case))
                for which in (1, 2):
                    dcase = f"{variant}: d^{which} on {f}"
                    self.guarded('derivative', dcase, lambda: self.check(
                        'derivative', qderiv_generated(f, which, variant), qderiv(f, which, variant), dcase))
            for f in small:
                for g in small:
                    F = TensorPolyFun.from_factors(f, g)
                    case = f"{variant}: {f} (x) {g}"
                    self.guarded('braided_product', case, lambda: self.check(
                        'braided_product', braided_product_generated(F, variant),
                        braided_product(F, variant), case))
            logger.info(f"✓ Checked the generated {variant} variant")

        for d in small:
            for g in small:
                case = f"<{d}, {g}>"
                self.guarded('pairing', case, lambda: self.check(
                    'pairing', pairing_generated(d, g, 'Lbar,R'), pairing(d, g, 'Lbar,R'), case))

        N = self.params.N
        for variant in EXP_VARIANTS:
            case = f"{variant}: N = {N}"
            self.guarded('exponential', case, lambda: self.check(
                'exponential', qexp_generated(N, variant), qexp(N, variant), case))

        rng = self.rng()
        for _ in range(self.params.samples):
            f = random_polyfun(rng, plane, 3)
            g = random_polyfun(rng, plane, 3)
            case = f"({f}), ({g})"
            self.guarded('conjugation', case, lambda: self.check(
                'conjugation', conjugate_fun(star(f, g)), star(conjugate_fun(g), conjugate_fun(f)), case))

        # unhatted left rules become the hatted right rules under d = hat * q^-3 dh
        factor = sign_rules('plane').hat * q_power(-3)
        self.note('hat_proportionality', 'hat_sign', sign_rules('plane').hat)
        self.guarded('hat_proportionality', 'plane L -> R', lambda: self.check(
            'hat_proportionality',
            [str(p) for p in relation_defect(builtin_space('plane', 'L'), builtin_space('plane', 'R'), factor)],
            [], 'plane L -> R'))
