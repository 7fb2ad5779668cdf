"""
Exponentials as dual bases: completeness, eigen-equations, q-Taylor and addition laws
"""

import logging

from ..coords import coordinate_system
from ..manin import (EXP_VARIANTS, TAYLOR_TRANSLATION, exp_addition_sides, exp_completeness,
                     exp_contract, exp_dual_completeness, exp_eigen_sides,
                     inverse_exponential_sides, qexp, translate)
from .base_verifier import BaseVerifier
from .samples import monomials

logger = logging.getLogger(__name__)


class DualityVerifier(BaseVerifier):
    description = "q-exponentials are dual bases that translate and diagonalize derivatives"

    def __init__(self, params=None):
        super().__init__("duality", params)

    def verify(self):
        N = self.params.N
        plane = coordinate_system('plane')
        grid = monomials(plane, N)
        self.note('completeness', 'truncation', N)

        for variant in EXP_VARIANTS:
            E = qexp(N, variant)
            for u in grid:
                case = f"{variant}: {u}"
                self.guarded('completeness', case, lambda: self.check(
                    'completeness', exp_completeness(E, u, variant), u, case))
                self.guarded('dual_completeness', case, lambda: self.check(
                    'dual_completeness', exp_dual_completeness(E, u, variant), u, case))
                self.guarded('q_taylor', case, lambda: self.check(
                    'q_taylor', exp_contract(E, u, variant),
                    translate(u, TAYLOR_TRANSLATION[variant]), case))
            for which in (1, 2):
                case = f"{variant}: d^{which}"
                self.guarded('eigen', case, lambda: self.check(
                    'eigen', *exp_eigen_sides(N, variant, which), case))
            case = f"{variant}: N = {N}"
            self.guarded('addition', case, lambda: self.check(
                'addition', *exp_addition_sides(N, variant), case))
            logger.info(f"✓ Checked the {variant} exponential through degree {N}")

        case = f"plane: N = {N}"
        self.guarded('inverse_exponential', case, lambda: self.check(
            'inverse_exponential', *inverse_exponential_sides(N, 'plane'), case))
