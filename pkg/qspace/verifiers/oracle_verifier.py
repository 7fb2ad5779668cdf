"""
Closed forms on the plane against the rewriting engine
"""

import logging

from ..coords import coordinate_system
from ..manin import VARIANTS, qderiv, star
from ..ncalg import action_oracle, builtin_space, check_confluence, extract_l_action, nc_product
from .base_verifier import BaseVerifier
from .samples import monomials, random_polyfun

logger = logging.getLogger(__name__)


class OracleVerifier(BaseVerifier):
    """Derivative actions, star products and Leibniz rules by brute-force normal ordering"""

    description = "closed-form plane operations equal the rewriting oracle"

    SYSTEMS = (
        ('plane', 'L'), ('plane', 'Lbar'), ('plane', 'R'), ('plane', 'Rbar'),
        ('euclid3', None), ('euclid4', None), ('minkowski', None),
    )

    def __init__(self, params=None):
        super().__init__("oracle", params)

    def verify(self):
        plane = coordinate_system('plane')
        grid = monomials(plane, self.params.degree)

        for tag, calculus in self.SYSTEMS:
            case = f"{tag}/{calculus or 'coordinates'}"
            self.guarded('confluence', case, lambda: self.check(
                'confluence', check_confluence(builtin_space(tag, calculus)), [], case))

        for action in VARIANTS:
            for which in (1, 2):
                for f in grid:
                    case = f"d^{which} ({action}) on {f}"
                    self.guarded('derivative_oracle', case, lambda: self.check(
                        'derivative_oracle', qderiv(f, which, action),
                        action_oracle([which - 1], f, action), case))
        logger.info(f"✓ Checked {len(grid)} monomials against the derivative oracle")

        rs = builtin_space('plane')
        half = max(1, self.params.degree // 2)
        small = monomials(plane, half)
        for f in small:
            for g in small:
                case = f"{f} * {g}"
                self.guarded('star_oracle', case, lambda: self.check(
                    'star_oracle', star(f, g), nc_product(f, g, rs), case))

        rng = self.rng()
        for _ in range(self.params.samples):
            f = random_polyfun(rng, plane, half)
            g = random_polyfun(rng, plane, half)
            for variant in ('L', 'Lbar'):
                for which in (1, 2):
                    case = f"d^{which} ({variant}) on ({f}) * ({g})"
                    self.guarded('leibniz', case, lambda: self._leibniz(f, g, which, variant, case))

    def _leibniz(self, f, g, which, variant, case):
        """d^i (f g) = (d^i f) g + sum_j (L^i_j f)(d^j g)"""
        lhs = qderiv(star(f, g), which, variant)
        rhs = star(qderiv(f, which, variant), g)
        for j in range(2):
            rhs = rhs + star(extract_l_action(which - 1, j, f, variant), qderiv(g, j + 1, variant))
        self.check('leibniz', lhs, rhs, case)
