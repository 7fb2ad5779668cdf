"""
Braided Hopf structure of the plane translations
"""

import logging

from ..coords import coordinate_system
from ..manin import VARIANTS, antipode, braided_product, braided_tensor_mul, merge, star, translate
from ..polyfun import PolyFun, TensorPolyFun
from .base_verifier import BaseVerifier
from .samples import monomials, random_polyfun

logger = logging.getLogger(__name__)


class HopfVerifier(BaseVerifier):
    """Counit, antipode, coassociativity and the two multiplicativity laws"""

    description = "q-translations and antipodes form a braided Hopf algebra"

    def __init__(self, params=None):
        super().__init__("hopf", params)

    def verify(self):
        plane = coordinate_system('plane')
        grid = monomials(plane, self.params.degree)
        for variant in VARIANTS:
            for f in grid:
                case = f"{variant}: {f}"
                self.guarded('counit', case, lambda: self._counit(f, variant, case))
                self.guarded('antipode', case, lambda: self._antipode(f, variant, case))
                self.guarded('coassociativity', case, lambda: self._coassociativity(f, variant, case))
            logger.info(f"✓ Checked {len(grid)} monomials for the {variant} translation")

        rng = self.rng()
        half = max(1, self.params.degree // 2)
        for _ in range(self.params.samples):
            f = random_polyfun(rng, plane, half)
            g = random_polyfun(rng, plane, half)
            for variant in VARIANTS:
                case = f"{variant}: ({f}), ({g})"
                self.guarded('homomorphism', case, lambda: self.check(
                    'homomorphism', translate(star(f, g), variant),
                    braided_tensor_mul(translate(f, variant), translate(g, variant), variant), case))
                self.guarded('antipode_multiplicativity', case, lambda: self._antipode_product(
                    f, g, variant, case))

    def _counit(self, f, variant, case):
        T = translate(f, variant)
        self.check('counit', T.contract(0, lambda h: h.counit()).collapse(), f, case)
        self.check('counit', T.contract(1, lambda h: h.counit()).collapse(), f, case)

    def _antipode(self, f, variant, case):
        """S(f_(1)) f_(2) = f(0)"""
        T = translate(f, variant).map_slot(0, lambda h: antipode(h, variant))
        self.check('antipode', merge(T), PolyFun.constant(f.coords, f.counit()), case)

    def _coassociativity(self, f, variant, case):
        left = translate(f, variant, ('u', 'z')).expand_slot(0, lambda h: translate(h, variant, ('x', 'y')))
        right = translate(f, variant, ('x', 'u')).expand_slot(1, lambda h: translate(h, variant, ('y', 'z')))
        self.check('coassociativity', left, right, case)

    def _antipode_product(self, f, g, variant, case):
        """S(f g) is the braided swap of S(f) (x) S(g), multiplied out"""
        crossed = braided_product(TensorPolyFun.from_factors(antipode(f, variant), antipode(g, variant)), variant)
        self.check('antipode_multiplicativity', antipode(star(f, g), variant), merge(crossed), case)
