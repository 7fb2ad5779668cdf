"""
Minkowski-space integration: volume pipelines, inverse-derivative series
and the ordering reversal
"""

import logging

from ..minkowski import (DIRECTIONS, XM, XP, minkowski, mink_deriv, mink_deriv_inverse,
                         mink_ordering_reverse, mink_whole_space_integral, ordering_reverse_terms,
                         paired_weight)
from ..operators import JacksonD, JacksonInverse, Operator
from ..polyfun import PolyFun
from ..qint import numeric_operator_apply
from .base_verifier import BaseVerifier
from .samples import gaussian_battery, random_polyfun

logger = logging.getLogger(__name__)

BATTERY_SIZE = 10
POINTS = (0.7, 1.3, -2.1)


class MinkowskiVerifier(BaseVerifier):
    description = "Minkowski volume pipelines agree and the inverse derivatives invert"

    def __init__(self, params=None):
        super().__init__("mink-volume", params)

    def verify(self):
        ip = self.params.integral()
        q = ip.q_real
        prefactor_ratio = q ** 16
        self.note('main_text_ratio', 'expected', prefactor_ratio)

        for label, f in gaussian_battery(4, BATTERY_SIZE):
            def volumes():
                closed = mink_whole_space_integral(f, ip, 'closed_form').value
                nested = mink_whole_space_integral(f, ip, 'nested_series').value
                main = mink_whole_space_integral(f, ip, 'main_text').value
                self.check_close('nested_series', nested, closed, label, rel=1e-6)
                self.check_close('main_text_ratio', closed, prefactor_ratio * main, label, rel=1e-6)

            self.guarded('nested_series', label, volumes)
        logger.info(f"✓ Compared the volume pipelines on {BATTERY_SIZE} functions")

        for label, g in gaussian_battery(1, 3):
            derivative_of_integral = numeric_operator_apply(
                Operator.of(JacksonD(0, 2), JacksonInverse(0, 2)), g, ip)
            integral_of_derivative = numeric_operator_apply(
                Operator.of(JacksonInverse(0, 2), JacksonD(0, 2)), g, ip)
            for x in POINTS:
                case = f"{label} at {x}"
                self.guarded('derivative_of_whole_line', case, lambda: self.check_close(
                    'derivative_of_whole_line', float(derivative_of_integral(x)[0]), 0.0, case,
                    rel=0.0, abs_tol=1e-10))
                self.guarded('whole_line_of_derivative', case, lambda: self.check_close(
                    'whole_line_of_derivative', float(integral_of_derivative(x)[0]), 0.0, case,
                    rel=0.0, abs_tol=1e-10))

        coords = minkowski()
        rng = self.rng()
        for _ in range(self.params.samples):
            f = random_polyfun(rng, coords, 3)
            for which in DIRECTIONS:
                case = f"direction {which}: {f}"
                self.guarded('round_trip', case, lambda: self.check(
                    'round_trip', mink_deriv(mink_deriv_inverse(f, which), which), f, case))

            case = str(f)
            self.guarded('reversal_terminates', case, lambda: self._reversal(f, case))

        fixed = (PolyFun.monomial(coords, (2, 0, 1, 0)) + PolyFun.monomial(coords, (1, 3, 0, 0))
                 + PolyFun.monomial(coords, (1, 0, 0, 2), 3))
        self.guarded('reversal_fixed_point', str(fixed), lambda: self.check(
            'reversal_fixed_point', mink_ordering_reverse(fixed), fixed, str(fixed)))

    def _reversal(self, f, case):
        """Parts stop at min(deg xp, deg xm); the first part is the paired weight"""
        parts = ordering_reverse_terms(f)
        bound = min(f.coord_degree(XP), f.coord_degree(XM))
        self.check_true('reversal_terminates', max(parts, default=0) <= bound, case, sorted(parts))
        self.check('reversal_leading_part', parts.get(0, PolyFun.zero(f.coords)), paired_weight(f), case)
