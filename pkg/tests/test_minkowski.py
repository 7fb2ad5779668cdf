import logging

import pytest

from qspace.config import IntegralParams
from qspace.errors import LaurentInputError, SeriesTerminationError, UnsupportedSpaceError
from qspace.minkowski import (DIRECTIONS, MODES, XM, XP, minkowski, mink_deriv, mink_deriv_inverse,
                              mink_inverse_series, mink_ordering_reverse, mink_whole_space_integral,
                              nested_operator, ordering_reverse_terms, paired_weight, volume_operator,
                              weighted_degree)
from qspace.polyfun import PolyFun
from qspace.qint import LatticeFun, gaussian
from qspace.qscalar import q_power

from strategies import monomial

SAMPLES = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 1, 0, 1), (1, 0, 1, 0)]


def mono(*exps, c=1):
    return monomial('minkowski_radial', *exps, c=c)


def battery_function():
    return LatticeFun.product(gaussian(1.0, 0.0, 0), gaussian(0.8, 0.3, 0),
                              gaussian(1.3, -0.4, 0), gaussian(1.0, 0.2, 1))


class TestDerivatives:
    @pytest.mark.parametrize("which", DIRECTIONS)
    def test_inverse_round_trip(self, which):
        for exps in SAMPLES:
            f = mono(*exps)
            assert mink_deriv(mink_deriv_inverse(f, which), which) == f

    def test_series_result(self):
        result = mink_inverse_series(mono(0, 0, 1, 0), '+')
        assert result.order >= 0
        assert mink_deriv(result.value, '+') == mono(0, 0, 1, 0)

    @pytest.mark.parametrize("which, exps", [
        ('3', (1, 0, 0, 0)), ('3', (1, 1, 0, 0)), ('2', (0, 1, 0, 0)), ('2', (0, 0, 1, 0)),
        ('2', (1, 0, 0, 0)), ('2', (0, 1, 0, 1)),
    ])
    def test_nonterminating_series(self, caplog, which, exps):
        f = mono(*exps)
        with pytest.raises(SeriesTerminationError):
            mink_inverse_series(f, which, resum=False)
        with pytest.raises(SeriesTerminationError):
            mink_deriv_inverse(f, which, resum=False)
        with caplog.at_level(logging.WARNING, logger="qspace.minkowski"):
            result = mink_inverse_series(f, which)
        assert result.resummed
        assert mink_deriv(result.value, which) == f
        assert "does not terminate" in caplog.text

    def test_direction_two_terminates_on_constants(self):
        result = mink_inverse_series(mono(0, 0, 0, 0), '2', resum=False)
        assert not result.resummed
        assert mink_deriv(result.value, '2') == mono(0, 0, 0, 0)

    def test_numeric_matches_symbolic(self):
        q = 1.1
        f = mono(1, 0, 0, 1) + mono(2, 1, 0, 0)
        point = (0.7, 1.3, 0.9, -1.1)
        for which in ('+', '2'):
            numeric = mink_deriv(LatticeFun.from_polyfun(f, q), which, IntegralParams(q_real=q))
            symbolic = LatticeFun.from_polyfun(mink_deriv(f, which), q)
            assert numeric(*point)[0] == pytest.approx(symbolic(*point)[0], rel=1e-10)

    def test_errors(self):
        with pytest.raises(ValueError):
            mink_deriv(mono(1, 0, 0, 0), 'x')
        with pytest.raises(UnsupportedSpaceError):
            mink_deriv(monomial('plane', 1, 0), '+')
        with pytest.raises(ValueError):
            mink_deriv_inverse(mono(1, 0, 0, 0), '+', limits='whole_line')
        with pytest.raises(ValueError):
            mink_deriv_inverse(battery_function(), '+')

    def test_weighted_degree(self):
        assert weighted_degree(mono(1, 0, 0, 0)) == 2
        assert weighted_degree(mono(1, 1, 0, 0) + mono(0, 0, 1, 0)) == 3
        assert weighted_degree(PolyFun.zero(minkowski())) == 0


class TestVolume:
    def test_pipelines_agree(self, lattice_params):
        f = battery_function()
        closed = mink_whole_space_integral(f, lattice_params, 'closed_form').value
        main = mink_whole_space_integral(f, lattice_params, 'main_text').value
        nested = mink_whole_space_integral(f, lattice_params, 'nested_series').value
        assert closed == pytest.approx(lattice_params.q_real ** 16 * main, rel=1e-6)
        assert nested == pytest.approx(closed, rel=1e-6)

    def test_modes(self):
        for mode in MODES:
            assert len(volume_operator(mode)) >= 1
        with pytest.raises(ValueError):
            volume_operator('sideways')
        with pytest.raises(ValueError):
            nested_operator(order='bogus')

    def test_dimension_check(self, lattice_params):
        with pytest.raises(ValueError):
            mink_whole_space_integral(LatticeFun.product(gaussian(), gaussian()), lattice_params)


class TestOrderingReversal:
    def test_fixed_point(self):
        fixed = mono(2, 0, 1, 0) + mono(1, 3, 0, 0) + mono(1, 0, 0, 2, c=3)
        assert mink_ordering_reverse(fixed) == fixed

    def test_parts_stop_at_the_smaller_degree(self):
        f = mono(0, 2, 1, 1) + mono(1, 1, 0, 0)
        parts = ordering_reverse_terms(f)
        assert max(parts) <= min(f.coord_degree(XP), f.coord_degree(XM))
        assert parts[0] == paired_weight(f)

    def test_paired_weight(self):
        assert paired_weight(mono(0, 1, 0, 1)) == mono(0, 1, 0, 1, c=q_power(2))
        assert paired_weight(mono(0, 1, 1, 0)) == mono(0, 1, 1, 0, c=q_power(2))

    def test_rejects_laurent(self):
        with pytest.raises(LaurentInputError):
            mink_ordering_reverse(mono(0, -1, 0, 0))
