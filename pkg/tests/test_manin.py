import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from qspace.errors import LaurentInputError, UnsupportedSpaceError
from qspace.manin import (EXP_VARIANTS, PAIRING_VARIANTS, VARIANTS, SignRules, antipode, braided_product,
                          exp_completeness, exp_eigen_sides, ordering_flip, pairing, pairing_by_action,
                          qderiv, qderiv_operator, qexp, sign_rules, star, translate)
from qspace.polyfun import TensorPolyFun
from qspace.qscalar import ONE, QScalar, q_power, qfact

from strategies import monomial, polyfuns

GRID = list(itertools.product(range(3), repeat=2))


class TestStar:
    def test_values(self):
        assert star(monomial('plane', 0, 1), monomial('plane', 1, 0)) == monomial('plane', 1, 1, c=q_power(-1))
        assert star(monomial('plane', 1, 0), monomial('plane', 0, 1), 'reversed') == monomial('plane', 1, 1, c=q_power(1))

    @given(polyfuns(max_terms=2), polyfuns(max_terms=2), polyfuns(max_terms=2))
    @settings(max_examples=30, deadline=None)
    def test_associative(self, f, g, h):
        for ordering in ('standard', 'reversed'):
            assert star(star(f, g, ordering), h, ordering) == star(f, star(g, h, ordering), ordering)

    @given(polyfuns())
    @settings(max_examples=30, deadline=None)
    def test_ordering_flip_inverts(self, f):
        assert ordering_flip(ordering_flip(f), 'inverse') == f

    def test_errors(self):
        with pytest.raises(UnsupportedSpaceError):
            star(monomial('euclid3', 1, 0, 0), monomial('euclid3', 0, 1, 0))
        with pytest.raises(ValueError):
            star(monomial('plane', 1, 0), monomial('plane', 1, 0), 'sideways')
        with pytest.raises(ValueError):
            ordering_flip(monomial('plane', 1, 0), 'backward')


class TestCoproducts:
    def test_translate_coordinate(self):
        x1 = monomial('plane', 1, 0)
        one = monomial('plane', 0, 0)
        assert translate(x1, 'L') == TensorPolyFun.from_factors(x1, one) + TensorPolyFun.from_factors(one, x1)

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_counit_property(self, variant):
        for n in GRID:
            f = monomial('plane', *n)
            assert translate(f, variant).contract(1, lambda g: g.counit()).collapse() == f

    def test_translate_rejects_laurent(self):
        with pytest.raises(LaurentInputError):
            translate(monomial('plane', -1, 0))

    def test_antipode_values(self):
        assert antipode(monomial('plane', 1, 0)) == -monomial('plane', 1, 0)
        assert antipode(monomial('plane', 1, 1), 'L') == monomial('plane', 1, 1, c=q_power(-2))
        assert antipode(monomial('plane', 1, 1), 'Lbar') == monomial('plane', 1, 1, c=q_power(2))

    def test_braiding_past_a_constant(self):
        x1 = monomial('plane', 1, 0)
        one = monomial('plane', 0, 0)
        for variant in VARIANTS:
            assert braided_product(TensorPolyFun.from_factors(x1, one), variant) == TensorPolyFun.from_factors(one, x1)

    def test_braiding_needs_two_slots(self):
        with pytest.raises(ValueError):
            braided_product(TensorPolyFun.from_factors(monomial('plane', 1, 0)))


class TestDerivatives:
    def test_values(self):
        assert qderiv(monomial('plane', 0, 1), 1, 'L') == monomial('plane', 0, 0, c=-q_power(Fraction(-1, 2)))
        assert qderiv(monomial('plane', 1, 0), 2, 'L') == monomial('plane', 0, 0, c=q_power(Fraction(1, 2)))
        assert qderiv(monomial('plane', 1, 0), 1, 'L').is_zero()

    def test_constants_are_annihilated(self):
        for action in VARIANTS:
            for which in (1, 2):
                assert qderiv(monomial('plane', 0, 0, c=3), which, action).is_zero()

    def test_bad_index(self):
        with pytest.raises(ValueError):
            qderiv_operator(3)
        with pytest.raises(ValueError):
            qderiv_operator(1, 'Up')


class TestPairings:
    @pytest.mark.parametrize("n", GRID)
    @pytest.mark.parametrize("m", GRID)
    def test_dual_bases(self, n, m):
        d = monomial('plane', *n)
        g = ordering_flip(monomial('plane', *m), 'inverse')
        expected = qfact(n[0], 2) * qfact(n[1], 2) if n == m else QScalar(0)
        assert pairing(d, g, 'L,Rbar') == expected
        expected_bar = qfact(n[0], -2) * qfact(n[1], -2) if n == m else QScalar(0)
        assert pairing(d, monomial('plane', *m), 'Lbar,R') == expected_bar

    @pytest.mark.parametrize("variant", PAIRING_VARIANTS)
    def test_pairing_is_a_derivative_action(self, variant):
        for n, m in itertools.product(GRID, repeat=2):
            d = monomial('plane', *n)
            g = monomial('plane', *m)
            assert pairing_by_action(d, g, variant) == pairing(d, g, variant)

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            pairing(monomial('plane', 1, 0), monomial('plane', 1, 0), 'L,R')


class TestExponentials:
    def test_truncation(self):
        assert len(qexp(3).terms) == 10
        with pytest.raises(ValueError):
            qexp(-1)

    @pytest.mark.parametrize("variant", EXP_VARIANTS)
    def test_completeness(self, variant):
        E = qexp(3, variant)
        for n in GRID:
            u = monomial('plane', *n)
            assert exp_completeness(E, u, variant) == u

    @pytest.mark.parametrize("variant", EXP_VARIANTS)
    @pytest.mark.parametrize("which", [1, 2])
    def test_eigenfunction(self, variant, which):
        lhs, rhs = exp_eigen_sides(3, variant, which)
        assert lhs == rhs


def test_sign_rules():
    assert sign_rules('plane') == SignRules(hat=-1, exp_inverse=1)
    assert sign_rules('euclid3') == SignRules()
    assert ONE * sign_rules('euclid4').exp_inverse == -ONE
