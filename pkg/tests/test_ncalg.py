import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from qspace.errors import RewriteError, UnsupportedSpaceError
from qspace.manin import VARIANTS, qderiv, sign_rules, star
from qspace.ncalg import (CALCULI, NCPoly, action_oracle, builtin_space, check_confluence, extract_l_action,
                          nc_product, normal_order, relation_defect, w_inv, w_map)
from qspace.qscalar import LAMBDA, ONE, q_power

from strategies import monomial, polyfuns

SMALL_PLANE = [monomial('plane', a, b) for a, b in itertools.product(range(3), repeat=2)]


class TestNormalOrder:
    def test_plane_swap(self):
        rs = builtin_space('plane')
        assert normal_order(NCPoly.word('plane', 'X2', 'X1'), rs) == NCPoly.word('plane', 'X1', 'X2', coeff=q_power(-1))

    def test_euclid3_relation(self):
        rs = builtin_space('euclid3')
        expected = NCPoly.word('euclid3', 'Xp', 'Xm') + NCPoly.word('euclid3', 'X3', 'X3', coeff=LAMBDA)
        assert normal_order(NCPoly.word('euclid3', 'Xm', 'Xp'), rs) == expected

    def test_minkowski_relation(self):
        rs = builtin_space('minkowski')
        assert [g.label for g in rs.generators] == ['Xp', 'X0', 'X3', 'Xm']
        expected = (NCPoly.word('minkowski', 'Xp', 'Xm') + NCPoly.word('minkowski', 'X3', 'X3', coeff=LAMBDA)
                    - NCPoly.word('minkowski', 'X0', 'X3', coeff=LAMBDA))
        assert normal_order(NCPoly.word('minkowski', 'Xm', 'Xp'), rs) == expected

    def test_foreign_generator(self):
        with pytest.raises(RewriteError):
            normal_order(NCPoly.word('plane', 'X1', 'Y'), builtin_space('plane'))

    @pytest.mark.parametrize("tag, calculus", [('plane', None), ('euclid3', None), ('euclid4', None),
                                               ('minkowski', None)] + [('plane', c) for c in CALCULI])
    def test_confluence(self, tag, calculus):
        assert check_confluence(builtin_space(tag, calculus)) == []

    def test_unknown_spaces(self):
        with pytest.raises(UnsupportedSpaceError):
            builtin_space('torus')
        with pytest.raises(UnsupportedSpaceError):
            builtin_space('euclid3', 'L')
        with pytest.raises(UnsupportedSpaceError):
            builtin_space('plane', 'bogus')

    def test_ncpoly_text(self):
        p = NCPoly.word('plane', 'X1', 'X2', coeff=2) - NCPoly.word('plane')
        assert str(p) == "(-1) 1 + (2) X1 X2"
        assert str(p - p) == "0"


class TestWMap:
    def test_round_trip(self):
        rs = builtin_space('plane')
        f = monomial('plane', 2, 1, c=ONE + q_power(1))
        assert w_map(f, rs).terms == {('X1', 'X1', 'X2'): ONE + q_power(1)}
        assert w_inv(w_map(f, rs), rs) == f

    def test_reversed_ordering(self):
        rs = builtin_space('plane')
        f = monomial('plane', 1, 1)
        assert w_map(f, rs, 'reversed').terms == {('X2', 'X1'): ONE}
        assert w_inv(w_map(f, rs, 'reversed'), rs, 'reversed') == f

    def test_unordered_word(self):
        with pytest.raises(RewriteError):
            w_inv(NCPoly.word('plane', 'X2', 'X1'), builtin_space('plane'))

    @given(polyfuns(max_exponent=2, max_terms=3), polyfuns(max_exponent=2, max_terms=3))
    @settings(max_examples=30, deadline=None)
    def test_product_matches_star(self, f, g):
        assert nc_product(f, g, builtin_space('plane')) == star(f, g)

    def test_euclid4_product(self):
        rs = builtin_space('euclid4')
        x1 = monomial('euclid4', 1, 0, 0, 0)
        x4 = monomial('euclid4', 0, 0, 0, 1)
        assert nc_product(x4, x1, rs) == monomial('euclid4', 1, 0, 0, 1)
        assert nc_product(x1, x4, rs) == monomial('euclid4', 1, 0, 0, 1) - monomial('euclid4', 0, 1, 1, 0, c=LAMBDA)


class TestDerivativeOracle:
    def test_single_derivative(self):
        assert action_oracle([0], monomial('plane', 0, 1), 'L') == monomial('plane', 0, 0, c=-q_power(Fraction(-1, 2)))

    @pytest.mark.parametrize("action", VARIANTS)
    @pytest.mark.parametrize("which", [1, 2])
    def test_matches_closed_form(self, action, which):
        for f in SMALL_PLANE:
            assert action_oracle([which - 1], f, action) == qderiv(f, which, action)

    def test_derivative_labels(self):
        f = monomial('plane', 1, 1)
        assert action_oracle(['D2', 'D1'], f, 'L') == action_oracle([1, 0], f, 'L')
        with pytest.raises(RewriteError):
            action_oracle(['H1'], f, 'L')

    def test_every_calculus_is_an_action(self):
        f = monomial('plane', 1, 1)
        for action in CALCULI:
            assert action_oracle([0], f, action) == action_oracle([0], f, rs=builtin_space('plane', action))

    def test_unknown_action(self):
        with pytest.raises(ValueError):
            action_oracle([0], monomial('plane', 1, 0), 'Up')

    def test_no_derivatives_off_the_plane(self):
        with pytest.raises(UnsupportedSpaceError):
            action_oracle([0], monomial('euclid3', 1, 0, 0))

    def test_l_action_of_constant(self):
        one = monomial('plane', 0, 0)
        assert extract_l_action(0, 0, one) == one
        assert extract_l_action(0, 1, one).is_zero()

    def test_l_action_needs_left_calculus(self):
        with pytest.raises(ValueError):
            extract_l_action(0, 0, monomial('plane', 1, 0), 'R')


class TestCalculusRelations:
    def test_right_calculus_is_rescaled_left(self):
        factor = sign_rules('plane').hat * q_power(-3)
        assert relation_defect(builtin_space('plane', 'L'), builtin_space('plane', 'R'), factor) == []

    def test_wrong_factor_reports_rules(self):
        defects = relation_defect(builtin_space('plane', 'L'), builtin_space('plane', 'R'), q_power(-3))
        assert defects
        assert all(isinstance(d, NCPoly) for d in defects)
