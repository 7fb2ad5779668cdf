from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from qspace.coords import coordinate_system
from qspace.errors import (CounitError, LaurentInputError, SingularExponentError, UnknownCoordinateError,
                           UnsupportedSpaceError)
from qspace.polyfun import (PolyFun, TensorPolyFun, conjugate_fun, conjugation_factors,
                            definite_integral_formal, jackson_antideriv, jackson_d, scale_coord,
                            weight_monomials)
from qspace.qscalar import ONE, Q, QScalar, q_power, qnum

from strategies import monomial, polyfuns


class TestPolyFun:
    def test_arithmetic(self, plane):
        x1 = PolyFun.coordinate(plane, 'x1')
        x2 = PolyFun.coordinate(plane, 'x2')
        f = (x1 + x2) * (x1 - x2)
        assert f == monomial('plane', 2, 0) - monomial('plane', 0, 2)
        assert f.degree() == 2
        assert (f - f).is_zero()

    def test_counit(self, plane):
        f = monomial('plane', 1, 0) + 3
        assert f.counit() == QScalar(3)
        with pytest.raises(CounitError):
            monomial('plane', -1, 0).counit()

    def test_require_polynomial(self):
        with pytest.raises(LaurentInputError):
            monomial('plane', 0, -1).require_polynomial("test")

    def test_mixed_spaces(self):
        with pytest.raises(UnsupportedSpaceError):
            monomial('plane', 1, 0) + monomial('euclid3', 1, 0, 0)

    def test_unknown_coordinate(self, plane):
        with pytest.raises(UnknownCoordinateError):
            PolyFun.coordinate(plane, 'x3')

    def test_evaluate_vectorized(self, plane):
        f = monomial('plane', 2, 1, c=Q) + 1
        values = f.evaluate([np.array([1.0, 2.0]), np.array([3.0, 0.5])], 2.0)
        assert values == pytest.approx([7.0, 5.0])

    def test_truncate_and_coord_degree(self):
        f = monomial('plane', 3, 1) + monomial('plane', 1, 0)
        assert f.truncate(2) == monomial('plane', 1, 0)
        assert f.coord_degree('x1') == 3


class TestTensorPolyFun:
    def test_from_factors_and_swap(self, plane):
        f = monomial('plane', 1, 0)
        g = monomial('plane', 0, 2, c=Q)
        T = TensorPolyFun.from_factors(f, g)
        assert T.terms == {((1, 0), (0, 2)): Q}
        assert T.swap().terms == {((0, 2), (1, 0)): Q}
        assert T.rank == 2

    def test_equality_ignores_slot_names(self):
        f = monomial('plane', 1, 1)
        assert TensorPolyFun.from_factors(f, f, slots=('x', 'y')) == \
            TensorPolyFun.from_factors(f, f, slots=('u', 'v'))


class TestLatticeOperators:
    def test_jackson_d(self):
        assert jackson_d(monomial('plane', 3, 1), 0, 2) == monomial('plane', 2, 1, c=qnum(3, 2))
        assert jackson_d(monomial('plane', 0, 1), 0, 2).is_zero()

    def test_jackson_d_laurent(self):
        assert jackson_d(monomial('plane', -2, 0), 'x1', 1) == monomial('plane', -3, 0, c=qnum(-2, 1))

    @given(polyfuns())
    @settings(max_examples=40, deadline=None)
    def test_antiderivative_inverts(self, f):
        for i in (0, 1):
            for a in (2, -2):
                assert jackson_d(jackson_antideriv(f, i, a), i, a) == f

    def test_singular_antiderivative(self):
        with pytest.raises(SingularExponentError):
            jackson_antideriv(monomial('plane', -1, 2), 0, 2)

    def test_scale_coord(self):
        assert scale_coord(monomial('plane', 2, 1), 'x1', 1) == monomial('plane', 2, 1, c=q_power(2))
        assert scale_coord(monomial('plane', 2, 1), 1, Fraction(1, 2)) == monomial('plane', 2, 1, c=q_power(Fraction(1, 2)))

    def test_weight_monomials(self):
        f = monomial('plane', 2, 1)
        assert weight_monomials(f, quadratic={(0, 1): 1}) == monomial('plane', 2, 1, c=q_power(2))
        assert weight_monomials(f, linear={0: Fraction(1, 2)}) == monomial('plane', 2, 1, c=Q)

    def test_weight_tensor(self):
        T = TensorPolyFun.from_factors(monomial('plane', 1, 0), monomial('plane', 0, 1))
        weighted = weight_monomials(T, quadratic={(0, 3): -1})
        assert weighted.terms == {((1, 0), (0, 1)): q_power(-1)}

    def test_definite_integral_from_zero(self):
        T = definite_integral_formal(monomial('plane', 1, 0), 0, 2, lower=0)
        assert T.terms == {((2, 0), (0, 0)): ONE / qnum(2, 2)}

    def test_definite_integral_two_limits(self):
        T = definite_integral_formal(monomial('plane', 0, 1), 1, 2)
        c = ONE / qnum(2, 2)
        assert T.terms == {((0, 2), (0, 0)): c, ((0, 0), (0, 2)): -c}
        assert T.slots == ('y', 'z')

    def test_definite_integral_equal_limits(self):
        assert definite_integral_formal(monomial('plane', 0, 1), 1, 2, lower='y', upper='y').is_zero()


class TestConjugation:
    @pytest.mark.parametrize("tag", ['plane', 'euclid3', 'euclid4'])
    def test_involutive(self, tag):
        coords = coordinate_system(tag)
        factors = conjugation_factors(coords)
        for i, j in enumerate(coords.conjugate):
            assert factors[i] * factors[j] == ONE

    @given(polyfuns())
    @settings(max_examples=40, deadline=None)
    def test_plane_conjugation_is_an_involution(self, f):
        assert conjugate_fun(conjugate_fun(f)) == f

    @given(polyfuns(tag='euclid3', max_exponent=1))
    @settings(max_examples=20, deadline=None)
    def test_euclid3_conjugation_is_an_involution(self, f):
        assert conjugate_fun(conjugate_fun(f)) == f

    def test_plane_factors(self, plane):
        assert conjugate_fun(monomial('plane', 1, 0)) == monomial('plane', 0, 1, c=-q_power(Fraction(-1, 2)))

    def test_literal_convention_gives_parity(self):
        f = monomial('plane', 1, 2)
        assert conjugate_fun(conjugate_fun(f, 'literal'), 'literal') == -f

    def test_minkowski_rejected(self):
        with pytest.raises(UnsupportedSpaceError):
            conjugate_fun(monomial('minkowski', 1, 0, 0, 0))
