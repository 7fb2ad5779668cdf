import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from qspace.errors import DivergenceError
from qspace.manin import VARIANTS, qderiv, qderiv_inverse
from qspace.operators import (JacksonD, JacksonInverse, MulMonomial, Operator, Scale, Term, chain_diverges,
                              chain_vanishes, check_chain)
from qspace.qscalar import ONE, Q, q_power

from strategies import monomial, polyfuns

ONE_FRAC = Fraction(1)


class TestSymbolic:
    def test_reading_order(self):
        op = Operator.of(JacksonD(0, 2), Scale(0, ONE_FRAC))
        assert op.apply(monomial('plane', 2, 0)) == monomial('plane', 1, 0, c=q_power(2) * (1 + q_power(2)))

    def test_algebra(self, plane):
        f = monomial('plane', 1, 1)
        op = Operator.of(Scale(0, ONE_FRAC)) + Operator.identity().scaled(2)
        assert op.apply(f) == monomial('plane', 1, 1, c=Q + 2)
        assert (op - op).apply(f).is_zero()
        assert len(Operator.zero()) == 0
        composed = Operator.of(MulMonomial((1, 0))) @ Operator.of(JacksonD(1, 2))
        assert composed.apply(f) == monomial('plane', 2, 0)

    @given(polyfuns())
    @settings(max_examples=25, deadline=None)
    def test_derivative_undoes_inverse(self, f):
        for action in VARIANTS:
            for which in (1, 2):
                assert qderiv(qderiv_inverse(f, which, action), which, action) == f

    def test_term_chain(self):
        term = Term(ONE, (Scale(1, ONE_FRAC), MulMonomial((2, 1)), JacksonD(0, 2)))
        assert term.chain(0) == (MulMonomial((2,)), JacksonD(0, 2))
        assert term.chain(1) == (Scale(0, ONE_FRAC), MulMonomial((1,)))

    def test_render(self):
        op = Operator.of(JacksonD(0, 2), Scale(1, ONE_FRAC), coeff=Q)
        assert op.render(('x1', 'x2')) == ["(q) D[x1; q^2] S[x2; 1]"]
        assert Operator.identity().render(('x1', 'x2')) == ["(1) id"]


class TestChains:
    @pytest.mark.parametrize("chain, vanishes", [
        ((JacksonD(0, 2), JacksonInverse(0, 2)), True),
        ((JacksonInverse(0, 2), Scale(0, ONE_FRAC), JacksonD(0, 2)), True),
        ((JacksonD(0, 4), JacksonInverse(0, 2)), True),
        ((JacksonInverse(0, 2), JacksonD(0, 4)), False),
        ((JacksonD(0, 2), MulMonomial((1,)), JacksonInverse(0, 2)), False),
        ((JacksonInverse(0, 2),), False),
    ])
    def test_chain_vanishes(self, chain, vanishes):
        assert chain_vanishes(chain) is vanishes

    def test_double_integral_diverges(self):
        chain = (JacksonInverse(0, 2), Scale(0, ONE_FRAC), JacksonInverse(0, 2))
        assert chain_diverges(chain)
        with pytest.raises(DivergenceError):
            check_chain(chain)
        check_chain((JacksonInverse(0, 2),))

    def test_whole_line_reduced(self):
        op = Operator.of(JacksonInverse(0, 2), JacksonD(0, 2)) + Operator.of(JacksonInverse(0, 2))
        assert len(op.whole_line_reduced(2)) == 1


class TestNumeric:
    def test_scale(self):
        g = Scale(0, ONE_FRAC).numeric(lambda p: p[0] ** 2, 2.0, 10)
        assert g(np.array([[1.5], [0.0]])) == pytest.approx([9.0])

    def test_jackson_derivative(self):
        g = JacksonD(0, 1).numeric(lambda p: p[0] ** 2, 2.0, 10)
        assert g(np.array([[1.5]])) == pytest.approx([4.5])

    def test_jackson_derivative_at_origin(self):
        g = JacksonD(0, 1).numeric(lambda p: p[0] ** 2, 2.0, 10)
        with pytest.raises(ValueError):
            g(np.array([[0.0]]))

    def test_whole_line_gaussian(self):
        q = 1.1
        r = q ** 2
        g = JacksonInverse(0, 2).numeric(lambda p: np.exp(-p[0] ** 2), q, 500)
        expected = (r - 1) / math.log(r) * math.sqrt(math.pi)
        assert g(np.array([[1.0]]))[0] == pytest.approx(expected, rel=1e-8)

    def test_operator_combines_terms(self):
        op = Operator.of(Scale(0, ONE_FRAC), coeff=Q) + Operator.identity()
        h = op.numeric(lambda p: p[0], 2.0, 10)
        assert h(np.array([[1.0, 3.0]])) == pytest.approx([5.0, 15.0])
