from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from qspace.errors import ScalarPoleError
from qspace.expression import parse_scalar
from qspace.qscalar import (LAMBDA, LAMBDA_PLUS, ONE, Q, Q_HALF, ZERO, QScalar, eval_scalar, q_power,
                            qfact, qnum, render_scalar)

from strategies import laurent_scalars, scalars


class TestQNumbers:
    def test_qnum_expands(self):
        assert qnum(3, 2) == ONE + q_power(2) + q_power(4)
        assert qnum(1, -2) == ONE
        assert qnum(0, 5) == ZERO

    def test_negative_qnum(self):
        assert qnum(-2, 1) == -(q_power(-1) + q_power(-2))

    @pytest.mark.parametrize("n", range(-3, 6))
    @pytest.mark.parametrize("a", [1, 2, -2])
    def test_geometric_sum(self, n, a):
        assert qnum(n, a) * (ONE - q_power(a)) == ONE - q_power(a * n)

    def test_qfact(self):
        assert qfact(0, 2) == ONE
        assert qfact(3, 2) == qnum(1, 2) * qnum(2, 2) * qnum(3, 2)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            qnum(2, 0)
        with pytest.raises(ValueError):
            qfact(-1, 2)
        with pytest.raises(ValueError):
            q_power(Fraction(1, 3))


class TestArithmetic:
    def test_constants(self):
        assert Q_HALF * Q_HALF == Q
        assert LAMBDA == Q - 1 / Q
        assert LAMBDA_PLUS * LAMBDA == Q * Q - q_power(-2)

    @given(scalars(), scalars(), scalars())
    @settings(max_examples=40, deadline=None)
    def test_distributive(self, a, b, c):
        assert (a + b) * c == a * c + b * c

    @given(scalars(), scalars())
    @settings(max_examples=40, deadline=None)
    def test_division_inverts_multiplication(self, a, b):
        assume(not b.is_zero())
        assert a / b * b == a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO
        with pytest.raises(ZeroDivisionError):
            ZERO ** -1

    def test_invert_q(self):
        assert Q.invert_q() == q_power(-1)
        assert LAMBDA.invert_q() == -LAMBDA
        assert (ONE / LAMBDA_PLUS).invert_q() == ONE / LAMBDA_PLUS

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            QScalar(1.5)


class TestEvaluation:
    def test_values(self):
        assert eval_scalar(LAMBDA, 2.0) == pytest.approx(1.5)
        assert eval_scalar(Q_HALF, 4.0) == pytest.approx(2.0)
        assert eval_scalar(qnum(3, 1), 2.0) == pytest.approx(7.0)

    def test_pole(self):
        with pytest.raises(ScalarPoleError):
            (ONE / (Q - 1)).evaluate(1.0)

    def test_nonpositive_q(self):
        with pytest.raises(ValueError):
            Q.evaluate(0.0)


class TestText:
    @pytest.mark.parametrize("value, text", [
        (q_power(Fraction(-1, 2)), "q^(-1/2)"),
        (ONE + q_power(2), "1 + q^2"),
        (LAMBDA, "-q^(-1) + q"),
        (ONE / LAMBDA_PLUS, "(q)/(1 + q^2)"),
        (QScalar(Fraction(-2, 3)), "-2/3"),
        (ZERO, "0"),
    ])
    def test_render(self, value, text):
        assert render_scalar(value) == text

    @given(scalars())
    @settings(max_examples=60, deadline=None)
    def test_parse_render_round_trip(self, s):
        assert parse_scalar(render_scalar(s)) == s

    @given(laurent_scalars())
    @settings(max_examples=30, deadline=None)
    def test_laurent_terms(self, s):
        assert QScalar.from_laurent(s.laurent_terms()) == s
