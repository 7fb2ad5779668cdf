"""
Text form of scalars, functions and tensors.

Grammar (Pratt parser over a small token stream):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*       '/' only by scalars
    unary   := '-' unary | power
    power   := atom ('^' exponent)?
    atom    := NUMBER | 'q' | coordinate | '(' expr ')'
    exponent:= ['-'] NUMBER | '(' ['-'] NUMBER ['/' NUMBER] ')'

Coordinates take integer exponents, q takes multiples of 1/4.  Errors carry
the character offset of the offending token.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .coords import CoordinateSystem, coordinate_system
from .errors import ExpressionSyntaxError, UnknownCoordinateError
from .polyfun import PolyFun, TensorPolyFun
from .qscalar import ONE, QScalar, q_power, render_scalar

logger = logging.getLogger(__name__)

_OPERATORS = set('+-*/^()')


@dataclass(frozen=True)
class Token:
    type: str
    value: Any
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(Token('NUMBER', int(text[start:pos]), start))
        elif ch.isalpha() or ch == '_':
            start = pos
            while pos < len(text) and (text[pos].isalnum() or text[pos] == '_'):
                pos += 1
            tokens.append(Token('IDENT', text[start:pos], start))
        elif ch in _OPERATORS:
            kind = {'(': 'LPAREN', ')': 'RPAREN'}.get(ch, 'OP')
            tokens.append(Token(kind, ch, pos))
            pos += 1
        else:
            raise ExpressionSyntaxError(f"unexpected character {ch!r}", pos)
    tokens.append(Token('EOF', None, len(text)))
    return tokens


# binding powers of the infix operators
_INFIX = {'+': 10, '-': 10, '*': 20, '/': 20}
_PREFIX_MINUS = 30


class Parser:
    """Parses one expression into a PolyFun over `coords`.

    With `scalar_only` every identifier except q is rejected.
    """

    def __init__(self, text: str, coords: CoordinateSystem, scalar_only: bool = False):
        self.text = text
        self.coords = coords
        self.scalar_only = scalar_only
        self.tokens = tokenize(text)
        self.index = 0

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _next(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _expect(self, kind: str, value=None) -> Token:
        tok = self._next()
        if tok.type != kind or (value is not None and tok.value != value):
            wanted = value if value is not None else kind
            raise ExpressionSyntaxError(f"expected {wanted!r}", tok.pos)
        return tok

    def parse(self) -> PolyFun:
        if self._peek().type == 'EOF':
            raise ExpressionSyntaxError("empty expression", 0)
        value = self._expression(0)
        tok = self._peek()
        if tok.type != 'EOF':
            raise ExpressionSyntaxError(f"unexpected {tok.value!r}", tok.pos)
        return value

    def _expression(self, min_bp: int) -> PolyFun:
        left = self._prefix()
        while True:
            tok = self._peek()
            if tok.type != 'OP' or tok.value not in _INFIX or _INFIX[tok.value] <= min_bp:
                return left
            self._next()
            right = self._expression(_INFIX[tok.value])
            left = self._combine(tok, left, right)

    def _combine(self, tok: Token, left: PolyFun, right: PolyFun) -> PolyFun:
        if tok.value == '+':
            return left + right
        if tok.value == '-':
            return left - right
        if tok.value == '*':
            return left * right
        divisor = _as_scalar(right)
        if divisor is None:
            raise ExpressionSyntaxError("division is only defined by scalars", tok.pos)
        if divisor.is_zero():
            raise ExpressionSyntaxError("division by zero", tok.pos)
        return left * (ONE / divisor)

    def _prefix(self) -> PolyFun:
        tok = self._peek()
        if tok.type == 'OP' and tok.value == '-':
            self._next()
            return -self._expression(_PREFIX_MINUS)
        return self._power()

    def _power(self) -> PolyFun:
        tok = self._peek()
        base = self._atom()
        if not (self._peek().type == 'OP' and self._peek().value == '^'):
            return base
        caret = self._next()
        exponent = self._exponent()
        if tok.type == 'IDENT' and tok.value == 'q':
            try:
                return PolyFun.constant(self.coords, q_power(exponent))
            except ValueError:
                raise ExpressionSyntaxError(f"q^{exponent} is not a multiple of q^(1/4)", caret.pos) from None
        if exponent.denominator != 1:
            raise ExpressionSyntaxError("exponents of coordinates must be integers", caret.pos)
        if tok.type == 'IDENT':
            exps = [0] * self.coords.dim
            exps[self.coords.index(tok.value)] = int(exponent)
            return PolyFun.monomial(self.coords, exps)
        if exponent < 0:
            scalar = _as_scalar(base)
            if scalar is None or scalar.is_zero():
                raise ExpressionSyntaxError("negative powers need a nonzero scalar base", caret.pos)
            return PolyFun.constant(self.coords, scalar ** int(exponent))
        result = PolyFun.constant(self.coords)
        for _ in range(int(exponent)):
            result = result * base
        return result

    def _exponent(self) -> Fraction:
        tok = self._next()
        if tok.type == 'LPAREN':
            sign = self._sign()
            num = self._expect('NUMBER').value
            den = 1
            if self._peek().type == 'OP' and self._peek().value == '/':
                self._next()
                den = self._expect('NUMBER').value
                if den == 0:
                    raise ExpressionSyntaxError("zero denominator in exponent", tok.pos)
            self._expect('RPAREN')
            return sign * Fraction(num, den)
        self.index -= 1
        sign = self._sign()
        return sign * Fraction(self._expect('NUMBER').value)

    def _sign(self) -> int:
        if self._peek().type == 'OP' and self._peek().value == '-':
            self._next()
            return -1
        return 1

    def _atom(self) -> PolyFun:
        tok = self._next()
        if tok.type == 'NUMBER':
            return PolyFun.constant(self.coords, tok.value)
        if tok.type == 'IDENT':
            if tok.value == 'q':
                return PolyFun.constant(self.coords, q_power(1))
            if self.scalar_only:
                raise UnknownCoordinateError(tok.value, tok.pos)
            try:
                return PolyFun.coordinate(self.coords, tok.value)
            except UnknownCoordinateError:
                raise UnknownCoordinateError(tok.value, tok.pos) from None
        if tok.type == 'LPAREN':
            value = self._expression(0)
            self._expect('RPAREN')
            return value
        what = "end of input" if tok.type == 'EOF' else repr(tok.value)
        raise ExpressionSyntaxError(f"unexpected {what}", tok.pos)


def _as_scalar(f: PolyFun) -> Optional[QScalar]:
    zero = (0,) * f.coords.dim
    if any(exps != zero for exps in f.terms):
        return None
    return f.coefficient(zero)


def parse_expression(text: str, space='plane') -> PolyFun:
    coords = space if isinstance(space, CoordinateSystem) else coordinate_system(space)
    value = Parser(text, coords).parse()
    logger.debug(f"Parsed {text!r} into {len(value.terms)} terms")
    return value


def parse_scalar(text: str) -> QScalar:
    coords = coordinate_system('plane')
    return _as_scalar(Parser(text, coords, scalar_only=True).parse())


# -- rendering ---------------------------------------------------------------

def _monomial_text(names, exps) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 0:
            parts.append(f"{name}^{e}")
        elif e < 0:
            parts.append(f"{name}^({e})")
    return "*".join(parts)


def _coefficient_text(c: QScalar):
    """(negative, text) with text parenthesized when it is a sum or a quotient"""
    laurent = c.laurent_terms()
    if laurent is not None and len(laurent) == 1:
        text = render_scalar(c)
        if text.startswith('-'):
            return True, text[1:]
        return False, text
    return False, f"({render_scalar(c)})"


def _render_terms(items) -> str:
    pieces = []
    for mono, c in items:
        negative, coeff = _coefficient_text(c)
        if not mono:
            body = coeff
        elif coeff == "1":
            body = mono
        else:
            body = f"{coeff}*{mono}"
        pieces.append((negative, body))
    if not pieces:
        return "0"
    text = ""
    for idx, (negative, body) in enumerate(pieces):
        if idx == 0:
            text = f"-{body}" if negative else body
        else:
            text += f" - {body}" if negative else f" + {body}"
    return text


def _order(exps) -> tuple:
    return (-sum(exps),) + tuple(-e for e in exps)


def render_polyfun(f: PolyFun) -> str:
    """Canonical text: terms by descending total degree, then lexicographically"""
    names = f.coords.names
    items = sorted(f.terms.items(), key=lambda item: _order(item[0]))
    return _render_terms((_monomial_text(names, exps), c) for exps, c in items)


def slot_names(coords: CoordinateSystem, slot: str) -> List[str]:
    """Coordinate names of one tensor slot: x1 -> y1 for slot y, other labels get a prefix"""
    out = []
    for name in coords.names:
        if name.startswith('x') and name[1:].isdigit():
            out.append(f"{slot}{name[1:]}")
        elif slot == 'x':
            out.append(name)
        else:
            out.append(f"{slot}_{name}")
    return out


def render_tensor(T: TensorPolyFun) -> str:
    names = [slot_names(T.coords, slot) for slot in T.slots]
    flat_names = [n for group in names for n in group]
    items = sorted(T.terms.items(), key=lambda item: _order(tuple(e for part in item[0] for e in part)))
    rendered = []
    for key, c in items:
        flat = tuple(e for part in key for e in part)
        rendered.append((_monomial_text(flat_names, flat), c))
    return _render_terms(rendered)


# -- JSON --------------------------------------------------------------------

def scalar_to_json(s: QScalar, q0: Optional[float] = None) -> Dict:
    out: Dict[str, Any] = {'text': render_scalar(s)}
    if q0 is not None:
        out['value'] = s.evaluate(q0)
    return out


def polyfun_to_json(f: PolyFun) -> Dict:
    items = sorted(f.terms.items(), key=lambda item: _order(item[0]))
    return {
        'space': f.coords.tag,
        'text': render_polyfun(f),
        'terms': [{'exps': list(exps), 'coeff': render_scalar(c)} for exps, c in items],
    }


def tensor_to_json(T: TensorPolyFun) -> Dict:
    items = sorted(T.terms.items(), key=lambda item: _order(tuple(e for part in item[0] for e in part)))
    return {
        'space': T.coords.tag,
        'slots': list(T.slots),
        'text': render_tensor(T),
        'terms': [{'exps': [list(part) for part in key], 'coeff': render_scalar(c)} for key, c in items],
    }


def to_json(value) -> Any:
    """JSON-ready form of any engine value"""
    if isinstance(value, QScalar):
        return scalar_to_json(value)
    if isinstance(value, PolyFun):
        return polyfun_to_json(value)
    if isinstance(value, TensorPolyFun):
        return tensor_to_json(value)
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    return value
