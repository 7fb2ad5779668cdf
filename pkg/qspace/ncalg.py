"""
Noncommutative normal ordering.

Words in the coordinate generators (and, on the plane, the partial
derivatives) are rewritten pairwise until every adjacent pair respects the
normal order of the space.  The result is the brute-force reference for the
closed-form operators in `manin`: derivative actions are read off as the
derivative-free part of a normal-ordered product, L-matrix actions as the
coefficients of a single trailing derivative.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .coords import CoordinateSystem, coordinate_system
from .errors import RewriteError, UnsupportedSpaceError
from .polyfun import PolyFun
from .qscalar import LAMBDA, ONE, QScalar, ZERO, q_power, render_scalar

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]

CALCULI = ('L', 'Lbar', 'R', 'Rbar')
REWRITE_GUARD = 2_000_000
HALF = Fraction(1, 2)

@dataclass(frozen=True)
class Generator:
    label: str
    kind: str  # coordinate, partial or hatted_partial
    space_tag: str


class NCPoly:
    """Linear combination of generator words"""

    __slots__ = ('space_tag', 'terms')

    def __init__(self, space_tag: str, terms: Optional[Dict[Word, QScalar]] = None):
        self.space_tag = space_tag
        self.terms: Dict[Word, QScalar] = {}
        for word, c in (terms or {}).items():
            self._add(tuple(word), c if isinstance(c, QScalar) else QScalar(c))

    def _add(self, word: Word, c: QScalar):
        total = self.terms.get(word, ZERO) + c
        if total:
            self.terms[word] = total
        else:
            self.terms.pop(word, None)

    @classmethod
    def word(cls, space_tag: str, *labels: str, coeff=ONE) -> "NCPoly":
        return cls(space_tag, {tuple(labels): coeff})

    def items(self):
        return iter(sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = NCPoly(self.space_tag, self.terms)
        for word, c in other.terms.items():
            out._add(word, c)
        return out

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.space_tag, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            out = NCPoly(self.space_tag)
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out._add(w1 + w2, c1 * c2)
            return out
        c = other if isinstance(other, QScalar) else QScalar(other)
        return NCPoly(self.space_tag, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.space_tag == other.space_tag and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for word, c in self.items():
            body = " ".join(word) or "1"
            parts.append(f"({render_scalar(c)}) {body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCPoly({self.space_tag}, {self})"


Replacement = Tuple[Tuple[QScalar, Word], ...]

@dataclass(frozen=True)
class RewriteSystem:
    """Normal order plus one replacement per out-of-order adjacent pair.

    `coordinate_generators[i]` is the generator of coordinate i; the
    `derivative_generators` follow the same indexing.  `derivatives_right`
    says on which side a normal-ordered word keeps its derivatives.
    """

    tag: str
    calculus: Optional[str]
    generators: Tuple[Generator, ...]
    rules: Tuple[Tuple[Tuple[str, str], Replacement], ...]
    coordinate_generators: Tuple[str, ...]
    derivative_generators: Tuple[str, ...] = ()
    derivatives_right: bool = True
    hat_sign: int = 1
    leibniz_k: Optional[QScalar] = None
    _rank: Dict[str, int] = field(default_factory=dict, compare=False, hash=False, repr=False)
    _rule_map: Dict[Tuple[str, str], Replacement] = field(default_factory=dict, compare=False,
                                                          hash=False, repr=False)
    _cache: Dict[Word, Dict[Word, QScalar]] = field(default_factory=dict, compare=False,
                                                    hash=False, repr=False)

    def __post_init__(self):
        self._rank.update({g.label: pos for pos, g in enumerate(self.generators)})
        self._rule_map.update(dict(self.rules))
        for (g, h), _ in self.rules:
            if self._rank[g] <= self._rank[h]:
                raise RewriteError(f"{self.tag}: rule for ({g}, {h}) rewrites an ordered pair")

    @property
    def coords(self) -> CoordinateSystem:
        return coordinate_system(self.tag)

    def rank(self, label: str) -> int:
        try:
            return self._rank[label]
        except KeyError:
            raise RewriteError(f"generator {label} does not belong to {self.tag}") from None

    def is_derivative(self, label: str) -> bool:
        return label in self.derivative_generators

    def rule(self, pair: Tuple[str, str]) -> Replacement:
        try:
            return self._rule_map[pair]
        except KeyError:
            raise RewriteError(f"{self.tag}: no rule orders the pair {pair}") from None


def _first_inversion(rs: RewriteSystem, word: Word) -> int:
    for pos in range(len(word) - 1):
        if rs.rank(word[pos]) > rs.rank(word[pos + 1]):
            return pos
    return -1


def _normal_form(rs: RewriteSystem, word: Word, budget: List[int]) -> Dict[Word, QScalar]:
    cached = rs._cache.get(word)
    if cached is not None:
        return cached
    pos = _first_inversion(rs, word)
    if pos < 0:
        result = {word: ONE}
    else:
        budget[0] += 1
        if budget[0] > REWRITE_GUARD:
            raise RewriteError(f"{rs.tag}: rewriting exceeded {REWRITE_GUARD} steps")
        result = {}
        for c, replacement in rs.rule((word[pos], word[pos + 1])):
            rewritten = word[:pos] + replacement + word[pos + 2:]
            for w, c2 in _normal_form(rs, rewritten, budget).items():
                total = result.get(w, ZERO) + c * c2
                if total:
                    result[w] = total
                else:
                    result.pop(w, None)
    rs._cache[word] = result
    return result


def normal_order(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    """Fixed point of the rewrite rules; linear in p"""
    budget = [0]
    out = NCPoly(p.space_tag)
    for word, c in p.terms.items():
        for label in word:
            rs.rank(label)
        for w, c2 in _normal_form(rs, word, budget).items():
            out._add(w, c * c2)
    if budget[0]:
        logger.debug(f"{rs.tag}/{rs.calculus}: {budget[0]} rule applications")
    return out


# -- built-in rule sets ----------------------------------------------------

def _q(a) -> QScalar:
    return q_power(a)


def _rules(table: Dict[Tuple[str, str], Iterable[Tuple[QScalar, Word]]]):
    return tuple(((pair, tuple((c, tuple(w)) for c, w in rhs)) for pair, rhs in table.items()))


def _gens(tag: str, coords: Sequence[str], partials: Sequence[str] = (), kind: str = 'partial',
          partials_first: bool = False) -> Tuple[Generator, ...]:
    xs = [Generator(label, 'coordinate', tag) for label in coords]
    ds = [Generator(label, kind, tag) for label in partials]
    return tuple(ds + xs) if partials_first else tuple(xs + ds)


def _plane_coordinate_rules():
    return {('X2', 'X1'): [(_q(-1), ('X1', 'X2'))]}


def _plane_system(calculus: Optional[str]) -> RewriteSystem:
    lam = LAMBDA
    rules = _plane_coordinate_rules()
    if calculus is None:
        return RewriteSystem('plane', None, _gens('plane', ('X1', 'X2')), _rules(rules), ('X1', 'X2'))
    if calculus == 'L':
        rules.update({
            ('D2', 'D1'): [(_q(-1), ('D1', 'D2'))],
            ('D1', 'X1'): [(_q(1), ('X1', 'D1'))],
            ('D1', 'X2'): [(-_q(-HALF), ()), (_q(2), ('X2', 'D1'))],
            ('D2', 'X1'): [(_q(HALF), ()), (_q(2), ('X1', 'D2')), (-_q(2) * lam, ('X2', 'D1'))],
            ('D2', 'X2'): [(_q(1), ('X2', 'D2'))],
        })
        gens = _gens('plane', ('X1', 'X2'), ('D1', 'D2'))
        return RewriteSystem('plane', 'L', gens, _rules(rules), ('X1', 'X2'), ('D1', 'D2'),
                             derivatives_right=True, hat_sign=-1, leibniz_k=_q(2))
    if calculus == 'Lbar':
        rules.update({
            ('H2', 'H1'): [(_q(-1), ('H1', 'H2'))],
            ('H1', 'X1'): [(_q(-1), ('X1', 'H1'))],
            ('H1', 'X2'): [(_q(-HALF), ()), (_q(-2), ('X2', 'H1')), (_q(-2) * lam, ('X1', 'H2'))],
            ('H2', 'X1'): [(-_q(HALF), ()), (_q(-2), ('X1', 'H2'))],
            ('H2', 'X2'): [(_q(-1), ('X2', 'H2'))],
        })
        gens = _gens('plane', ('X1', 'X2'), ('H1', 'H2'), kind='hatted_partial')
        return RewriteSystem('plane', 'Lbar', gens, _rules(rules), ('X1', 'X2'), ('H1', 'H2'),
                             derivatives_right=True, hat_sign=-1, leibniz_k=_q(2))
    if calculus == 'Rbar':
        rules.update({
            ('D2', 'D1'): [(_q(-1), ('D1', 'D2'))],
            ('X1', 'D1'): [(_q(1), ('D1', 'X1'))],
            ('X1', 'D2'): [(-_q(-HALF), ()), (_q(2), ('D2', 'X1'))],
            ('X2', 'D1'): [(_q(HALF), ()), (_q(2), ('D1', 'X2')), (-_q(2) * lam, ('D2', 'X1'))],
            ('X2', 'D2'): [(_q(1), ('D2', 'X2'))],
        })
        gens = _gens('plane', ('X1', 'X2'), ('D1', 'D2'), partials_first=True)
        return RewriteSystem('plane', 'Rbar', gens, _rules(rules), ('X1', 'X2'), ('D1', 'D2'),
                             derivatives_right=False, hat_sign=-1, leibniz_k=_q(2))
    if calculus == 'R':
        rules.update({
            ('H2', 'H1'): [(_q(-1), ('H1', 'H2'))],
            ('X1', 'H1'): [(_q(-1), ('H1', 'X1'))],
            ('X2', 'H2'): [(_q(-1), ('H2', 'X2'))],
            ('X2', 'H1'): [(-_q(HALF), ()), (_q(-2), ('H1', 'X2'))],
            ('X1', 'H2'): [(_q(-HALF), ()), (_q(-2), ('H2', 'X1')), (_q(-2) * lam, ('H1', 'X2'))],
        })
        gens = _gens('plane', ('X1', 'X2'), ('H1', 'H2'), kind='hatted_partial', partials_first=True)
        return RewriteSystem('plane', 'R', gens, _rules(rules), ('X1', 'X2'), ('H1', 'H2'),
                             derivatives_right=False, hat_sign=-1, leibniz_k=_q(2))
    raise UnsupportedSpaceError(f"unknown calculus {calculus!r}")


def _euclid3_system() -> RewriteSystem:
    rules = {
        ('X3', 'Xp'): [(_q(2), ('Xp', 'X3'))],
        ('Xm', 'X3'): [(_q(2), ('X3', 'Xm'))],
        ('Xm', 'Xp'): [(ONE, ('Xp', 'Xm')), (LAMBDA, ('X3', 'X3'))],
    }
    gens = _gens('euclid3', ('Xp', 'X3', 'Xm'))
    return RewriteSystem('euclid3', None, gens, _rules(rules), ('Xp', 'X3', 'Xm'))


def _euclid4_system() -> RewriteSystem:
    rules = {
        ('X1', 'X2'): [(_q(1), ('X2', 'X1'))],
        ('X1', 'X3'): [(_q(1), ('X3', 'X1'))],
        ('X3', 'X4'): [(_q(1), ('X4', 'X3'))],
        ('X2', 'X4'): [(_q(1), ('X4', 'X2'))],
        ('X2', 'X3'): [(ONE, ('X3', 'X2'))],
        ('X1', 'X4'): [(ONE, ('X4', 'X1')), (-LAMBDA, ('X3', 'X2'))],
    }
    gens = _gens('euclid4', ('X4', 'X3', 'X2', 'X1'))
    return RewriteSystem('euclid4', None, gens, _rules(rules), ('X1', 'X2', 'X3', 'X4'))


def _minkowski_system() -> RewriteSystem:
    lam = LAMBDA
    rules = {
        ('Xm', 'Xp'): [(ONE, ('Xp', 'Xm')), (lam, ('X3', 'X3')), (-lam, ('X0', 'X3'))],
        ('Xm', 'X3'): [(_q(2), ('X3', 'Xm')), (-_q(1) * lam, ('X0', 'Xm'))],
        ('X3', 'Xp'): [(_q(2), ('Xp', 'X3')), (-_q(1) * lam, ('Xp', 'X0'))],
        ('X3', 'X0'): [(ONE, ('X0', 'X3'))],
        ('Xm', 'X0'): [(ONE, ('X0', 'Xm'))],
        ('X0', 'Xp'): [(ONE, ('Xp', 'X0'))],
    }
    gens = _gens('minkowski', ('Xp', 'X0', 'X3', 'Xm'))
    return RewriteSystem('minkowski', None, gens, _rules(rules), ('Xp', 'X0', 'X3', 'Xm'))


@lru_cache(maxsize=None)
def builtin_space(tag: str, calculus: Optional[str] = None) -> RewriteSystem:
    """Rewrite system of a built-in space; the plane also carries four derivative calculi"""
    if tag == 'plane':
        return _plane_system(calculus)
    if calculus is not None:
        raise UnsupportedSpaceError(f"no derivative rules on {tag}")
    if tag == 'euclid3':
        return _euclid3_system()
    if tag == 'euclid4':
        return _euclid4_system()
    if tag == 'minkowski':
        return _minkowski_system()
    raise UnsupportedSpaceError(f"Unknown space tag: {tag}")


# -- W and its inverse -----------------------------------------------------

def w_map(f: PolyFun, rs: RewriteSystem, ordering: str = 'standard') -> NCPoly:
    """Commutative function -> normal-ordered (or reverse-ordered) word sum"""
    f.require_polynomial("W")
    order = f.coords.normal_order if ordering == 'standard' else tuple(reversed(f.coords.normal_order))
    gens = rs.coordinate_generators
    out = NCPoly(rs.tag)
    for exps, c in f.terms.items():
        word: List[str] = []
        for i in order:
            word.extend([gens[i]] * exps[i])
        out._add(tuple(word), c)
    return out


def w_inv(p: NCPoly, rs: RewriteSystem, ordering: str = 'standard') -> PolyFun:
    """Normal-ordered coordinate words -> commutative function"""
    coords = rs.coords
    index = {g: i for i, g in enumerate(rs.coordinate_generators)}
    terms: Dict[Tuple[int, ...], QScalar] = {}
    for word, c in p.terms.items():
        ranks = [rs.rank(g) for g in word]
        ordered = all(a <= b for a, b in zip(ranks, ranks[1:])) if ordering == 'standard' \
            else all(a >= b for a, b in zip(ranks, ranks[1:]))
        if not ordered or any(g not in index for g in word):
            raise RewriteError(f"word {' '.join(word)} is not in {ordering} order")
        exps = [0] * coords.dim
        for g in word:
            exps[index[g]] += 1
        terms[tuple(exps)] = terms.get(tuple(exps), ZERO) + c
    return PolyFun(coords, terms)


def nc_product(f: PolyFun, g: PolyFun, rs: RewriteSystem) -> PolyFun:
    """W^-1(W(f) W(g)) computed by rewriting"""
    return w_inv(normal_order(w_map(f, rs) * w_map(g, rs), rs), rs)


# -- derivative oracle -----------------------------------------------------

def _derivative_word(rs: RewriteSystem, word: Sequence[Union[int, str]]) -> Word:
    out = []
    for d in word:
        if isinstance(d, int):
            out.append(rs.derivative_generators[d])
        elif d in rs.derivative_generators:
            out.append(d)
        else:
            raise RewriteError(f"{d} is not a derivative of the {rs.calculus} calculus")
    return tuple(out)


def _calculus_for(rs: Optional[RewriteSystem], action: str, tag: str = 'plane') -> RewriteSystem:
    if rs is not None:
        if not rs.derivative_generators:
            raise UnsupportedSpaceError(f"{rs.tag} has no derivative rules")
        return rs
    if tag != 'plane':
        raise UnsupportedSpaceError(f"{tag} has no derivative rules")
    if action not in CALCULI:
        raise ValueError(f"unknown action {action!r}, expected one of {CALCULI}")
    return builtin_space('plane', action)


def action_oracle(d: Sequence[Union[int, str]], f: PolyFun, action: str = 'L',
                  rs: Optional[RewriteSystem] = None) -> PolyFun:
    """Derivative action by brute force: normal-order and take the derivative-free part.

    Left calculi compute d W(f), right calculi W(f) d; a derivative word is
    written as it stands in the product.
    """
    rs = _calculus_for(rs, action, f.coords.tag)
    word = _derivative_word(rs, d)
    dpoly = NCPoly.word(rs.tag, *word)
    product = dpoly * w_map(f, rs) if rs.derivatives_right else w_map(f, rs) * dpoly
    reduced = normal_order(product, rs)
    kept = NCPoly(rs.tag, {w: c for w, c in reduced.terms.items()
                           if not any(rs.is_derivative(g) for g in w)})
    return w_inv(kept, rs)


def extract_l_action(i: int, j: int, m: PolyFun, variant: str = 'L',
                     rs: Optional[RewriteSystem] = None) -> PolyFun:
    """(L)^i_j acting on m: coefficient of the single trailing derivative j in d^i W(m)"""
    if variant not in ('L', 'Lbar'):
        raise ValueError(f"L-actions exist for the left calculi, got {variant!r}")
    rs = _calculus_for(rs, variant, m.coords.tag)
    di, dj = rs.derivative_generators[i], rs.derivative_generators[j]
    reduced = normal_order(NCPoly.word(rs.tag, di) * w_map(m, rs), rs)
    kept = NCPoly(rs.tag)
    for word, c in reduced.terms.items():
        if word and word[-1] == dj and not any(rs.is_derivative(g) for g in word[:-1]):
            kept._add(word[:-1], c)
    return w_inv(kept, rs)


# -- consistency checks ----------------------------------------------------

def check_confluence(rs: RewriteSystem) -> List[Word]:
    """Length-3 overlaps whose two reduction orders disagree"""
    failures = []
    labels = [g.label for g in rs.generators]
    for a, b, c in itertools.product(labels, repeat=3):
        if not (rs.rank(a) > rs.rank(b) > rs.rank(c)):
            continue
        left = NCPoly(rs.tag)
        for coeff, rep in rs.rule((a, b)):
            left = left + NCPoly(rs.tag, {rep + (c,): coeff})
        right = NCPoly(rs.tag)
        for coeff, rep in rs.rule((b, c)):
            right = right + NCPoly(rs.tag, {(a,) + rep: coeff})
        if normal_order(left, rs) != normal_order(right, rs):
            failures.append((a, b, c))
    logger.debug(f"{rs.tag}/{rs.calculus}: confluence failures {len(failures)}")
    return failures


def relation_defect(rs_source: RewriteSystem, rs_target: RewriteSystem, factor: QScalar) -> List[NCPoly]:
    """Rules of rs_source with derivatives replaced by factor * (target derivative),
    normal-ordered in rs_target; all entries vanish when the calculi agree"""
    rename = dict(zip(rs_source.derivative_generators, rs_target.derivative_generators))
    defects = []
    for (g, h), rhs in rs_source.rules:
        relation = _substituted(rs_target.tag, (g, h), ONE, rename, factor)
        for c, word in rhs:
            relation = relation - _substituted(rs_target.tag, word, c, rename, factor)
        reduced = normal_order(relation, rs_target)
        if not reduced.is_zero():
            defects.append(reduced)
    return defects


def _substituted(tag: str, word: Word, c: QScalar, rename: Dict[str, str], factor: QScalar) -> NCPoly:
    coeff = c
    out = []
    for g in word:
        if g in rename:
            coeff = coeff * factor
            out.append(rename[g])
        else:
            out.append(g)
    return NCPoly(tag, {tuple(out): coeff})
