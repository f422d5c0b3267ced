"""Published straightening identities, instantiated over small parameter ranges.

Each generator yields ``Case`` records holding both sides of an identity.  The
left side is computed by multiplying factors with the segment-level engine; the
right side is assembled directly in normal form from the identity's statement.
Cases living in V_theta(0) (those applied to phi) are evaluated with the closed
action formulas.  :func:`letter_route` recomputes a U_q^- left side letter by
letter, which exercises a different part of the engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from .multiseg import Multisegment
from .qarith import ONE, Scalar, as_scalar, prod_even, qfact, qint, qpow
from .uqminus import UqElement, _expand_power, _word_product, from_words, multiply, pbw
from .vtheta import ThetaVector, apply_divided_F, apply_F, unit

Factor = Tuple[int, int, int, bool]  # (lo, hi, power, modified divided power?)


@dataclass
class Case:
    name: str
    params: Tuple
    factors: Tuple[Factor, ...]
    lhs: Union[UqElement, ThetaVector]
    rhs: Union[UqElement, ThetaVector]

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _odd(lo: int, hi: int) -> List[int]:
    start = lo if lo % 2 else lo + 1
    return list(range(start, hi + 1, 2))


def _factor_element(f: Factor) -> UqElement:
    lo, hi, n, modified = f
    if n < 0:
        return UqElement()
    return pbw(Multisegment({(lo, hi): n}), _modified_scale(lo, hi, n, modified))


def _modified_scale(lo: int, hi: int, n: int, modified: bool) -> Scalar:
    """``<lo,hi>^[n] = scale * <lo,hi>^(n)``"""
    return qfact(n) / prod_even(n) if modified and lo == -hi else ONE


def engine_product(factors: Sequence[Factor]) -> UqElement:
    out = pbw(Multisegment())
    for f in factors:
        out = multiply(out, _factor_element(f))
    return out


def letter_cost(factors: Sequence[Factor]) -> int:
    """log2 of the number of words the letter route expands into."""
    return sum(max(n, 0) * (hi - lo) // 2 for lo, hi, n, _ in factors)


def letter_route(factors: Sequence[Factor]) -> UqElement:
    """Expand every factor into words in the ``f_k`` and straighten letter by letter."""
    words: Dict[tuple, Scalar] = {(): ONE}
    for lo, hi, n, modified in factors:
        if n < 0:
            return UqElement()
        words = _word_product(words, dict(_expand_power(lo, hi, n, modified and lo == -hi)))
    return from_words(words)


def normal(terms: Sequence[Tuple[object, Sequence[Factor]]]) -> UqElement:
    """``sum coef * (ordered product of factors)``; factors are assumed PBW-descending."""
    out = UqElement()
    for coef, factors in terms:
        if any(n < 0 for _, _, n, _ in factors):
            continue
        counts: Dict[Tuple[int, int], int] = {}
        scale = as_scalar(coef)
        for lo, hi, n, modified in factors:
            counts[(lo, hi)] = counts.get((lo, hi), 0) + n
            scale = scale * _modified_scale(lo, hi, n, modified)
        out = out + pbw(Multisegment(counts), scale)
    return out


def _case(name, params, factors, rhs_terms) -> Case:
    factors = tuple(factors)
    return Case(name, params, factors, engine_product(factors), normal(rhs_terms))


def _seg(lo, hi, n=1, modified=False) -> Factor:
    return (lo, hi, n, modified)


# pairwise relations -------------------------------------------------------------


def pair_relations(lo: int = -5, hi: int = 5) -> Iterator[Case]:
    """The six commutation relations between two segments."""
    I = _odd(lo, hi)
    for i in I:
        for j in I:
            if j < i:
                continue
            for k in I:
                for l in I:
                    if l < k:
                        continue
                    if j < k - 2:
                        yield _case("commute-apart", (i, j, k, l), [_seg(i, j), _seg(k, l)],
                                    [(1, [_seg(k, l), _seg(i, j)])])
    for i in I:
        for j in I:
            for k in I:
                if i <= j < k:
                    yield _case("concatenate", (i, j, k), [_seg(i, j), _seg(j + 2, k)],
                                [(1, [_seg(i, k)]), (qpow(1), [_seg(j + 2, k), _seg(i, j)])])
    for i in I:
        for j in I:
            for k in I:
                for l in I:
                    if i < j <= k < l:
                        yield _case("commute-nested", (i, j, k, l), [_seg(j, k), _seg(i, l)],
                                    [(1, [_seg(i, l), _seg(j, k)])])
                        yield _case("overlap", (i, j, k, l), [_seg(i, k), _seg(j, l)],
                                    [(1, [_seg(j, l), _seg(i, k)]),
                                     (qpow(-1) - qpow(1), [_seg(i, l), _seg(j, k)])])
    for i in I:
        for j in I:
            for k in I:
                if i < j <= k:
                    yield _case("same-end", (i, j, k), [_seg(i, k), _seg(j, k)],
                                [(qpow(-1), [_seg(j, k), _seg(i, k)])])
                if i <= j < k:
                    yield _case("same-start", (i, j, k), [_seg(i, j), _seg(i, k)],
                                [(qpow(-1), [_seg(i, k), _seg(i, j)])])


def neighbour_relations(lo: int = -5, hi: int = 5) -> Iterator[Case]:
    """The three special cases around a single letter ``<j>``."""
    for j in _odd(lo + 2, hi - 2):
        yield _case("letter-after-pair", (j,), [_seg(j - 2, j), _seg(j, j)],
                    [(qpow(-1), [_seg(j, j), _seg(j - 2, j)])])
        yield _case("letter-before-pair", (j,), [_seg(j, j), _seg(j, j + 2)],
                    [(qpow(-1), [_seg(j, j + 2), _seg(j, j)])])
        yield _case("letter-inside", (j,), [_seg(j, j), _seg(j - 2, j + 2)],
                    [(1, [_seg(j - 2, j + 2), _seg(j, j)])])
        yield _case("pair-overlap", (j,), [_seg(j - 2, j), _seg(j, j + 2)],
                    [(1, [_seg(j, j + 2), _seg(j - 2, j)]),
                     (qpow(-1) - qpow(1), [_seg(j - 2, j + 2), _seg(j, j)])])


# divided-power identities ---------------------------------------------------------


def _qsum(n: int) -> Scalar:
    """q^n + q^-n"""
    return qpow(n) + qpow(-n)


def divided_power_relations(kmax: int = 5, nmax: int = 3, span: int = 4) -> Iterator[Case]:
    """Five identities moving ``<-k>`` or ``<k>`` across divided powers."""
    R = range(nmax + 1)
    for k in _odd(1, kmax):
        for l in _odd(k + 2, k + span):
            for a in R:
                for b in R:
                    yield _case("letter-through-pair-powers", (k, l, a, b),
                                [_seg(-k, -k), _seg(-k + 2, l, a), _seg(-k, l, b)],
                                [(qint(b + 1), [_seg(-k + 2, l, a - 1), _seg(-k, l, b + 1)]),
                                 (qpow(a - b), [_seg(-k + 2, l, a), _seg(-k, l, b), _seg(-k, -k)])])
        for a in R:
            for b in R:
                yield _case("letter-through-symmetric-powers", (k, a, b),
                            [_seg(-k, -k), _seg(-k + 2, k, a), _seg(-k, k, b, True)],
                            [(qint(2 * b + 2), [_seg(-k + 2, k, a - 1), _seg(-k, k, b + 1, True)]),
                             (qpow(a - b), [_seg(-k + 2, k, a), _seg(-k, k, b, True), _seg(-k, -k)])])
        if k > 1:
            for a in R:
                yield _case("letter-before-inner-symmetric", (k, a),
                            [_seg(-k, -k), _seg(-k + 2, k - 2, a, True)],
                            [(_qsum(a).inverse(), [_seg(-k + 2, k - 2, a - 1, True), _seg(-k, k - 2)]),
                             (qpow(a), [_seg(-k + 2, k - 2, a, True), _seg(-k, -k)])])
                yield _case("inner-symmetric-before-letter", (k, a),
                            [_seg(-k + 2, k - 2, a, True), _seg(k, k)],
                            [(_qsum(a).inverse(), [_seg(-k + 2, k), _seg(-k + 2, k - 2, a - 1, True)]),
                             (qpow(a), [_seg(k, k), _seg(-k + 2, k - 2, a, True)])])
            for l in _odd(-k + 2, k - 2):
                for a in R:
                    yield _case("power-before-letter", (k, l, a),
                                [_seg(l, k - 2, a), _seg(k, k)],
                                [(1, [_seg(l, k), _seg(l, k - 2, a - 1)]),
                                 (qpow(a), [_seg(k, k), _seg(l, k - 2, a)])])


def letter_through_power(kmax: int = 5, nmax: int = 3, span: int = 4) -> Iterator[Case]:
    """``<k>^(n) <k+2,l>^(a) = sum_s q^{(n-s)(a-s)} <k+2,l>^(a-s) <k,l>^(s) <k>^(n-s)``."""
    for k in _odd(-kmax, kmax):
        for l in _odd(k + 2, k + span):
            for n in range(nmax + 1):
                for a in range(nmax + 1):
                    terms = [(qpow((n - s) * (a - s)), [_seg(k + 2, l, a - s), _seg(k, l, s), _seg(k, k, n - s)])
                             for s in range(n + 1)]
                    yield _case("letter-power-through-power", (k, l, n, a),
                                [_seg(k, k, n), _seg(k + 2, l, a)], terms)


def serre_relations(lo: int = -5, hi: int = 5) -> Iterator[Case]:
    """``f_i^(2) f_j - f_i f_j f_i + f_j f_i^(2) = 0`` for neighbours, plain commutation otherwise."""
    I = _odd(lo, hi)
    for i in I:
        for j in I:
            if i == j:
                continue
            if abs(i - j) == 2:
                lhs = (engine_product([_seg(i, i, 2), _seg(j, j)])
                       - engine_product([_seg(i, i), _seg(j, j), _seg(i, i)])
                       + engine_product([_seg(j, j), _seg(i, i, 2)]))
            else:
                lhs = engine_product([_seg(i, i), _seg(j, j)]) - engine_product([_seg(j, j), _seg(i, i)])
            yield Case("serre", (i, j), (), lhs, UqElement())


# identities applied to phi ----------------------------------------------------------


def _theta_basis(parts: Sequence[Tuple[int, int, int]]) -> ThetaVector:
    if any(n < 0 for _, _, n in parts):
        return ThetaVector()
    counts: Dict[Tuple[int, int], int] = {}
    for lo, hi, n in parts:
        counts[(lo, hi)] = counts.get((lo, hi), 0) + n
    return unit(Multisegment(counts))


def _abcd(k: int, a: int, b: int, c: int, d: int) -> ThetaVector:
    return _theta_basis([(k, k, a), (-k + 2, k, b), (-k, k, c), (-k + 2, k - 2, d)])


def phi_relations(kmax: int = 5, nmax: int = 3) -> Iterator[Case]:
    """Identities in V_theta(0): one step of ``<-k>`` on a four-parameter family, and
    closed expansions of divided powers of ``<-k>`` applied to symmetric powers."""
    R = range(nmax + 1)
    for k in _odd(3, kmax):
        for a in R:
            for b in R:
                for c in R:
                    for d in R:
                        lhs = apply_F(-k, _abcd(k, a, b, c, d))
                        rhs = (_abcd(k, a, b - 1, c + 1, d).scale(qint(2 * c + 2))
                               + _abcd(k, a, b + 1, c, d - 1).scale(qint(b + 1) * qpow(b - 2 * c))
                               + _abcd(k, a + 1, b, c, d).scale(qint(a + 1) * qpow(2 * d - 2 * c)))
                        yield Case("letter-on-four-family", (k, a, b, c, d), (), lhs, rhs)
    for a in R:
        for m in R:
            lhs = apply_divided_F(-1, a, _theta_basis([(-1, 1, m)]))
            rhs = ThetaVector()
            for s in range(a // 2 + 1):
                coef = qpow(-2 * (a - s) * m + (a - 2 * s) * (a - 2 * s - 1) // 2)
                for nu in range(1, s + 1):
                    coef = coef * qint(2 * m + 2 * nu) / qint(2 * nu)
                rhs = rhs + _theta_basis([(1, 1, a - 2 * s), (-1, 1, m + s)]).scale(coef)
            yield Case("minus-one-powers", (a, m), (), lhs, rhs)
    for k in _odd(3, kmax):
        for n in R:
            for a in R:
                lhs = apply_divided_F(-k, n, _theta_basis([(-k + 2, k - 2, a)]))
                rhs = ThetaVector()
                for u in range(n + 1):
                    for t in range(n // 2 + 1):
                        j = u - t
                        i = n - j - 2 * t
                        if i < 0 or j < 0:
                            continue
                        e = 2 * a * i + j * (j - 1) // 2 - i * (t + u)
                        rhs = rhs + _abcd(k, i, j, t, a - u).scale(qpow(e))
                yield Case("minus-k-powers", (k, n, a), (), lhs, rhs)


def uq_cases(nmax: int = 3) -> Iterator[Case]:
    for gen in (pair_relations(), neighbour_relations(), divided_power_relations(nmax=nmax),
                letter_through_power(nmax=nmax), serre_relations()):
        yield from gen
