"""PBW normal forms in the negative half of U_q(gl_infinity).

Elements are finite combinations of ordered products ``P(m)`` of divided
powers of segments (largest segment first).  Products are brought back to
normal form by straightening adjacent out-of-order pairs of divided powers.

Two straightening drivers share the same pair rule :func:`straighten_pair`:

* :func:`multiply` inserts factors from the right into a normal form and
  memoizes every insertion; this is the fast path used everywhere;
* :func:`straighten_word` rewrites an arbitrary word of divided powers,
  choosing the leftmost (or a random) out-of-order pair at every step.

Agreement of the two drivers, and associativity of :func:`multiply`, are
checked by the test-suite rather than assumed.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .multiseg import EMPTY, Multisegment, Segment, cartan, pairing, weight
from .qarith import ONE, ZERO, Q, Scalar, as_scalar, prod_even, qbinom, qfact, qint, qpow

__all__ = [
    "UqElement",
    "FuelExhausted",
    "DEFAULT_FUEL",
    "set_fuel",
    "relation_case",
    "straighten_pair",
    "straighten_word",
    "multiply",
    "pbw",
    "segment_element",
    "expand_segment",
    "expand_monomial",
    "from_words",
    "apply_words",
    "theta_normalizer",
    "bar_uq",
    "eprime",
    "estar",
    "eprime_words",
    "estar_words",
    "ad_t_exponent",
    "parse_product",
]

Factor = Tuple[Segment, int]
Word = Tuple[Factor, ...]

DEFAULT_FUEL = 10**7


class FuelExhausted(RuntimeError):
    """Raised when a straightening run exceeds its rewrite budget."""


class _Fuel:
    budget = DEFAULT_FUEL
    used = 0

    @classmethod
    def spend(cls, n: int = 1) -> None:
        cls.used += n
        if cls.used > cls.budget:
            raise FuelExhausted(f"more than {cls.budget} straightening rewrites")


def set_fuel(budget: int) -> None:
    """Set the global rewrite budget and reset the counter."""
    if budget <= 0:
        raise ValueError("fuel must be positive")
    _Fuel.budget = budget
    _Fuel.used = 0


def _addto(acc: Dict, key, c: Scalar) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class UqElement:
    """A finite K-linear combination of PBW monomials ``P(m)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Multisegment, Scalar]] = None):
        self.terms: Dict[Multisegment, Scalar] = {}
        for m, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                self.terms[m] = c

    @classmethod
    def _wrap(cls, terms: Dict[Multisegment, Scalar]) -> "UqElement":
        out = object.__new__(cls)
        out.terms = terms
        return out

    def coeff(self, m: Multisegment) -> Scalar:
        return self.terms.get(m, ZERO)

    def items(self):
        return self.terms.items()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "UqElement") -> "UqElement":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _addto(acc, m, c)
        return UqElement._wrap(acc)

    def __neg__(self) -> "UqElement":
        return UqElement._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "UqElement") -> "UqElement":
        return self + (-other)

    def scale(self, c) -> "UqElement":
        c = as_scalar(c)
        if not c:
            return UqElement()
        return UqElement._wrap({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UqElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, UqElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*P({m})" for m, c in sorted(self.terms.items(), key=lambda it: str(it[0])))

    __repr__ = __str__


def pbw(m: Multisegment, c=1) -> UqElement:
    return UqElement({m: c})


def segment_element(lo: int, hi: int, power: int = 1) -> UqElement:
    """The divided power ``<lo,hi>^(power)``."""
    return pbw(Multisegment({(lo, hi): power}))


# the pair rule ---------------------------------------------------------------


def relation_case(s: Segment, t: Segment) -> str:
    """Name the relation used to straighten ``s * t`` when ``s`` is not above ``t``."""
    if s == t:
        return "merge"
    if (s.hi, s.lo) > (t.hi, t.lo):
        return "ordered"
    if s.hi == t.hi:
        return "same-end"  # q-commute on a shared right end
    if s.lo == t.lo:
        return "same-start"  # q-commute on a shared left end
    if s.lo > t.lo:
        return "nested"  # t.lo < s.lo <= s.hi < t.hi
    if s.hi < t.lo - 2:
        return "apart"
    if s.hi == t.lo - 2:
        return "adjacent"
    return "overlap"  # s.lo < t.lo <= s.hi < t.hi


@lru_cache(maxsize=None)
def _overlap_kappa(a: int, b: int) -> Tuple[Scalar, ...]:
    """Coefficients for reordering ``X^a Y^b`` in ordinary powers.

    With ``XY = YX + cU``, ``UY = q^-2 YU`` and ``XU = q^-2 UX`` one has
    ``X^a Y^b = sum_s kappa[s] Y^(b-s) U^s X^(a-s)``; the returned tuple omits
    the factor ``c^s``."""
    if a == 0:
        return (ONE,)
    prev = _overlap_kappa(a - 1, b)
    out = []
    for s in range(min(a, b) + 1):
        v = ZERO
        if s < len(prev):
            v = v + qpow(-2 * s) * prev[s]
        if 1 <= s <= len(prev):
            v = v + qpow(-(b - s)) * qint(b - s + 1) * prev[s - 1]
        out.append(v)
    return tuple(out)


@lru_cache(maxsize=None)
def straighten_pair(s: Segment, a: int, t: Segment, b: int) -> Tuple[Tuple[Scalar, Word], ...]:
    """Rewrite ``<s>^(a) <t>^(b)`` as a sum of ordered words of divided powers.

    Every returned word is PBW-descending.  Callers use it when ``s`` is below
    ``t`` in PBW order or ``s == t``."""
    case = relation_case(s, t)
    if case == "merge":
        return ((qbinom(a + b, a), ((s, a + b),)),)
    if case == "ordered":
        return ((ONE, ((s, a), (t, b))),)
    if case in ("apart", "nested"):
        return ((ONE, ((t, b), (s, a))),)
    if case in ("same-end", "same-start"):
        return ((qpow(-a * b), ((t, b), (s, a))),)
    if case == "adjacent":
        z = Segment(s.lo, t.hi)
        out = []
        for r in range(min(a, b) + 1):
            word = tuple((seg, n) for seg, n in ((t, b - r), (z, r), (s, a - r)) if n)
            out.append((qpow((a - r) * (b - r)), word))
        return tuple(out)
    if case == "overlap":
        w, v = Segment(s.lo, t.hi), Segment(t.lo, s.hi)
        c = qpow(-1) - Q
        kappa = _overlap_kappa(a, b)
        out = []
        for r in range(min(a, b) + 1):
            coef = (
                kappa[r]
                * c**r
                * qfact(b - r)
                * qfact(a - r)
                * qfact(r) ** 2
                / (qfact(a) * qfact(b))
            )
            if not coef:
                continue
            word = tuple((seg, n) for seg, n in ((t, b - r), (w, r), (v, r), (s, a - r)) if n)
            out.append((coef, word))
        return tuple(out)
    raise AssertionError(f"no straightening relation for {s}, {t}")


# insertion engine -----------------------------------------------------------


@lru_cache(maxsize=None)
def _lmul(s: Segment, a: int, n: Multisegment) -> Tuple[Tuple[Multisegment, Scalar], ...]:
    """Normal form of ``<s>^(a) P(n)``."""
    if a == 0:
        return ((n, ONE),)
    if not n:
        return ((Multisegment._from_counts({s: a}), ONE),)
    t, b = n.items[0]
    if (s.hi, s.lo) > (t.hi, t.lo):
        return ((n + Multisegment._from_counts({s: a}), ONE),)
    _Fuel.spend()
    rest = Multisegment._from_counts({u: k for u, k in n.items[1:]})
    acc: Dict[Multisegment, Scalar] = {}
    for coef, word in straighten_pair(s, a, t, b):
        for m, c in _lmul_word(word, rest):
            _addto(acc, m, coef * c)
    return tuple(acc.items())


def _lmul_word(word: Word, n: Multisegment) -> List[Tuple[Multisegment, Scalar]]:
    cur: Dict[Multisegment, Scalar] = {n: ONE}
    for seg, a in reversed(word):
        nxt: Dict[Multisegment, Scalar] = {}
        for m, c in cur.items():
            for m2, c2 in _lmul(seg, a, m):
                _addto(nxt, m2, c * c2)
        cur = nxt
    return list(cur.items())


@lru_cache(maxsize=None)
def _mono_product(m: Multisegment, n: Multisegment) -> Tuple[Tuple[Multisegment, Scalar], ...]:
    return tuple(_lmul_word(m.items, n))


def multiply(x: UqElement, y: UqElement) -> UqElement:
    acc: Dict[Multisegment, Scalar] = {}
    for m, c in x.terms.items():
        for n, d in y.terms.items():
            cd = c * d
            for p, e in _mono_product(m, n):
                _addto(acc, p, cd * e)
    return UqElement._wrap(acc)


def product(*xs: UqElement) -> UqElement:
    out = pbw(EMPTY)
    for x in reversed(xs):
        out = multiply(x, out)
    return out


# word-rewriting driver -------------------------------------------------------


def _out_of_order(word: Word) -> List[int]:
    return [p for p in range(len(word) - 1) if (word[p][0].hi, word[p][0].lo) <= (word[p + 1][0].hi, word[p + 1][0].lo)]


def straighten_word(word: Sequence[Factor], rng: Optional[random.Random] = None, fuel: Optional[int] = None) -> UqElement:
    """Normal form of a product of divided powers by repeated pair rewriting.

    Without ``rng`` the leftmost out-of-order pair is rewritten first; with an
    ``rng`` the position is drawn at random, which exercises confluence."""
    budget = DEFAULT_FUEL if fuel is None else fuel
    start: Word = tuple((Segment(*s), a) for s, a in word if a)
    pending: Dict[Word, Scalar] = {start: ONE}
    done: Dict[Multisegment, Scalar] = {}
    steps = 0
    while pending:
        w, c = pending.popitem()
        bad = _out_of_order(w)
        if not bad:
            _addto(done, Multisegment._from_counts({s: a for s, a in w}), c)
            continue
        steps += 1
        if steps > budget:
            raise FuelExhausted(f"more than {budget} rewrites in straighten_word")
        p = bad[0] if rng is None else rng.choice(bad)
        (s, a), (t, b) = w[p], w[p + 1]
        for coef, mid in straighten_pair(s, a, t, b):
            _addto(pending, w[:p] + mid + w[p + 2 :], c * coef)
    return UqElement._wrap(done)


# F-word expansions -----------------------------------------------------------


def _word_product(x: Dict[tuple, Scalar], y: Dict[tuple, Scalar]) -> Dict[tuple, Scalar]:
    acc: Dict[tuple, Scalar] = {}
    for u, c in x.items():
        for v, d in y.items():
            _addto(acc, u + v, c * d)
    return acc


@lru_cache(maxsize=None)
def _expand_segment(lo: int, hi: int) -> Tuple[Tuple[tuple, Scalar], ...]:
    if lo == hi:
        return (((lo,), ONE),)
    inner = dict(_expand_segment(lo, hi - 2))
    acc = _word_product(inner, {(hi,): ONE})
    for w, c in _word_product({(hi,): ONE}, inner).items():
        _addto(acc, w, -Q * c)
    return tuple(acc.items())


def expand_segment(s: Tuple[int, int]) -> Dict[tuple, Scalar]:
    """``<i,j>`` as a combination of words in the generators ``f_k``."""
    return dict(_expand_segment(*s))


def theta_normalizer(m: Multisegment) -> Scalar:
    """The scalar ``r`` with ``P_theta(m) = r * P(m)``."""
    r = ONE
    for s, n in m.items:
        if s.lo == -s.hi:
            r = r * qfact(n) / prod_even(n)
    return r


@lru_cache(maxsize=None)
def _expand_power(lo: int, hi: int, n: int, theta: bool) -> Tuple[Tuple[tuple, Scalar], ...]:
    base = dict(_expand_segment(lo, hi))
    acc: Dict[tuple, Scalar] = {(): ONE}
    for _ in range(n):
        acc = _word_product(acc, base)
    norm = prod_even(n) if (theta and lo == -hi) else qfact(n)
    inv = norm.inverse()
    return tuple((w, c * inv) for w, c in acc.items())


@lru_cache(maxsize=None)
def _expand_monomial(m: Multisegment, theta: bool) -> Tuple[Tuple[tuple, Scalar], ...]:
    acc: Dict[tuple, Scalar] = {(): ONE}
    for s, n in m.items:
        acc = _word_product(acc, dict(_expand_power(s.lo, s.hi, n, theta)))
    return tuple(acc.items())


def expand_monomial(m: Multisegment, theta_normalized: bool = False) -> Dict[tuple, Scalar]:
    """Words in the ``f_k`` for ``P(m)`` (or ``P_theta(m)`` when ``theta_normalized``)."""
    if theta_normalized and any(s.lo + s.hi < 0 for s, _ in m.items):
        raise ValueError(f"{m} is not theta-restricted")
    return dict(_expand_monomial(m, theta_normalized))


def apply_words(words: Mapping[tuple, Scalar], act, unit):
    """Evaluate ``sum c_w * act(w[0], act(w[1], ... act(w[-1], unit)))``.

    Words are grouped by common prefixes, so every prefix is acted on once.
    ``unit`` and the values returned by ``act`` must support ``+`` and ``scale``."""

    def rec(items: List[Tuple[tuple, Scalar]], depth: int):
        out = None
        groups: Dict[int, List[Tuple[tuple, Scalar]]] = {}
        for w, c in items:
            if len(w) == depth:
                term = unit.scale(c)
                out = term if out is None else out + term
            else:
                groups.setdefault(w[depth], []).append((w, c))
        for a, sub in groups.items():
            term = act(a, rec(sub, depth + 1))
            out = term if out is None else out + term
        return out

    res = rec(list(words.items()), 0)
    return unit.scale(ZERO) if res is None else res


def from_words(words: Mapping[tuple, Scalar]) -> UqElement:
    """Straighten a combination of words in the generators back to PBW form."""
    return apply_words(words, lambda a, x: multiply(segment_element(a, a), x), pbw(EMPTY))


# bar involution --------------------------------------------------------------


@lru_cache(maxsize=None)
def _bar_segment(lo: int, hi: int) -> UqElement:
    if lo == hi:
        return segment_element(lo, lo)
    inner = _bar_segment(lo, hi - 2)
    f = segment_element(hi, hi)
    return multiply(inner, f) - multiply(f, inner).scale(qpow(-1))


@lru_cache(maxsize=None)
def _bar_power(lo: int, hi: int, n: int) -> UqElement:
    base = _bar_segment(lo, hi)
    acc = pbw(EMPTY)
    for _ in range(n):
        acc = multiply(acc, base)
    return acc.scale(qfact(n).inverse())


@lru_cache(maxsize=None)
def _bar_monomial(m: Multisegment) -> UqElement:
    acc = pbw(EMPTY)
    for s, n in reversed(m.items):
        acc = multiply(_bar_power(s.lo, s.hi, n), acc)
    return acc


def bar_uq(x: UqElement) -> UqElement:
    """The ring involution fixing every ``f_k`` and sending ``q`` to ``q^-1``."""
    acc = UqElement()
    for m, c in x.terms.items():
        acc = acc + _bar_monomial(m).scale(c.bar())
    return acc


# derivations ----------------------------------------------------------------


def ad_t_exponent(k: int, m: Multisegment) -> int:
    """Exponent ``e`` with ``t_k P(m) t_k^-1 = q^e P(m)``; equals ``(alpha_k, wt m)``."""
    return pairing(k, weight(m))


def _eprime_power(k: int, s: Segment, n: int) -> Optional[Tuple[Scalar, Multisegment]]:
    if s.lo != k:
        return None
    if s.hi == k:
        return qpow(1 - n), Multisegment._from_counts({s: n - 1} if n > 1 else {})
    counts = {Segment(k + 2, s.hi): 1}
    if n > 1:
        counts[s] = n - 1
    return (ONE - qpow(2)) * qpow(1 - n), Multisegment._from_counts(counts)


def _estar_power(k: int, s: Segment, n: int) -> Optional[Tuple[Scalar, Multisegment]]:
    if s.hi != k:
        return None
    if s.lo == k:
        return qpow(1 - n), Multisegment._from_counts({s: n - 1} if n > 1 else {})
    counts = {Segment(s.lo, k - 2): 1}
    if n > 1:
        counts[s] = n - 1
    return (ONE - qpow(2)) * qpow(1 - n), Multisegment._from_counts(counts)


def _split(m: Multisegment, p: int) -> Tuple[Multisegment, Multisegment]:
    return (
        Multisegment._from_counts(dict(m.items[:p])),
        Multisegment._from_counts(dict(m.items[p + 1 :])),
    )


@lru_cache(maxsize=None)
def _eprime_mono(k: int, m: Multisegment) -> UqElement:
    acc = UqElement()
    for p, (s, n) in enumerate(m.items):
        d = _eprime_power(k, s, n)
        if d is None:
            continue
        coef, mid = d
        pre, post = _split(m, p)
        coef = coef * qpow(ad_t_exponent(k, pre))
        acc = acc + multiply(multiply(pbw(pre), pbw(mid)), pbw(post)).scale(coef)
    return acc


@lru_cache(maxsize=None)
def _estar_mono(k: int, m: Multisegment) -> UqElement:
    acc = UqElement()
    for p, (s, n) in enumerate(m.items):
        d = _estar_power(k, s, n)
        if d is None:
            continue
        coef, mid = d
        pre, post = _split(m, p)
        coef = coef * qpow(ad_t_exponent(k, post))
        acc = acc + multiply(multiply(pbw(pre), pbw(mid)), pbw(post)).scale(coef)
    return acc


def eprime(k: int, x: UqElement) -> UqElement:
    """The derivation ``e'_k``: ``e'_k(ab) = e'_k(a) b + (Ad t_k)(a) e'_k(b)``."""
    acc = UqElement()
    for m, c in x.terms.items():
        acc = acc + _eprime_mono(k, m).scale(c)
    return acc


def estar(k: int, x: UqElement) -> UqElement:
    """The derivation ``e*_k``: ``e*_k(ab) = a e*_k(b) + e*_k(a) (Ad t_k)(b)``."""
    acc = UqElement()
    for m, c in x.terms.items():
        acc = acc + _estar_mono(k, m).scale(c)
    return acc


def _word_pairing_sum(k: int, letters: Iterable[int]) -> int:
    return sum(cartan(k, j) for j in letters)


def eprime_words(k: int, words: Mapping[tuple, Scalar]) -> Dict[tuple, Scalar]:
    """``e'_k`` on words: remove one letter ``k``, weighting by the letters to its left."""
    acc: Dict[tuple, Scalar] = {}
    for w, c in words.items():
        for p, j in enumerate(w):
            if j == k:
                _addto(acc, w[:p] + w[p + 1 :], c * qpow(-_word_pairing_sum(k, w[:p])))
    return acc


def estar_words(k: int, words: Mapping[tuple, Scalar]) -> Dict[tuple, Scalar]:
    """``e*_k`` on words: remove one letter ``k``, weighting by the letters to its right."""
    acc: Dict[tuple, Scalar] = {}
    for w, c in words.items():
        for p, j in enumerate(w):
            if j == k:
                _addto(acc, w[:p] + w[p + 1 :], c * qpow(-_word_pairing_sum(k, w[p + 1 :])))
    return acc


# text form -------------------------------------------------------------------

_FACTOR_RE = re.compile(r"^\s*<\s*(-?\d+)\s*,\s*(-?\d+)\s*>\s*(?:\^\s*(\(\s*\d+\s*\)|\d+))?\s*$")


def parse_product(text: str) -> UqElement:
    """Parse ``"<1,3>^(2) * <-1,1>"``; ``^(n)`` is a divided power, ``^n`` an ordinary power."""
    t = text.strip()
    if not t:
        raise ValueError("empty product")
    factors: List[UqElement] = []
    for part in t.split("*"):
        mt = _FACTOR_RE.match(part)
        if not mt:
            raise ValueError(f"cannot parse factor {part!r}")
        s = Segment.of(int(mt.group(1)), int(mt.group(2)))
        exp = mt.group(3)
        if exp is None:
            factors.append(segment_element(s.lo, s.hi))
        elif exp.startswith("("):
            n = int(exp.strip("() "))
            factors.append(segment_element(s.lo, s.hi, n) if n else pbw(EMPTY))
        else:
            n = int(exp)
            factors.append(segment_element(s.lo, s.hi, n).scale(qfact(n)) if n else pbw(EMPTY))
    return product(*factors)
