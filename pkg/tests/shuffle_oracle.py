"""Quantum shuffle model of U_q^-, used as an independent equality oracle.

The map sending ``f_i`` to the one-letter word ``(i)`` and products to the
twisted shuffle product is an injective algebra homomorphism, so two elements
of U_q^- are equal exactly when their shuffle images are.
"""

from functools import lru_cache

from symcrystal.multiseg import cartan
from symcrystal.qarith import ONE, ZERO, Q, prod_even, qfact, qpow


def _add(acc, w, c):
    s = acc.get(w, ZERO) + c
    if s:
        acc[w] = s
    else:
        acc.pop(w, None)


@lru_cache(maxsize=None)
def _shuffle_words(u, v):
    if not u:
        return {v: ONE}
    if not v:
        return {u: ONE}
    out = {}
    for w, c in _shuffle_words(u[1:], v).items():
        _add(out, (u[0],) + w, c)
    twist = qpow(-sum(cartan(v[0], a) for a in u))
    for w, c in _shuffle_words(u, v[1:]).items():
        _add(out, (v[0],) + w, c * twist)
    return out


def shuffle(x, y):
    out = {}
    for u, a in x.items():
        for v, b in y.items():
            for w, c in _shuffle_words(u, v).items():
                _add(out, w, a * b * c)
    return out


def combine(*pairs):
    out = {}
    for coef, x in pairs:
        for w, c in x.items():
            _add(out, w, coef * c)
    return out


def letter(i):
    return {(i,): ONE}


@lru_cache(maxsize=None)
def _segment(lo, hi):
    if lo == hi:
        return tuple(letter(lo).items())
    inner = dict(_segment(lo, hi - 2))
    f = letter(hi)
    return tuple(combine((ONE, shuffle(inner, f)), (-Q, shuffle(f, inner))).items())


def segment(lo, hi, n=1, modified=False):
    """Image of the (modified when requested and symmetric) divided power ``<lo,hi>^(n)``."""
    base = dict(_segment(lo, hi))
    acc = {(): ONE}
    for _ in range(n):
        acc = shuffle(acc, base)
    norm = prod_even(n) if modified and lo == -hi else qfact(n)
    return combine((norm.inverse(), acc))


def monomial(m, theta=False):
    acc = {(): ONE}
    for s, n in m.items:
        acc = shuffle(acc, segment(s.lo, s.hi, n, theta))
    return acc


def image(x, theta=False):
    """Shuffle image of a PBW combination ``x`` (anything with ``.items()`` of (m, c))."""
    out = {}
    for m, c in x.items():
        for w, d in monomial(m, theta).items():
            _add(out, w, c * d)
    return out


def factors_image(factors):
    acc = {(): ONE}
    for lo, hi, n, modified in factors:
        if n < 0:
            return {}
        acc = shuffle(acc, segment(lo, hi, n, modified))
    return acc


def words_image(words):
    """Image of a combination of words in the ``f_k``."""
    out = {}
    for w, c in words.items():
        acc = {(): ONE}
        for a in w:
            acc = shuffle(acc, letter(a))
        for v, d in acc.items():
            _add(out, v, c * d)
    return out
