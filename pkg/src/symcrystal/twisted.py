"""A second model of V_theta(0) inside U_q^-, used to cross-check the closed formulas.

``phi`` goes to 1 and

    F_i(a) = f_i a + q^{(alpha_i, wt a)} a f_{-i},   E_i = e'_i,
    T_i(a) = q^{(alpha_i + alpha_{-i}, wt a)} a.

Nothing here reads the closed formulas of :mod:`symcrystal.vtheta`, so agreement
between ``image(apply_F(k, v))`` and ``twisted_F(k, image(v))`` is a real check.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict

from .lincomb import addto
from .multiseg import EMPTY, Multisegment, pairing, weight
from .qarith import Scalar, qpow
from .uqminus import UqElement, apply_words, eprime, estar, expand_monomial, multiply, pbw, segment_element


def _letter(k: int) -> UqElement:
    return segment_element(k, k)


@lru_cache(maxsize=None)
def _F_mono(k: int, m: Multisegment) -> UqElement:
    a = pbw(m)
    left = multiply(_letter(k), a)
    right = multiply(a, _letter(-k)).scale(qpow(pairing(k, weight(m))))
    return left + right


def twisted_F(k: int, x: UqElement) -> UqElement:
    acc: Dict[Multisegment, Scalar] = {}
    for m, c in x.items():
        for m2, d in _F_mono(k, m).items():
            addto(acc, m2, c * d)
    return UqElement._wrap(acc)


def twisted_E(k: int, x: UqElement) -> UqElement:
    return eprime(k, x)


def twisted_T(k: int, x: UqElement) -> UqElement:
    acc: Dict[Multisegment, Scalar] = {}
    for m, c in x.items():
        w = weight(m)
        acc[m] = c * qpow(pairing(k, w) + pairing(-k, w))
    return UqElement._wrap(acc)


@lru_cache(maxsize=None)
def image(m: Multisegment) -> UqElement:
    """``P_theta(m) phi`` in this model."""
    return apply_words(expand_monomial(m, theta_normalized=True), twisted_F, pbw(EMPTY))


def image_of(v) -> UqElement:
    out = UqElement()
    for m, c in v.items():
        out = out + image(m).scale(c)
    return out


def E_via_derivations(k: int, a: UqElement) -> UqElement:
    """``E_k(a phi) = (e'_k a + q^{(alpha_k, wt e*_{-k} a)} e*_{-k} a) phi``, returned as the
    element of U_q^- whose action on phi gives the result."""
    out = eprime(k, a)
    for m, c in estar(-k, a).items():
        out = out + pbw(m, c * qpow(pairing(k, weight(m))))
    return out


def to_vtheta(x: UqElement):
    """``x phi`` in the PBW basis of V_theta(0), via words in the ``F_k``."""
    from .vtheta import ThetaVector, apply_F, phi

    out = ThetaVector()
    for m, c in x.items():
        out = out + apply_words(expand_monomial(m), apply_F, phi()).scale(c)
    return out
