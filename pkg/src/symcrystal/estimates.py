"""Order-of-vanishing estimates for the matrix coefficients of E_k and F_k.

For a basis vector ``m`` write ``F_k P(m) = sum F_{m,m'} P(m')`` (likewise for E)
and ``l = eps_k(m)``, ``l' = eps_k(m')``.  The crystal-basis criterion needs

* ``ord F_{m,m'} >= -(l + l' - 1)/2`` and ``ord E_{m,m'} >= -(l + l' - 1)/2``,
* the crystal edge coefficients to be ``q^{-l}(1 + qA0)`` and ``q^{1-l}(1 + qA0)``,
* strict inequality in the remaining cases, with side conditions that differ
  between negative indices (a tie-break statistic ``xi`` and a subset ``B''``)
  and positive indices (plain conditions on ``l`` and ``l'``).

:func:`violations` lists every failure for one ``(k, m)``.
"""

from __future__ import annotations

from typing import List, NamedTuple, Optional

from .crystal import largest_e_label, theta_E, theta_epsilon, theta_F
from .multiseg import Multisegment
from .qarith import Scalar, qpow
from .vtheta import _E_terms, _F_terms


class Violation(NamedTuple):
    rule: str
    k: int
    m: Multisegment
    target: Optional[Multisegment]
    detail: str


def xi(k: int, m: Multisegment) -> int:
    """Tie-break statistic for the index ``-k``: ``(-1)^{m_{-k+2,k}} m_{-k,k}``."""
    sign = -1 if m.mult(-k + 2, k) % 2 else 1
    return sign * m.mult(-k, k)


def in_B2(k: int, m: Multisegment) -> bool:
    """Membership in ``B''`` for the index ``-k``."""
    if m.mult(-k + 2, k) % 2:
        return True
    ne = largest_e_label(k, m)
    return ne is not None and -k + 2 <= ne < k


def _has_leading(c: Scalar, e: int) -> bool:
    """``c`` lies in ``q^e (1 + q A0)``."""
    return c.ord() == e and (c * qpow(-e)).at_zero() == 1


def _twice_bound(l: int, l2: int) -> int:
    return -(l + l2 - 1)


def violations(k: int, m: Multisegment) -> List[Violation]:
    out: List[Violation] = []
    l = theta_epsilon(k, m)

    fm = theta_F(k, m)
    fterms = dict(_F_terms(k, m))
    if fm not in fterms:
        out.append(Violation("F-edge-present", k, m, fm, "crystal edge has zero coefficient"))
    for m2, c in fterms.items():
        l2 = theta_epsilon(k, m2)
        twice = 2 * c.ord()
        if m2 == fm:
            if not _has_leading(c, -l):
                out.append(Violation("F-edge-leading", k, m, m2, f"{c} not in q^{-l}(1+qA0)"))
            continue
        if twice < _twice_bound(l, l2):
            out.append(Violation("F-order", k, m, m2, f"ord {c.ord()} below -({l}+{l2}-1)/2"))
            continue
        if twice == _twice_bound(l, l2):
            if k < 0:
                kk = -k
                if not xi(kk, fm) > xi(kk, m2):
                    out.append(Violation("F-tie-xi", k, m, m2, f"xi {xi(kk, fm)} <= {xi(kk, m2)}"))
                if not (l >= l2 or in_B2(kk, fm)):
                    out.append(Violation("F-tie-B2", k, m, m2, f"l={l} < l'={l2} and F(m) outside B''"))
            elif l < l2:
                out.append(Violation("F-tie-positive", k, m, m2, f"equality with l={l} < l'={l2}"))

    em = theta_E(k, m)
    eterms = dict(_E_terms(k, m))
    if em is not None and em not in eterms:
        out.append(Violation("E-edge-present", k, m, em, "crystal edge has zero coefficient"))
    for m2, c in eterms.items():
        l2 = theta_epsilon(k, m2)
        twice = 2 * c.ord()
        if m2 == em:
            if not _has_leading(c, 1 - l):
                out.append(Violation("E-edge-leading", k, m, m2, f"{c} not in q^{1 - l}(1+qA0)"))
            continue
        if twice < _twice_bound(l, l2):
            out.append(Violation("E-order", k, m, m2, f"ord {c.ord()} below -({l}+{l2}-1)/2"))
            continue
        if twice == _twice_bound(l, l2) and l <= l2 + 1:
            if k < 0:
                if in_B2(-k, m):
                    out.append(Violation("E-tie-B2", k, m, m2, "equality with m in B''"))
            else:
                out.append(Violation("E-tie-positive", k, m, m2, f"equality with l={l} <= l'+1={l2 + 1}"))
    return out
