"""Lower and upper global bases of V_theta(0), one theta-weight block at a time.

The lower global basis element ``G(m)`` is the unique bar-invariant vector of the
form ``P_theta(m) phi + sum_{n <cry m} a_n P_theta(n) phi`` with ``a_n`` in ``qQ[q]``.
It is found by the usual triangular solve against the bar matrix of the block.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import linalg
from .multiseg import Multisegment, Weight, cry_sorted, is_theta_restricted, theta_weight
from .qarith import ONE, ZERO, Scalar
from .vtheta import ThetaVector, bar_vtheta, bilinear_form, unit


class ConsistencyError(AssertionError):
    """An invariant the theory guarantees has failed; the inputs to the solve are wrong."""


@dataclass(frozen=True)
class BarMatrix:
    """``bar(P_theta(b_r) phi) = sum_c entries[r][c] P_theta(b_c) phi`` with ``basis`` cry-ascending."""

    weight: Weight
    basis: Tuple[Multisegment, ...]
    entries: Tuple[Tuple[Scalar, ...], ...]

    def index(self, m: Multisegment) -> int:
        return self.basis.index(m)

    def rows(self) -> linalg.Matrix:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class GlobalBasisElement:
    top: Multisegment
    coords: Dict[Multisegment, Scalar]

    def vector(self) -> ThetaVector:
        return ThetaVector(self.coords)

    def degree_span(self) -> int:
        """Largest q-degree among the off-top coordinates (0 if there are none)."""
        degs = [max(c.laurent_coeffs()) for m, c in self.coords.items() if m != self.top]
        return max(degs, default=0)


def _block(mu: Weight) -> Tuple[Multisegment, ...]:
    from .multiseg import theta_weight_block

    return tuple(cry_sorted(theta_weight_block(mu)))


@lru_cache(maxsize=None)
def bar_matrix(mu: Weight) -> BarMatrix:
    """Bar matrix of the block at theta-weight ``mu``; checks unitriangularity and integrality."""
    basis = _block(mu)
    pos = {m: t for t, m in enumerate(basis)}
    rows = []
    for r, m in enumerate(basis):
        row = [ZERO] * len(basis)
        for n, c in bar_vtheta(unit(m)).items():
            t = pos.get(n)
            if t is None:
                raise ConsistencyError(f"bar of {m} leaves the weight block (term {n})")
            row[t] = c
        if row[r] != ONE:
            raise ConsistencyError(f"diagonal bar coefficient of {m} is {row[r]}, not 1")
        for t, c in enumerate(row):
            if c and t > r:
                raise ConsistencyError(f"bar of {m} has a term on the cry-larger {basis[t]}")
            if c and not c.is_laurent():
                raise ConsistencyError(f"bar coefficient {c} of {m} on {basis[t]} is not a Laurent polynomial")
        rows.append(tuple(row))
    return BarMatrix(mu, basis, tuple(rows))


@lru_cache(maxsize=None)
def _lower_block(mu: Weight) -> Tuple[GlobalBasisElement, ...]:
    bm = bar_matrix(mu)
    C = bm.entries
    out = []
    for t, m in enumerate(bm.basis):
        a: Dict[int, Scalar] = {t: ONE}
        for n in range(t - 1, -1, -1):
            g = ZERO
            for p, ap in a.items():
                if C[p][n]:
                    g = g + ap.bar() * C[p][n]
            if not g:
                continue
            if not g.is_laurent():
                raise ConsistencyError(f"correction term {g} at {bm.basis[n]} is not Laurent")
            if g.bar() != -g:
                raise ConsistencyError(f"correction term {g} at {bm.basis[n]} is not bar-antisymmetric")
            an = g.positive_part()
            if an:
                a[n] = an
        out.append(GlobalBasisElement(m, {bm.basis[n]: c for n, c in sorted(a.items())}))
    return tuple(out)


def lower_global(m: Multisegment) -> GlobalBasisElement:
    if not is_theta_restricted(m):
        raise ValueError(f"{m} is not theta-restricted")
    mu = theta_weight(m)
    return _lower_block(mu)[bar_matrix(mu).index(m)]


def lower_global_block(mu: Weight) -> List[GlobalBasisElement]:
    return list(_lower_block(mu))


def change_of_basis(mu: Weight) -> Tuple[Tuple[Multisegment, ...], linalg.Matrix, linalg.Matrix]:
    """``(basis, A, A^-1)`` where row ``r`` of ``A`` holds the coordinates of ``G(basis[r])``."""
    basis = _block(mu)
    A = [[g.coords.get(n, ZERO) for n in basis] for g in _lower_block(mu)]
    return basis, A, linalg.inverse(A) if A else []


@lru_cache(maxsize=None)
def _upper_block(mu: Weight) -> Tuple[ThetaVector, ...]:
    lows = [g.vector() for g in _lower_block(mu)]
    if not lows:
        return ()
    gram = [[bilinear_form(x, y) for y in lows] for x in lows]
    try:
        inv = linalg.inverse(gram)
    except linalg.SingularMatrix as exc:
        raise ConsistencyError(f"Gram matrix of the lower global basis at {mu} is singular") from exc
    out = []
    for b in range(len(lows)):
        v = ThetaVector()
        for c, g in enumerate(lows):
            if inv[c][b]:
                v = v + g.scale(inv[c][b])
        out.append(v)
    return tuple(out)


def upper_global(mu: Weight) -> List[ThetaVector]:
    """Dual basis to the lower global basis of the block, in the same (cry-ascending) order."""
    return list(_upper_block(mu))


def balanced_defects(mu: Weight) -> List[str]:
    """Checks that the change of basis between ``{G(m)}`` and ``{P_theta(m) phi}`` is unitriangular
    with off-diagonal entries in ``qQ[q]`` in both directions.  Returns the list of defects."""
    basis, A, Ainv = change_of_basis(mu)
    defects = []
    for name, M in (("G->P", A), ("P->G", Ainv)):
        for r, row in enumerate(M):
            for c, x in enumerate(row):
                if r == c:
                    if x != ONE:
                        defects.append(f"{name}: diagonal at {basis[r]} is {x}")
                elif x:
                    if c > r:
                        defects.append(f"{name}: entry above the diagonal at ({basis[r]}, {basis[c]})")
                    elif not x.is_laurent() or x.ord() < 1:
                        defects.append(f"{name}: entry {x} at ({basis[r]}, {basis[c]}) is not in qQ[q]")
    return defects


def check_lower(g: GlobalBasisElement) -> Optional[str]:
    """``None`` if ``g`` is bar-invariant and congruent to its top mod q; otherwise a reason."""
    v = g.vector()
    if bar_vtheta(v) != v:
        return "not bar-invariant"
    for n, c in g.coords.items():
        if n == g.top:
            if c != ONE:
                return "top coordinate is not 1"
        elif not c.is_laurent() or c.ord() < 1:
            return f"coordinate {c} at {n} is not in qQ[q]"
    return None
