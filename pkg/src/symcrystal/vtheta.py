"""The module V_theta(0) in its PBW basis ``P_theta(m) phi``.

Vectors are sparse combinations of theta-restricted multisegments.  The
operators ``F_k``, ``E_k`` and ``T_k`` act through closed formulas on basis
vectors; everything else (realizing words, bar, the bilinear form, string
decompositions) is built from those three.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .lincomb import LinComb, addto
from .multiseg import (
    EMPTY,
    Multisegment,
    Weight,
    is_theta_restricted,
    multisegment_from_json,
    multisegment_to_json,
    pairing,
    theta_weight,
    theta_weight_block,
)
from .qarith import ONE, ZERO, Scalar, bar, parse_scalar, qfact, qint, qpow
from .uqminus import apply_words, expand_monomial

Q2 = ONE - qpow(2)  # 1 - q^2


class ThetaVector(LinComb):
    """Element of V_theta(0); the key ``m`` stands for ``P_theta(m) phi``."""

    __slots__ = ()

    def _check_key(self, m: Multisegment) -> None:
        super()._check_key(m)
        if not is_theta_restricted(m):
            raise ValueError(f"{m} is not theta-restricted")

    def _symbol(self, m: Multisegment) -> str:
        return f"P_theta({m})phi"

    def theta_weights(self) -> List[Weight]:
        return sorted({theta_weight(m) for m in self.terms}, key=lambda w: w.items)

    def components(self) -> Dict[Weight, "ThetaVector"]:
        """Split into theta-weight components."""
        out: Dict[Weight, Dict[Multisegment, Scalar]] = {}
        for m, c in self.terms.items():
            out.setdefault(theta_weight(m), {})[m] = c
        return {w: ThetaVector._wrap(d) for w, d in out.items()}


def phi() -> ThetaVector:
    return ThetaVector._wrap({EMPTY: ONE})


def unit(m: Multisegment) -> ThetaVector:
    return ThetaVector({m: ONE})


def zero() -> ThetaVector:
    return ThetaVector._wrap({})


def _check_index(k: int) -> None:
    if not isinstance(k, int) or k % 2 == 0:
        raise ValueError(f"index must be an odd integer, got {k!r}")


# closed formulas on basis vectors ----------------------------------------------


def _top(m: Multisegment, k: int) -> int:
    return max([s.hi for s, _ in m.items] + [k])


def _tail_diff(m: Multisegment, a: int, b: int, start: int, top: int) -> int:
    """sum_{start <= l <= top} (m_{a,l} - m_{b,l})"""
    return sum(m.mult(a, l) - m.mult(b, l) for l in range(start, top + 1, 2))


def _emit(acc: Dict[Multisegment, Scalar], m: Multisegment, changes, coef: Scalar) -> None:
    target = m.shifted(changes)
    if target is not None and coef:
        addto(acc, target, coef)


@lru_cache(maxsize=None)
def _F_terms(k: int, m: Multisegment) -> Tuple[Tuple[Multisegment, Scalar], ...]:
    acc: Dict[Multisegment, Scalar] = {}
    top = _top(m, abs(k) + 2)
    if k > 0:
        for l in range(k, top + 1, 2):
            e = _tail_diff(m, k + 2, k, l + 2, top)
            changes = [((k, l), 1)] if l == k else [((k + 2, l), -1), ((k, l), 1)]
            _emit(acc, m, changes, qpow(e) * qint(m.mult(k, l) + 1))
        return tuple(acc.items())

    k = -k
    a, b = -k + 2, -k  # segments <a, l> and <b, l>
    S = _tail_diff(m, a, b, k + 2, top)
    for l in range(k + 2, top + 1, 2):
        e = _tail_diff(m, a, b, l + 2, top)
        _emit(acc, m, [((a, l), -1), ((b, l), 1)], qpow(e) * qint(m.mult(b, l) + 1))
    _emit(acc, m, [((a, k), -1), ((b, k), 1)], qpow(S) * qint(2 * m.mult(b, k) + 2))
    e = S + m.mult(a, k) - 2 * m.mult(b, k)
    changes = [((a, k), 1)] if k == 1 else [((a, k - 2), -1), ((a, k), 1)]
    _emit(acc, m, changes, qpow(e) * qint(m.mult(a, k) + 1))
    if k > 1:
        base = S + 2 * m.mult(a, k - 2) - 2 * m.mult(b, k)
        run = 0  # sum_{a < j < i} (m_{j,k-2} - m_{j,k})
        for i in range(a + 2, k + 1, 2):
            changes = [((i, k), 1)] if i == k else [((i, k - 2), -1), ((i, k), 1)]
            _emit(acc, m, changes, qpow(base + run) * qint(m.mult(i, k) + 1))
            run += m.mult(i, k - 2) - m.mult(i, k)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _E_terms(k: int, m: Multisegment) -> Tuple[Tuple[Multisegment, Scalar], ...]:
    acc: Dict[Multisegment, Scalar] = {}
    top = _top(m, abs(k) + 2)
    if k > 0:
        for l in range(k + 2, top + 1, 2):
            if m.mult(k, l):
                e = 1 + _tail_diff(m, k + 2, k, l, top)
                _emit(acc, m, [((k, l), -1), ((k + 2, l), 1)], Q2 * qpow(e) * qint(m.mult(k + 2, l) + 1))
        e = 1 + _tail_diff(m, k + 2, k, k + 2, top) - m.mult(k, k)
        _emit(acc, m, [((k, k), -1)], qpow(e))
        return tuple(acc.items())

    k = -k
    a, b = -k + 2, -k
    S = _tail_diff(m, a, b, k + 2, top)
    for l in range(k + 2, top + 1, 2):
        if m.mult(b, l):
            e = 1 + _tail_diff(m, a, b, l, top)
            _emit(acc, m, [((b, l), -1), ((a, l), 1)], Q2 * qpow(e) * qint(m.mult(a, l) + 1))
    e = 1 + S + m.mult(a, k) - 2 * m.mult(b, k)
    _emit(acc, m, [((b, k), -1), ((a, k), 1)], Q2 * qpow(e) * qint(m.mult(a, k) + 1))
    if k > 1:
        base = 1 + S + 2 * m.mult(a, k - 2) - 2 * m.mult(b, k)
        run = 0  # sum_{a < i' <= i} (m_{i',k-2} - m_{i',k})
        for i in range(a + 2, k - 1, 2):
            run += m.mult(i, k - 2) - m.mult(i, k)
            if m.mult(i, k):
                _emit(acc, m, [((i, k), -1), ((i, k - 2), 1)], Q2 * qpow(base + run) * qint(m.mult(i, k - 2) + 1))
        _emit(acc, m, [((a, k), -1), ((a, k - 2), 1)], Q2 * qpow(base) * qint(2 * (m.mult(a, k - 2) + 1)))
    e = S - 2 * m.mult(b, k)
    if k > 1:
        e += 1 - m.mult(k, k) + 2 * m.mult(a, k - 2)
        e += sum(m.mult(i, k - 2) - m.mult(i, k) for i in range(a + 2, k - 1, 2))
    _emit(acc, m, [((k, k), -1)], qpow(e))
    return tuple(acc.items())


def _act(table, k: int, v: ThetaVector) -> ThetaVector:
    _check_index(k)
    acc: Dict[Multisegment, Scalar] = {}
    for m, c in v.terms.items():
        for m2, d in table(k, m):
            addto(acc, m2, c * d)
    return ThetaVector._wrap(acc)


def apply_F(k: int, v: ThetaVector) -> ThetaVector:
    return _act(_F_terms, k, v)


def apply_E(k: int, v: ThetaVector) -> ThetaVector:
    return _act(_E_terms, k, v)


def apply_T(k: int, v: ThetaVector) -> ThetaVector:
    """``T_k`` on a theta-weight-homogeneous vector."""
    _check_index(k)
    ws = v.theta_weights()
    if len(ws) > 1:
        raise ValueError("T acts diagonally only on theta-weight-homogeneous vectors")
    if not ws:
        return v
    return v.scale(qpow(pairing(k, ws[0])))


def apply_divided_F(k: int, n: int, v: ThetaVector) -> ThetaVector:
    for _ in range(n):
        v = apply_F(k, v)
    return v.scale(qfact(n).inverse()) if n > 1 else v


def apply_word(word: Sequence[int], v: ThetaVector, op=apply_F) -> ThetaVector:
    """``op(w[0]) op(w[1]) ... op(w[-1]) v``"""
    for k in reversed(word):
        v = op(k, v)
    return v


def apply_fword(word: Sequence[int], v: Optional[ThetaVector] = None) -> ThetaVector:
    """``F_{w[0]} ... F_{w[-1]} v`` (``v`` defaults to phi)."""
    return apply_word(word, phi() if v is None else v)


@lru_cache(maxsize=None)
def _realize(m: Multisegment) -> ThetaVector:
    return apply_words(expand_monomial(m, theta_normalized=True), apply_F, phi())


def realize_basis_vector(m: Multisegment) -> ThetaVector:
    """Expand ``P_theta(m)`` into words in the ``F_k`` and apply them to phi.

    Agreeing with ``unit(m)`` is a consistency check of the closed formulas."""
    if not is_theta_restricted(m):
        raise ValueError(f"{m} is not theta-restricted")
    return _realize(m)


# bar involution ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bar_basis(m: Multisegment) -> ThetaVector:
    words = {w: bar(c) for w, c in expand_monomial(m, theta_normalized=True).items()}
    return apply_words(words, apply_F, phi())


def bar_vtheta(v: ThetaVector) -> ThetaVector:
    """The involution fixing phi and commuting with every ``F_k`` (q -> 1/q on scalars)."""
    out = zero()
    for m, c in v.terms.items():
        out = out + _bar_basis(m).scale(bar(c))
    return out


# bilinear form -------------------------------------------------------------------


def _pair_words(items: List[Tuple[tuple, Scalar]], depth: int, v: ThetaVector) -> Scalar:
    total = ZERO
    groups: Dict[int, List[Tuple[tuple, Scalar]]] = {}
    for w, c in items:
        if len(w) == depth:
            total = total + c * v.coeff(EMPTY)
        else:
            groups.setdefault(w[depth], []).append((w, c))
    for a, sub in groups.items():
        ev = apply_E(a, v)
        if ev:
            total = total + _pair_words(sub, depth + 1, ev)
    return total


@lru_cache(maxsize=None)
def _gram_entry(m: Multisegment, n: Multisegment) -> Scalar:
    if theta_weight(m) != theta_weight(n):
        return ZERO
    words = expand_monomial(m, theta_normalized=True)
    return _pair_words(list(words.items()), 0, unit(n))


def pair_with_words(words: Dict[tuple, Scalar], v: ThetaVector) -> Scalar:
    """``(sum c_w F_w phi, v)`` computed by moving each ``F`` across as ``E``."""
    return _pair_words(list(words.items()), 0, v)


def bilinear_form(u: ThetaVector, v: ThetaVector) -> Scalar:
    """The symmetric form with ``(phi, phi) = 1`` and ``(F_k x, y) = (x, E_k y)``."""
    total = ZERO
    for m, c in u.terms.items():
        for n, d in v.terms.items():
            g = _gram_entry(m, n)
            if g:
                total = total + c * d * g
    return total


def gram_matrix(mu: Weight) -> Tuple[List[Multisegment], linalg.Matrix]:
    basis = theta_weight_block(mu)
    return basis, [[_gram_entry(m, n) for n in basis] for m in basis]


# crystal lattice ----------------------------------------------------------------


def in_lattice(v: ThetaVector) -> bool:
    """All coordinates are regular at q = 0."""
    return all(c.ord() >= 0 for c in v.terms.values())


def reduce_mod_q(v: ThetaVector) -> Dict[Multisegment, object]:
    """Image in L/qL as ``{m: value at q=0}``; raises if ``v`` is not in the lattice."""
    out = {}
    for m, c in v.terms.items():
        x = c.at_zero()
        if x:
            out[m] = x
    return out


# string decomposition ----------------------------------------------------------


def _alpha_pair(i: int) -> Weight:
    return Weight({i: 1}) + Weight({-i: 1})


def _coords(v: ThetaVector, index: Dict[Multisegment, int]) -> List[Scalar]:
    x = [ZERO] * len(index)
    for m, c in v.terms.items():
        x[index[m]] = c
    return x


def _vector(basis: Sequence[Multisegment], x: Sequence[Scalar]) -> ThetaVector:
    return ThetaVector._wrap({m: c for m, c in zip(basis, x) if c})


class _StringData:
    """Per (i, mu): kernel vectors of E_i at each level and the inverse change of basis."""

    __slots__ = ("basis", "index", "columns", "inverse")

    def __init__(self, i: int, mu: Weight):
        beta = _alpha_pair(i)
        self.basis = theta_weight_block(mu)
        self.index = {m: t for t, m in enumerate(self.basis)}
        self.columns: List[Tuple[int, ThetaVector]] = []
        n = 0
        while True:
            nu = mu + beta.scaled(n)
            if any(c > 0 for _, c in nu.items):
                break
            block = theta_weight_block(nu)
            if block:
                up = {m: t for t, m in enumerate(theta_weight_block(nu + beta))}
                images = [_coords(apply_E(i, unit(m)), up) for m in block]
                rows = linalg.transpose(images) if up else []
                for x in linalg.nullspace(rows, len(block)):
                    self.columns.append((n, _vector(block, x)))
            n += 1
        mat = [_coords(apply_divided_F(i, n, u), self.index) for n, u in self.columns]
        self.inverse = linalg.inverse(linalg.transpose(mat)) if mat else []


@lru_cache(maxsize=None)
def _string_data(i: int, mu: Weight) -> _StringData:
    return _StringData(i, mu)


def _homogeneous_weight(v: ThetaVector) -> Optional[Weight]:
    ws = v.theta_weights()
    if len(ws) > 1:
        raise ValueError("string decomposition needs a theta-weight-homogeneous vector")
    return ws[0] if ws else None


def string_decompose(i: int, v: ThetaVector) -> List[Tuple[int, ThetaVector]]:
    """``[(n, u_n)]`` with ``v = sum F_i^(n) u_n`` and ``E_i u_n = 0``, by a linear solve."""
    _check_index(i)
    mu = _homogeneous_weight(v)
    if mu is None:
        return []
    data = _string_data(i, mu)
    y = linalg.mat_vec(data.inverse, _coords(v, data.index))
    out: Dict[int, ThetaVector] = {}
    for (n, u), c in zip(data.columns, y):
        if c:
            out[n] = out.get(n, zero()) + u.scale(c)
    return [(n, u) for n, u in sorted(out.items()) if u]


def string_decompose_recursive(i: int, v: ThetaVector) -> List[Tuple[int, ThetaVector]]:
    """Same decomposition, peeling off the top component ``q^{N(N-1)/2} E_i^N v`` repeatedly."""
    _check_index(i)
    _homogeneous_weight(v)
    out: Dict[int, ThetaVector] = {}
    while v:
        powers = [v]
        while True:
            nxt = apply_E(i, powers[-1])
            if not nxt:
                break
            powers.append(nxt)
        N = len(powers) - 1
        u = powers[N].scale(qpow(N * (N - 1) // 2))
        out[N] = out.get(N, zero()) + u
        v = v - apply_divided_F(i, N, u)
    return [(n, u) for n, u in sorted(out.items()) if u]


def mod_root_F(i: int, v: ThetaVector) -> ThetaVector:
    """Kashiwara operator: ``F_i^(n) u_n -> F_i^(n+1) u_n``."""
    out = zero()
    for n, u in string_decompose(i, v):
        out = out + apply_divided_F(i, n + 1, u)
    return out


def mod_root_E(i: int, v: ThetaVector) -> ThetaVector:
    """Kashiwara operator: ``F_i^(n) u_n -> F_i^(n-1) u_n`` (and ``u_0 -> 0``)."""
    out = zero()
    for n, u in string_decompose(i, v):
        if n:
            out = out + apply_divided_F(i, n - 1, u)
    return out


# serialization -----------------------------------------------------------------


def vector_to_json(v: ThetaVector) -> dict:
    """``{"theta_weight": {...}, "terms": [...]}``; the weight is ``null`` for an inhomogeneous vector."""
    ws = v.theta_weights()
    mu = ws[0] if len(ws) == 1 else None
    return {
        "theta_weight": None if mu is None else {str(k): c for k, c in mu.items},
        "terms": [{"multisegment": multisegment_to_json(m), "coeff": str(c)} for m, c in v.sorted_items()],
    }


def vector_from_json(data) -> ThetaVector:
    """Inverse of :func:`vector_to_json`.  A bare list of terms is accepted too."""
    if isinstance(data, str):
        data = json.loads(data)
    terms = data["terms"] if isinstance(data, dict) else data
    v = ThetaVector({multisegment_from_json(t["multisegment"]): parse_scalar(t["coeff"]) for t in terms})
    if isinstance(data, dict) and data.get("theta_weight") is not None and v:
        claimed = Weight({int(k): int(c) for k, c in data["theta_weight"].items()})
        if v.theta_weights() != [claimed]:
            raise ValueError(f"terms do not have the declared theta-weight {claimed}")
    return v
