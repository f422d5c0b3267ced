"""Crystal operators on multisegments.

Two routes are implemented for every operator:

* the bracketing (signature) rule, used by the rest of the package, which
  writes one sign per segment and cancels adjacent ``+ -`` pairs;
* the explicit maximum-of-partial-sums formulas (``*_by_sums`` functions),
  kept as an independent cross-check.

Indices are odd integers.  For ``k > 0`` the symmetric operators agree with the
classical ones; for a negative index ``-k`` the symmetric rule uses the
special segment order around the centre, where ``<-k,k>`` counts twice,
``<-k+2,k-2>`` counts twice and an odd block of ``<-k+2,k>`` contributes
``- +``.
"""

from __future__ import annotations

import json
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .multiseg import (
    EMPTY,
    Multisegment,
    Segment,
    enumerate_theta_restricted,
    is_theta_restricted,
    multisegment_to_json,
)

__all__ = [
    "classical_signature",
    "classical_epsilon",
    "classical_f",
    "classical_e",
    "theta_signature",
    "theta_epsilon",
    "theta_F",
    "theta_E",
    "classical_epsilon_by_sums",
    "classical_f_by_sums",
    "classical_e_by_sums",
    "theta_epsilon_by_sums",
    "theta_F_by_sums",
    "theta_E_by_sums",
    "index_order",
    "highest_weight_path",
    "crystal_graph",
    "graph_to_dot",
    "graph_to_json",
]

# A signature symbol: (sign, segment to remove, segment to add).
Move = Tuple[Optional[Tuple[int, int]], Optional[Tuple[int, int]]]
Symbol = Tuple[str, Move]


def _apply(m: Multisegment, move: Move) -> Multisegment:
    rem, add = move
    changes = []
    if rem is not None:
        changes.append((rem, -1))
    if add is not None:
        changes.append((add, 1))
    out = m.shifted(changes)
    if out is None:
        raise AssertionError(f"crystal move {move} not applicable to {m}")
    return out


def _reduce(symbols: Sequence[Symbol]) -> List[Symbol]:
    """Cancel ``+ -`` pairs; what survives reads ``- ... - + ... +``."""
    stack: List[Symbol] = []
    for sym in symbols:
        if sym[0] == "-" and stack and stack[-1][0] == "+":
            stack.pop()
        else:
            stack.append(sym)
    return stack


# classical rule -------------------------------------------------------------


def classical_signature(i: int, m: Multisegment) -> List[Symbol]:
    """Signs for ``<i,j>`` (``-``) and ``<i+2,j>`` (``+``) in decreasing crystal order."""
    his = sorted({s.hi for s, _ in m if s.lo in (i, i + 2)}, reverse=True)
    out: List[Symbol] = []
    for j in his:
        # <i,j> precedes <i+2,j> in crystal order
        ei = (i, j)
        out += [("-", (ei, (i + 2, j) if j != i else None))] * m[ei]
        if j >= i + 2:
            out += [("+", ((i + 2, j), ei))] * m[(i + 2, j)]
    return out


def classical_epsilon(i: int, m: Multisegment) -> int:
    return sum(1 for s, _ in _reduce(classical_signature(i, m)) if s == "-")


def classical_f(i: int, m: Multisegment) -> Multisegment:
    for sign, move in _reduce(classical_signature(i, m)):
        if sign == "+":
            return _apply(m, move)
    return _apply(m, (None, (i, i)))


def classical_e(i: int, m: Multisegment) -> Optional[Multisegment]:
    minus = [mv for s, mv in _reduce(classical_signature(i, m)) if s == "-"]
    return _apply(m, minus[-1]) if minus else None


# symmetric rule for negative indices ----------------------------------------


def _theta_signature_neg(k: int, m: Multisegment) -> List[Symbol]:
    """Signature for the index ``-k`` with ``k > 0``."""
    top = max((s.hi for s, _ in m), default=k)
    out: List[Symbol] = []
    for j in range(max(top, k), k, -2):
        out += [("-", ((-k, j), (-k + 2, j)))] * m[(-k, j)]
        out += [("+", ((-k + 2, j), (-k, j)))] * m[(-k + 2, j)]
    for _ in range(m[(-k, k)]):
        out += [("-", ((-k, k), (-k + 2, k)))] * 2
    if m[(-k + 2, k)] % 2:
        lower = (-k + 2, k - 2) if k > 1 else None
        out.append(("-", ((-k + 2, k), lower)))
        out.append(("+", ((-k + 2, k), (-k, k))))
    if k > 1:
        out += [("+", ((-k + 2, k - 2), (-k + 2, k)))] * (2 * m[(-k + 2, k - 2)])
        for j in range(-k + 4, k - 1, 2):
            out += [("-", ((j, k), (j, k - 2)))] * m[(j, k)]
            out += [("+", ((j, k - 2), (j, k)))] * m[(j, k - 2)]
        out += [("-", ((k, k), None))] * m[(k, k)]
    return out


def theta_signature(k: int, m: Multisegment) -> List[Symbol]:
    if k > 0:
        return classical_signature(k, m)
    return _theta_signature_neg(-k, m)


def _require_theta(m: Multisegment) -> None:
    if not is_theta_restricted(m):
        raise ValueError(f"{m} is not theta-restricted")


def theta_epsilon(k: int, m: Multisegment) -> int:
    _require_theta(m)
    return sum(1 for s, _ in _reduce(theta_signature(k, m)) if s == "-")


def theta_F(k: int, m: Multisegment) -> Multisegment:
    _require_theta(m)
    for sign, move in _reduce(theta_signature(k, m)):
        if sign == "+":
            return _apply(m, move)
    kk = abs(k)
    return _apply(m, (None, (kk, kk)))


def theta_E(k: int, m: Multisegment) -> Optional[Multisegment]:
    _require_theta(m)
    minus = [mv for s, mv in _reduce(theta_signature(k, m)) if s == "-"]
    return _apply(m, minus[-1]) if minus else None


# partial-sum formulas (independent route) ------------------------------------


def _classical_sums(i: int, m: Multisegment) -> Dict[int, int]:
    top = max([s.hi for s, _ in m] + [i]) + 2
    sums: Dict[int, int] = {}
    acc = 0
    for k in range(top, i - 1, -2):
        acc += m[(i, k)] - m[(i + 2, k + 2)]
        sums[k] = acc
    return sums


def classical_epsilon_by_sums(i: int, m: Multisegment) -> int:
    return max(0, max(_classical_sums(i, m).values()))


def classical_f_by_sums(i: int, m: Multisegment) -> Multisegment:
    sums = _classical_sums(i, m)
    eps = max(sums.values())
    kf = min(k for k, v in sums.items() if v == eps)
    return _apply(m, ((i + 2, kf) if kf != i else None, (i, kf)))


def classical_e_by_sums(i: int, m: Multisegment) -> Optional[Multisegment]:
    sums = _classical_sums(i, m)
    eps = max(sums.values())
    if eps <= 0:
        return None
    ke = max(k for k, v in sums.items() if v == eps)
    return _apply(m, ((i, ke), (i + 2, ke) if ke != i else None))


def index_order(k: int, j: int) -> int:
    """Rank of the label ``j`` in the order ``... > k+2 > k > -k+2 > -k+4 > ... > k-2``.

    Labels ``j >= k`` rank by their value; the central labels ``-k+2 .. k-2``
    come below ``k`` with the order reversed."""
    if j >= k:
        return j
    if not (-k + 2 <= j <= k - 2):
        raise ValueError(f"label {j} outside the range for index {-k}")
    return -j - 2 * k


def _theta_sums(k: int, m: Multisegment) -> Dict[int, int]:
    """The partial sums A_j for the index ``-k`` (``k > 0``), keyed by label ``j``."""
    top = max([s.hi for s, _ in m] + [k]) + 2
    sums: Dict[int, int] = {}
    for j in range(k + 2, top + 1, 2):
        sums[j] = sum(m[(-k, l)] - m[(-k + 2, l + 2)] for l in range(j, top + 1, 2))
    outer = sum(m[(-k, l)] - m[(-k + 2, l)] for l in range(k + 2, top + 1, 2))
    sums[k] = outer + 2 * m[(-k, k)] + (m[(-k + 2, k)] % 2)
    for j in range(-k + 2, k - 1, 2):
        sums[j] = (
            outer
            + 2 * m[(-k, k)]
            - 2 * m[(-k + 2, k - 2)]
            + sum(m[(i, k)] for i in range(-k + 4, j + 3, 2))
            - sum(m[(i, k - 2)] for i in range(-k + 4, j + 1, 2))
        )
    return sums


def theta_epsilon_by_sums(k: int, m: Multisegment) -> int:
    _require_theta(m)
    if k > 0:
        return classical_epsilon_by_sums(k, m)
    return max(0, max(_theta_sums(-k, m).values()))


def _neg_f_move(k: int, m: Multisegment, n: int) -> Move:
    if n > k:
        return ((-k + 2, n), (-k, n))
    if n == k:
        if m[(-k + 2, k)] % 2:
            return ((-k + 2, k), (-k, k))
        return ((-k + 2, k - 2) if k != 1 else None, (-k + 2, k))
    return ((n + 2, k - 2) if n != k - 2 else None, (n + 2, k))


def _neg_e_move(k: int, m: Multisegment, n: int) -> Move:
    if n > k:
        return ((-k, n), (-k + 2, n))
    if n == k:
        if m[(-k + 2, k)] % 2 == 0:
            return ((-k, k), (-k + 2, k))
        return ((-k + 2, k), (-k + 2, k - 2) if k != 1 else None)
    return ((n + 2, k), (n + 2, k - 2) if n != k - 2 else None)


def theta_F_by_sums(k: int, m: Multisegment) -> Multisegment:
    _require_theta(m)
    if k > 0:
        return classical_f_by_sums(k, m)
    kk = -k
    sums = _theta_sums(kk, m)
    eps = max(sums.values())
    nf = min((j for j, v in sums.items() if v == eps), key=lambda j: index_order(kk, j))
    return _apply(m, _neg_f_move(kk, m, nf))


def theta_E_by_sums(k: int, m: Multisegment) -> Optional[Multisegment]:
    _require_theta(m)
    if k > 0:
        return classical_e_by_sums(k, m)
    kk = -k
    sums = _theta_sums(kk, m)
    eps = max(sums.values())
    if eps <= 0:
        return None
    ne = max((j for j, v in sums.items() if v == eps), key=lambda j: index_order(kk, j))
    return _apply(m, _neg_e_move(kk, m, ne))


def largest_e_label(k: int, m: Multisegment) -> Optional[int]:
    """The label ``n_e`` for the index ``-k`` (``k > 0``); ``None`` when epsilon vanishes."""
    sums = _theta_sums(k, m)
    eps = max(sums.values())
    if eps <= 0:
        return None
    return max((j for j, v in sums.items() if v == eps), key=lambda j: index_order(k, j))


# paths and graphs -----------------------------------------------------------


def _index_candidates(bound: int) -> List[int]:
    out = []
    for a in range(1, bound + 1, 2):
        out += [a, -a]
    return out


def highest_weight_path(m: Multisegment) -> List[int]:
    """Indices ``[i1, ..., il]`` with ``theta_F(i1, ... theta_F(il, EMPTY)) == m``.

    At each step the lowering index is the one of smallest absolute value with
    positive epsilon, positive before negative."""
    _require_theta(m)
    path: List[int] = []
    cur = m
    while cur:
        for k in _index_candidates(cur.max_abs_index() + 2):
            if theta_epsilon(k, cur) > 0:
                nxt = theta_E(k, cur)
                assert nxt is not None
                path.append(k)
                cur = nxt
                break
        else:
            raise AssertionError(f"{cur} is nonempty but killed by every lowering operator")
    return path


def crystal_graph(content_bound: int, index_bound: int) -> Tuple[List[Multisegment], List[Tuple[Multisegment, int, Multisegment]]]:
    """Vertices and edges ``m --k--> theta_F(k, m)`` inside the bounds."""
    verts = enumerate_theta_restricted(content_bound, index_bound)
    vset = set(verts)
    edges = []
    for m in verts:
        for k in _index_candidates(index_bound):
            t = theta_F(k, m)
            if t in vset:
                edges.append((m, k, t))
    return verts, edges


def _label(m: Multisegment) -> str:
    return "∅" if not m else str(m)


def graph_to_dot(verts, edges) -> str:
    ids = {m: f"v{n}" for n, m in enumerate(verts)}
    lines = ["digraph crystal {"]
    for m in verts:
        lines.append(f'  {ids[m]} [label="{_label(m)}"];')
    for a, k, b in edges:
        lines.append(f'  {ids[a]} -> {ids[b]} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(verts, edges) -> str:
    ids = {m: n for n, m in enumerate(verts)}
    return json.dumps(
        {
            "vertices": [{"id": ids[m], "multisegment": multisegment_to_json(m), "text": _label(m)} for m in verts],
            "edges": [{"source": ids[a], "target": ids[b], "index": k} for a, k, b in edges],
        },
        indent=2,
    )
