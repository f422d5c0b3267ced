"""Segments, multisegments and weights over the odd integers.

A segment ``<i,j>`` is an interval of odd integers ``i <= j``.  A multisegment
is a finite multiset of segments; it is stored with its segments sorted in
decreasing PBW order, which is also the order in which the ordered products
``P(m)`` are formed.
"""

from __future__ import annotations

import functools
import re
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple

__all__ = [
    "Segment",
    "Multisegment",
    "Weight",
    "EMPTY",
    "pbw_cmp",
    "cry_cmp",
    "cry_cmp_multi",
    "cry_sorted",
    "is_theta_restricted",
    "weight",
    "theta_weight",
    "segment_theta_weight",
    "pairing",
    "cartan",
    "enumerate_theta_restricted",
    "theta_weight_block",
    "parse_segment",
    "parse_multisegment",
    "multisegment_to_json",
    "multisegment_from_json",
]


def _check_odd(*xs: int) -> None:
    for x in xs:
        if not isinstance(x, int) or x % 2 == 0:
            raise ValueError(f"index {x!r} is not an odd integer")


class Segment(NamedTuple):
    lo: int
    hi: int

    @classmethod
    def of(cls, lo: int, hi: int) -> "Segment":
        _check_odd(lo, hi)
        if lo > hi:
            raise ValueError(f"segment [{lo},{hi}] has lo > hi")
        return cls(lo, hi)

    @property
    def length(self) -> int:
        """Number of boxes (odd integers covered)."""
        return (self.hi - self.lo) // 2 + 1

    def covers(self, k: int) -> bool:
        return self.lo <= k <= self.hi

    def is_symmetric(self) -> bool:
        return self.lo == -self.hi

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


def pbw_cmp(s: Segment, t: Segment) -> int:
    """-1, 0, 1 as ``s`` is below, equal to, above ``t`` in PBW order."""
    a, b = (s.hi, s.lo), (t.hi, t.lo)
    return (a > b) - (a < b)


def cry_cmp(s: Segment, t: Segment) -> int:
    """Crystal order: larger right end wins, ties go to the smaller left end."""
    a, b = (s.hi, -s.lo), (t.hi, -t.lo)
    return (a > b) - (a < b)


def _cry_key(s: Segment) -> Tuple[int, int]:
    return (s.hi, -s.lo)


class Multisegment:
    """Immutable finite multiset of segments."""

    __slots__ = ("items", "_map", "_hash")

    def __init__(self, entries: Optional[Mapping[Tuple[int, int], int] | Iterable] = None):
        counts: Dict[Segment, int] = {}
        if entries is not None:
            pairs = entries.items() if isinstance(entries, Mapping) else entries
            for key, mult in pairs:
                s = Segment.of(*key)
                if mult < 0:
                    raise ValueError("negative multiplicity")
                if mult:
                    counts[s] = counts.get(s, 0) + mult
        self._init(counts)

    def _init(self, counts: Dict[Segment, int]) -> None:
        self.items: Tuple[Tuple[Segment, int], ...] = tuple(
            sorted(counts.items(), key=lambda it: (it[0].hi, it[0].lo), reverse=True)
        )
        self._map = counts
        self._hash = None

    @classmethod
    def _from_counts(cls, counts: Dict[Segment, int]) -> "Multisegment":
        out = object.__new__(cls)
        out._init(counts)
        return out

    @classmethod
    def of(cls, *segs: Tuple[int, int]) -> "Multisegment":
        """``Multisegment.of((1, 1), (1, 1), (-1, 3))``"""
        return cls((s, 1) for s in segs)

    # mapping-like access
    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self._map.get(key, 0)

    def mult(self, lo: int, hi: int) -> int:
        return self._map.get((lo, hi), 0)

    def __iter__(self) -> Iterator[Tuple[Segment, int]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def segments(self) -> List[Segment]:
        return [s for s, _ in self.items]

    def boxes(self) -> int:
        return sum(s.length * n for s, n in self.items)

    def size(self) -> int:
        return sum(n for _, n in self.items)

    def max_abs_index(self) -> int:
        return max((max(abs(s.lo), abs(s.hi)) for s, _ in self.items), default=0)

    def shifted(self, changes: Iterable[Tuple[Tuple[int, int], int]]) -> Optional["Multisegment"]:
        """Apply multiplicity changes; ``None`` if any multiplicity would go negative."""
        counts = dict(self._map)
        for key, delta in changes:
            s = key if isinstance(key, Segment) else Segment(*key)
            v = counts.get(s, 0) + delta
            if v < 0:
                return None
            if v:
                counts[s] = v
            else:
                counts.pop(s, None)
        return Multisegment._from_counts(counts)

    def add(self, lo: int, hi: int, n: int = 1) -> Optional["Multisegment"]:
        return self.shifted([((lo, hi), n)])

    def __add__(self, other: "Multisegment") -> "Multisegment":
        counts = dict(self._map)
        for s, n in other.items:
            counts[s] = counts.get(s, 0) + n
        return Multisegment._from_counts(counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Multisegment) and self.items == other.items

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.items)
        return self._hash

    def __lt__(self, other: "Multisegment") -> bool:
        return cry_cmp_multi(self, other) < 0

    def __str__(self) -> str:
        if not self.items:
            return "0"
        return " + ".join(str(s) if n == 1 else f"{n}*{s}" for s, n in self.items)

    def __repr__(self) -> str:
        return f"Multisegment({str(self)!r})"

    def __reduce__(self):
        return (Multisegment, (dict(self._map),))


EMPTY = Multisegment()


def cry_cmp_multi(m: Multisegment, n: Multisegment) -> int:
    """Lexicographic comparison of multiplicities, scanning segments in decreasing crystal order."""
    keys = sorted(set(m._map) | set(n._map), key=_cry_key, reverse=True)
    for s in keys:
        a, b = m._map.get(s, 0), n._map.get(s, 0)
        if a != b:
            return 1 if a > b else -1
    return 0


def cry_sorted(ms: Iterable[Multisegment], reverse: bool = False) -> List[Multisegment]:
    return sorted(ms, key=functools.cmp_to_key(cry_cmp_multi), reverse=reverse)


def is_theta_restricted(m: Multisegment) -> bool:
    return all(s.lo + s.hi >= 0 for s, _ in m.items)


class Weight:
    """Finitely supported map odd integer -> integer; coefficient of alpha_k."""

    __slots__ = ("items", "_map", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        d = {int(k): int(v) for k, v in (coeffs or {}).items() if v}
        for k in d:
            _check_odd(k)
        self._map = d
        self.items = tuple(sorted(d.items()))
        self._hash = None

    def __getitem__(self, k: int) -> int:
        return self._map.get(k, 0)

    def __add__(self, other: "Weight") -> "Weight":
        d = dict(self._map)
        for k, v in other.items:
            d[k] = d.get(k, 0) + v
        return Weight(d)

    def __sub__(self, other: "Weight") -> "Weight":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "Weight":
        return Weight({k: c * v for k, v in self.items})

    def reflected(self) -> "Weight":
        """Image under alpha_k -> alpha_{-k}."""
        return Weight({-k: v for k, v in self.items})

    def support(self) -> List[int]:
        return [k for k, _ in self.items]

    def as_dict(self) -> Dict[int, int]:
        return dict(self._map)

    def __eq__(self, other) -> bool:
        return isinstance(other, Weight) and self.items == other.items

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.items)
        return self._hash

    def __repr__(self) -> str:
        return f"Weight({dict(self.items)})"


def cartan(i: int, j: int) -> int:
    """(alpha_i, alpha_j) for the gl_infinity form on the odd integers."""
    if i == j:
        return 2
    if abs(i - j) == 2:
        return -1
    return 0


def pairing(k: int, mu: Weight) -> int:
    """(alpha_k, mu)."""
    return 2 * mu[k] - mu[k - 2] - mu[k + 2]


def weight(m: Multisegment) -> Weight:
    d: Dict[int, int] = {}
    for s, n in m.items:
        for k in range(s.lo, s.hi + 1, 2):
            d[k] = d.get(k, 0) - n
    return Weight(d)


def theta_weight(m: Multisegment) -> Weight:
    w = weight(m)
    return w + w.reflected()


def segment_theta_weight(s: Segment) -> Weight:
    return theta_weight(Multisegment({s: 1}))


def _theta_segments(index_bound: int) -> List[Segment]:
    out = []
    for j in range(1, index_bound + 1, 2):
        for i in range(-j, j + 1, 2):
            out.append(Segment(i, j))
    return out


def enumerate_theta_restricted(content_bound: int, index_bound: int) -> List[Multisegment]:
    """All theta-restricted multisegments with at most ``content_bound`` boxes and
    indices in ``[-index_bound, index_bound]``, ascending in crystal order."""
    if content_bound < 0 or index_bound < 0:
        raise ValueError("bounds must be nonnegative")
    if index_bound % 2 == 0:
        raise ValueError("index bound must be odd")
    segs = _theta_segments(index_bound)
    out: List[Multisegment] = []

    def rec(pos: int, budget: int, counts: Dict[Segment, int]) -> None:
        if pos == len(segs):
            out.append(Multisegment._from_counts(dict(counts)))
            return
        s = segs[pos]
        n = 0
        while n * s.length <= budget:
            if n:
                counts[s] = n
            rec(pos + 1, budget - n * s.length, counts)
            n += 1
        counts.pop(s, None)

    rec(0, content_bound, {})
    return cry_sorted(out)


def theta_weight_block(mu: Weight) -> List[Multisegment]:
    """All theta-restricted multisegments of theta-weight ``mu``, ascending in crystal order."""
    if mu != mu.reflected() or any(v > 0 for _, v in mu.items):
        return []
    bound = max((abs(k) for k in mu.support()), default=1)
    segs = [s for s in _theta_segments(bound) if all(mu[k] < 0 for k in range(s.lo, s.hi + 1, 2))]
    cost = [[(k, -v) for k, v in segment_theta_weight(s).items] for s in segs]
    need = {k: -v for k, v in mu.items}
    out: List[Multisegment] = []

    def rec(pos: int, counts: Dict[Segment, int]) -> None:
        if not any(need.values()):
            out.append(Multisegment._from_counts(dict(counts)))
            return
        if pos == len(segs):
            return
        s, c = segs[pos], cost[pos]
        top = min(need[k] // v for k, v in c)
        for n in range(top + 1):
            for k, v in c:
                need[k] -= n * v
            if n:
                counts[s] = n
            rec(pos + 1, counts)
            for k, v in c:
                need[k] += n * v
        counts.pop(s, None)

    rec(0, {})
    return cry_sorted(out)


# text and JSON forms --------------------------------------------------------

_SEG_RE = re.compile(r"^\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*$")
_TERM_RE = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?(\[[^\]]*\])\s*$")


def parse_segment(text: str) -> Segment:
    mt = _SEG_RE.match(text)
    if not mt:
        raise ValueError(f"cannot parse segment {text!r}")
    return Segment.of(int(mt.group(1)), int(mt.group(2)))


def parse_multisegment(text: str) -> Multisegment:
    """Parse ``"2*[1,1] + [-1,3]"``; ``"0"`` or an empty string is the empty multisegment."""
    t = text.strip()
    if t in ("", "0", "∅"):
        return EMPTY
    counts: Dict[Segment, int] = {}
    for part in t.split("+"):
        mt = _TERM_RE.match(part)
        if not mt:
            raise ValueError(f"cannot parse multisegment term {part!r}")
        n = int(mt.group(1)) if mt.group(1) else 1
        s = parse_segment(mt.group(2))
        counts[s] = counts.get(s, 0) + n
    return Multisegment(counts)


def multisegment_to_json(m: Multisegment) -> list:
    return [{"lo": s.lo, "hi": s.hi, "mult": n} for s, n in m.items]


def multisegment_from_json(data: list) -> Multisegment:
    counts: Dict[Segment, int] = {}
    for entry in data:
        s = Segment.of(int(entry["lo"]), int(entry["hi"]))
        n = int(entry.get("mult", 1))
        if n <= 0:
            raise ValueError("multiplicities must be positive")
        counts[s] = counts.get(s, 0) + n
    return Multisegment(counts)
