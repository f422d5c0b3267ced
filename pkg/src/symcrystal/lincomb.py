"""Finite linear combinations of multisegment-indexed basis vectors."""

from __future__ import annotations

from typing import Dict, Mapping, Optional

from .multiseg import Multisegment
from .qarith import ZERO, Scalar, as_scalar


def addto(acc: Dict, key, c: Scalar) -> None:
    """``acc[key] += c``, dropping the key when the sum vanishes."""
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class LinComb:
    """Sparse vector: multisegment -> nonzero Scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Multisegment, object]] = None):
        self.terms: Dict[Multisegment, Scalar] = {}
        for m, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                self._check_key(m)
                self.terms[m] = c

    def _check_key(self, m: Multisegment) -> None:
        if not isinstance(m, Multisegment):
            raise TypeError(f"basis keys must be multisegments, got {type(m).__name__}")

    @classmethod
    def _wrap(cls, terms: Dict[Multisegment, Scalar]):
        out = object.__new__(cls)
        out.terms = terms
        return out

    def coeff(self, m: Multisegment) -> Scalar:
        return self.terms.get(m, ZERO)

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            addto(acc, m, c)
        return self._wrap(acc)

    def __neg__(self):
        return self._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return self._wrap({})
        return self._wrap({m: c * v for m, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def map_coeffs(self, f):
        acc = {}
        for m, c in self.terms.items():
            v = f(c)
            if v:
                acc[m] = v
        return self._wrap(acc)

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_items(self):
        from .multiseg import cry_cmp_multi
        import functools

        return sorted(self.terms.items(), key=functools.cmp_to_key(lambda a, b: cry_cmp_multi(b[0], a[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self._symbol(m)}" for m, c in self.sorted_items())

    def _symbol(self, m: Multisegment) -> str:
        return f"P({m})"

    def __repr__(self) -> str:
        return f"{type(self).__name__}<{self}>"
