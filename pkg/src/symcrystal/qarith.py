"""Exact arithmetic in Q(q).

A :class:`Scalar` is stored as ``q**shift * N(q) / D(q)`` where ``N`` and ``D``
are integer polynomials (coefficient tuples, lowest degree first) with nonzero
constant terms, no common factor, no common integer content, and ``D`` has a
positive leading coefficient.  This form is unique per value, so equality and
hashing are structural.

When ``D`` is a constant the value is a Laurent polynomial and all arithmetic
stays in pure Python.  Fractions with a nonconstant denominator fall back to
python-flint for the polynomial gcd.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

import flint

Number = Union[int, Fraction]

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "Q",
    "as_scalar",
    "qpow",
    "qint",
    "qfact",
    "prod_even",
    "qbinom",
    "bar",
    "ord_q",
    "eval_at_zero",
    "parse_scalar",
]


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _conv(a: Tuple[int, ...], b: Tuple[int, ...]) -> list:
    if len(a) == 1:
        x = a[0]
        return [x * y for y in b]
    if len(b) == 1:
        y = b[0]
        return [x * y for x in a]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _axpy(out: list, offset: int, src: Iterable[int], scale: int) -> None:
    for i, c in enumerate(src):
        out[offset + i] += c * scale


class Scalar:
    """An element of Q(q) in canonical form.  Immutable."""

    __slots__ = ("shift", "num", "den", "_hash")

    shift: int
    num: Tuple[int, ...]
    den: Tuple[int, ...]

    def __init__(self, value: Number = 0):
        value = Fraction(value)
        if value == 0:
            self._set(0, (), (1,))
        else:
            self._set(0, (value.numerator,), (value.denominator,))

    def _set(self, shift, num, den):
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (_from_parts, (self.shift, self.num, self.den))

    # construction -----------------------------------------------------

    @staticmethod
    def _make(shift: int, num: list, den: list) -> "Scalar":
        """Canonicalize ``q**shift * num / den`` (lists are consumed)."""
        _trim(num)
        if not num:
            return ZERO
        z = 0
        while num[z] == 0:
            z += 1
        if z:
            num = num[z:]
            shift += z
        _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        z = 0
        while den[z] == 0:
            z += 1
        if z:
            den = den[z:]
            shift -= z
        if len(den) > 1 and len(num) > 1:
            fn = flint.fmpz_poly(num)
            fd = flint.fmpz_poly(den)
            g = fn.gcd(fd)
            if g.degree() > 0:
                num = [int(c) for c in (fn // g).coeffs()]
                den = [int(c) for c in (fd // g).coeffs()]
        c = 0
        for x in den:
            c = math.gcd(c, x)
            if c == 1:
                break
        if c != 1:
            for x in num:
                c = math.gcd(c, x)
                if c == 1:
                    break
        if den[-1] < 0:
            c = -c
        if c != 1:
            num = [x // c for x in num]
            den = [x // c for x in den]
        out = object.__new__(Scalar)
        out._set(shift, tuple(num), tuple(den))
        return out

    @staticmethod
    def laurent(coeffs: Dict[int, Number]) -> "Scalar":
        """Build ``sum c * q**e`` from an exponent -> coefficient map."""
        items = [(e, Fraction(c)) for e, c in coeffs.items() if c != 0]
        if not items:
            return ZERO
        lo = min(e for e, _ in items)
        hi = max(e for e, _ in items)
        d = 1
        for _, c in items:
            d = d * c.denominator // math.gcd(d, c.denominator)
        num = [0] * (hi - lo + 1)
        for e, c in items:
            num[e - lo] = int(c * d)
        return Scalar._make(lo, num, [d])

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_laurent(self) -> bool:
        """Membership in Q[q, q^-1]."""
        return len(self.den) == 1

    def is_integral_laurent(self) -> bool:
        """Membership in Z[q, q^-1]."""
        return self.den == (1,)

    def is_rational(self) -> bool:
        return not self.num or (self.shift == 0 and len(self.num) == 1 and len(self.den) == 1)

    @property
    def numerator(self) -> Tuple[int, ...]:
        """Numerator as a polynomial in q (coefficients, lowest degree first)."""
        if not self.num:
            return ()
        return (0,) * max(self.shift, 0) + self.num

    @property
    def denominator(self) -> Tuple[int, ...]:
        return (0,) * max(-self.shift, 0) + self.den

    def laurent_coeffs(self) -> Dict[int, Fraction]:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        d = self.den[0]
        return {self.shift + i: Fraction(c, d) for i, c in enumerate(self.num) if c}

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        if not self.num:
            return Fraction(0)
        return Fraction(self.num[0], self.den[0])

    # arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = as_scalar(other)
        if not other.num:
            return self
        if not self.num:
            return other
        s = min(self.shift, other.shift)
        da, db = self.den, other.den
        if da == (1,) and db == (1,):
            oa, ob = self.shift - s, other.shift - s
            out = [0] * max(oa + len(self.num), ob + len(other.num))
            for i, c in enumerate(self.num):
                out[oa + i] = c
            for i, c in enumerate(other.num):
                out[ob + i] += c
            return _laurent_int(s, out)
        if len(da) == 1 and len(db) == 1:
            a, b = da[0], db[0]
            g = math.gcd(a, b)
            fa, fb = b // g, a // g
            oa, ob = self.shift - s, other.shift - s
            out = [0] * max(oa + len(self.num), ob + len(other.num))
            _axpy(out, oa, self.num, fa)
            _axpy(out, ob, other.num, fb)
            return Scalar._make(s, out, [a * fa])
        na = _conv(self.num, db)
        nb = _conv(other.num, da)
        oa, ob = self.shift - s, other.shift - s
        out = [0] * max(oa + len(na), ob + len(nb))
        _axpy(out, oa, na, 1)
        _axpy(out, ob, nb, 1)
        return Scalar._make(s, out, _conv(da, db))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if not self.num:
            return self
        out = object.__new__(Scalar)
        out._set(self.shift, tuple(-x for x in self.num), self.den)
        return out

    def __pos__(self):
        return self

    def __sub__(self, other) -> "Scalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> "Scalar":
        return as_scalar(other) + (-self)

    def __mul__(self, other) -> "Scalar":
        other = as_scalar(other)
        if not self.num or not other.num:
            return ZERO
        if self.den == (1,) and other.den == (1,):
            out = object.__new__(Scalar)
            out._set(self.shift + other.shift, tuple(_conv(self.num, other.num)), (1,))
            return out
        if len(self.den) == 1 and len(other.den) == 1:
            return Scalar._make(
                self.shift + other.shift,
                _conv(self.num, other.num),
                [self.den[0] * other.den[0]],
            )
        return Scalar._make(
            self.shift + other.shift,
            _conv(self.num, other.num),
            _conv(self.den, other.den),
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return Scalar._make(-self.shift, list(self.den), list(self.num))

    def __truediv__(self, other) -> "Scalar":
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return as_scalar(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        if len(self.num) == 1 and len(self.den) == 1 and abs(self.num[0]) == 1 and self.den[0] == 1:
            return Scalar._make(self.shift * n, [self.num[0] ** n], [1])
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.shift == other.shift and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == as_scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.shift, self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.num)

    # q-specific -------------------------------------------------------

    def bar(self) -> "Scalar":
        """Substitute q -> q^-1."""
        if not self.num:
            return self
        num = list(reversed(self.num))
        den = list(reversed(self.den))
        shift = -self.shift - (len(self.num) - 1) + (len(self.den) - 1)
        if den[-1] < 0:
            num = [-x for x in num]
            den = [-x for x in den]
        out = object.__new__(Scalar)
        out._set(shift, tuple(num), tuple(den))
        return out

    def ord(self) -> Union[int, float]:
        """Order of vanishing at q = 0 (``math.inf`` for zero)."""
        return self.shift if self.num else math.inf

    def at_zero(self) -> Fraction:
        """Value at q = 0; requires ``ord() >= 0``."""
        if not self.num:
            return Fraction(0)
        if self.shift < 0:
            raise ValueError(f"{self} has a pole at q=0 (not in A0)")
        if self.shift > 0:
            return Fraction(0)
        return Fraction(self.num[0], self.den[0])

    def positive_part(self) -> "Scalar":
        """Terms of strictly positive degree of a Laurent polynomial."""
        return Scalar.laurent({e: c for e, c in self.laurent_coeffs().items() if e > 0})

    # text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.num:
            return "0"
        if self.den == (1,):
            return _format_laurent(self.shift, self.num)
        return f"({_format_laurent(self.shift, self.num)})/({_format_laurent(0, self.den)})"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _laurent_int(shift: int, out: list) -> Scalar:
    """Integer Laurent polynomial from a dense list; trims zeros at both ends."""
    hi = len(out)
    while hi and out[hi - 1] == 0:
        hi -= 1
    if not hi:
        return ZERO
    lo = 0
    while out[lo] == 0:
        lo += 1
    res = object.__new__(Scalar)
    res._set(shift + lo, tuple(out[lo:hi]), (1,))
    return res


def _from_parts(shift, num, den) -> Scalar:
    return Scalar._make(shift, list(num), list(den))


def _format_laurent(shift: int, coeffs: Tuple[int, ...]) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        e = shift + i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            qq = "q" if e == 1 else f"q^{e}"
            body = qq if mag == 1 else f"{mag}*{qq}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


ZERO = object.__new__(Scalar)
ZERO._set(0, (), (1,))
ONE = object.__new__(Scalar)
ONE._set(0, (1,), (1,))
Q = object.__new__(Scalar)
Q._set(1, (1,), (1,))


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        if x == 0:
            return ZERO
        if x == 1:
            return ONE
        return Scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


@lru_cache(maxsize=None)
def qpow(n: int) -> Scalar:
    return Scalar._make(n, [1], [1])


@lru_cache(maxsize=None)
def qint(n: int) -> Scalar:
    """The balanced q-integer (q^n - q^-n)/(q - q^-1)."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n)
    coeffs = [0] * (2 * n - 1)
    coeffs[::2] = [1] * n
    return Scalar._make(1 - n, coeffs, [1])


@lru_cache(maxsize=None)
def qfact(n: int) -> Scalar:
    if n < 0:
        raise ValueError("qfact of a negative integer")
    return ONE if n == 0 else qfact(n - 1) * qint(n)


@lru_cache(maxsize=None)
def prod_even(m: int) -> Scalar:
    """[2][4]...[2m], the normalizer of the modified divided power."""
    if m < 0:
        raise ValueError("prod_even of a negative integer")
    return ONE if m == 0 else prod_even(m - 1) * qint(2 * m)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> Scalar:
    """Balanced Gaussian binomial, built by Pascal recursion so it stays Laurent."""
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return qpow(k) * qbinom(n - 1, k) + qpow(k - n) * qbinom(n - 1, k - 1)


def bar(s) -> Scalar:
    return as_scalar(s).bar()


def ord_q(s) -> Union[int, float]:
    return as_scalar(s).ord()


def eval_at_zero(s) -> Fraction:
    return as_scalar(s).at_zero()


# parsing ------------------------------------------------------------------

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def _eval_node(node) -> Scalar:
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return as_scalar(node.value)
    if isinstance(node, ast.Name) and node.id == "q":
        return Q
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, (ast.USub, ast.UAdd)):
                sign = -1 if isinstance(exp.op, ast.USub) else 1
                exp = exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ValueError("exponents must be integer literals")
            return _eval_node(node.left) ** (sign * exp.value)
        op = _BINOPS.get(type(node.op))
        if op is not None:
            return op(_eval_node(node.left), _eval_node(node.right))
    raise ValueError(f"unsupported syntax in scalar expression: {ast.dump(node)}")


def parse_scalar(text: str) -> Scalar:
    """Parse expressions such as ``"q^-2 + 1 + q^2"`` or ``"(1 + q)/(2)"``."""
    src = text.strip().replace("^", "**")
    if not src:
        raise ValueError("empty scalar expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc
    return _eval_node(tree)
