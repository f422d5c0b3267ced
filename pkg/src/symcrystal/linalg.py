"""Exact dense linear algebra over Q(q).

Matrices are lists of rows of :class:`~symcrystal.qarith.Scalar`.  Sizes here
are the dimensions of weight spaces (a few dozen at most), so plain Gaussian
elimination with a "simplest pivot" rule is enough.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .qarith import ONE, ZERO, Scalar

Matrix = List[List[Scalar]]


class SingularMatrix(ArithmeticError):
    pass


def _weight(s: Scalar) -> int:
    # prefer monomial-ish pivots: short numerator, Laurent denominator
    return len(s.num) + 4 * (len(s.den) - 1)


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = ZERO
            for t in range(inner):
                x = row[t]
                if x:
                    y = b[t][j]
                    if y:
                        acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def mat_vec(a: Matrix, v: Sequence[Scalar]) -> List[Scalar]:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        cand = [i for i in range(r, rows) if m[i][c]]
        if not cand:
            continue
        p = min(cand, key=lambda i: _weight(m[i][c]))
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(a: Matrix, ncols: int) -> List[List[Scalar]]:
    """Basis of ``{x : a x = 0}``; ``ncols`` is needed when ``a`` has no rows."""
    if not a:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(a)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, pc in zip(red, piv):
            if row[f]:
                x[pc] = -row[f]
        basis.append(x)
    return basis


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red[:n]]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)] if a else []
