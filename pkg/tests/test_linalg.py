import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import laurents, sympy_equal, to_sympy
from symcrystal import linalg
from symcrystal.qarith import ONE, Q, ZERO

square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(laurents, min_size=n, max_size=n), min_size=n, max_size=n))
wide = st.integers(1, 3).flatmap(lambda r: st.lists(st.lists(laurents, min_size=4, max_size=4), min_size=r, max_size=r))


@given(square)
def test_inverse_or_singular_matches_sympy(a):
    det = sympy.Matrix([[to_sympy(x) for x in row] for row in a]).det()
    if sympy.simplify(det) == 0:
        with pytest.raises(linalg.SingularMatrix):
            linalg.inverse(a)
    else:
        inv = linalg.inverse(a)
        assert linalg.mat_mul(a, inv) == linalg.identity(len(a))
        assert linalg.mat_mul(inv, a) == linalg.identity(len(a))


@given(wide)
def test_nullspace_is_a_kernel_basis(a):
    ns = linalg.nullspace(a, 4)
    for x in ns:
        assert all(v == ZERO for v in linalg.mat_vec(a, x))
    rank = len(linalg.rref(a)[1])
    assert len(ns) == 4 - rank
    sym_rank = sympy.Matrix([[to_sympy(x) for x in row] for row in a]).rank(simplify=True)
    assert rank == sym_rank


def test_small_cases():
    a = [[ONE, Q], [ZERO, ONE]]
    assert linalg.inverse(a) == [[ONE, -Q], [ZERO, ONE]]
    assert linalg.transpose(a) == [[ONE, ZERO], [Q, ONE]]
    assert linalg.nullspace([], 2) == linalg.identity(2)
    with pytest.raises(linalg.SingularMatrix):
        linalg.inverse([[Q, Q], [ONE, ONE]])
    m, piv = linalg.rref([[ZERO, Q], [ZERO, ONE]])
    assert piv == [1]
    assert sympy_equal(to_sympy(m[0][1]), 1)
