import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import homogeneous_vectors, operator_indices, theta_multisegments
from symcrystal import twisted, verify
from symcrystal.multiseg import EMPTY, Multisegment, cartan, parse_multisegment, theta_weight
from symcrystal.qarith import ONE, ZERO, parse_scalar, qfact, qint, qpow
from symcrystal.uqminus import EMPTY as _E, apply_words, expand_monomial, pbw
from symcrystal.vtheta import (
    ThetaVector,
    apply_divided_F,
    apply_E,
    apply_F,
    apply_fword,
    apply_T,
    bar_vtheta,
    bilinear_form,
    gram_matrix,
    in_lattice,
    mod_root_E,
    mod_root_F,
    phi,
    realize_basis_vector,
    reduce_mod_q,
    string_decompose,
    string_decompose_recursive,
    unit,
    vector_from_json,
    vector_to_json,
    zero,
)

M = Multisegment.of
P = parse_scalar


parse_ms = parse_multisegment


def vec(*pairs):
    return ThetaVector({parse_ms(m): P(c) for m, c in pairs})


def in_model(v):
    return twisted.image_of(v)


# trivial and hand-derived values ---------------------------------------------------


@pytest.mark.parametrize("k", [1, 3, 5])
def test_action_on_phi(k):
    assert apply_F(-k, phi()) == unit(M((k, k)))
    assert apply_F(k, phi()) == unit(M((k, k)))
    assert apply_F(k, unit(M((k, k)))) == unit(Multisegment({(k, k): 2})).scale(qint(2))
    assert apply_E(k, unit(M((k, k)))) == phi()
    for j in (k, -k):
        assert apply_E(j, phi()) == zero()
        assert apply_T(j, phi()) == phi()
        assert apply_F(j, zero()) == zero()


def test_T_eigenvalue():
    assert apply_T(1, unit(M((1, 1)))) == unit(M((1, 1))).scale(qpow(-1))


def test_T_rejects_mixed_weights():
    with pytest.raises(ValueError):
        apply_T(1, phi() + unit(M((1, 1))))


def test_unit_rejects_unrestricted():
    with pytest.raises(ValueError):
        unit(M((-3, 1)))


# values frozen after agreement with the model inside U_q^- ----------------------------

FROZEN = [
    (apply_E, -1, "[-1,1]", [("[1,1]", "q^-1 - q")]),
    (apply_E, 1, "[-1,1]", []),
    (apply_E, -3, "[-1,3]", [("[-1,1]", "1 - q^4")]),
    (apply_F, -1, "[1,1]", [("[-1,1]", "q^-1 + q"), ("2*[1,1]", "1 + q^2")]),
    (apply_F, 1, "[-1,1]", [("[1,1] + [-1,1]", "1")]),
    (apply_F, -1, "[-1,1]", [("[1,1] + [-1,1]", "q^-2")]),
    (apply_F, -3, "[1,1]", [("[1,3]", "1"), ("[3,3] + [1,1]", "q")]),
]


@pytest.mark.parametrize("op, k, m, expected", FROZEN)
def test_frozen_action_values(op, k, m, expected):
    v = op(k, unit(parse_ms(m)))
    assert v == vec(*expected)
    model = twisted.twisted_E if op is apply_E else twisted.twisted_F
    assert in_model(v) == model(k, twisted.image(parse_ms(m)))


def test_frozen_bar_values():
    assert bar_vtheta(phi()) == phi()
    assert bar_vtheta(unit(M((1, 1)))) == unit(M((1, 1)))
    assert bar_vtheta(unit(M((-1, 1)))) == vec(("[-1,1]", "1"), ("2*[1,1]", "q - q^-1"))
    assert bar_vtheta(unit(M((-1, 3)))) == vec(
        ("[-1,3]", "1"),
        ("[1,3] + [1,1]", "q - q^-1"),
        ("[3,3] + [-1,1]", "q^2 - q^-2"),
        ("[3,3] + 2*[1,1]", "q^3 - q - q^-1 + q^-3"),
    )


@given(theta_multisegments)
def test_bar_agrees_with_model(m):
    # bar fixes every F-word on phi and conjugates the coefficients
    words = {w: c.bar() for w, c in expand_monomial(m, theta_normalized=True).items()}
    model = apply_words(words, twisted.twisted_F, pbw(_E))
    assert in_model(bar_vtheta(unit(m))) == model


def test_frozen_gram_block():
    basis, G = gram_matrix(theta_weight(M((-1, 1))))
    assert basis == [Multisegment({(1, 1): 2}), M((-1, 1))]
    assert G == [[P("1/(1 + q^2)"), ZERO], [ZERO, P("(1 - q^2)/(1 + q^2)")]]
    assert bilinear_form(phi(), phi()) == ONE
    assert bilinear_form(unit(M((1, 1))), unit(M((1, 1)))) == ONE


# master oracle and the model --------------------------------------------------------


def test_realize_small_cases():
    assert realize_basis_vector(EMPTY) == phi()
    assert realize_basis_vector(M((1, 1))) == unit(M((1, 1)))
    assert realize_basis_vector(M((-1, 1))) == unit(M((-1, 1)))


def test_closed_formulas_agree_with_model_at_moderate_bounds():
    res = verify.suite_oracle(4, 5)
    assert res.ok, res.witnesses


@given(homogeneous_vectors(), operator_indices)
def test_actions_are_linear_and_agree_with_model(v, k):
    assert in_model(apply_F(k, v)) == twisted.twisted_F(k, in_model(v))
    assert in_model(apply_E(k, v)) == twisted.twisted_E(k, in_model(v))


@given(homogeneous_vectors(), operator_indices, operator_indices)
def test_exchange_relation_on_random_vectors(v, i, j):
    lhs = apply_E(i, apply_F(j, v)) - apply_F(j, apply_E(i, v)).scale(qpow(-cartan(i, j)))
    rhs = zero()
    if i == j:
        rhs = v
    if i == -j:
        rhs = apply_T(i, v)
    assert lhs == rhs


@given(theta_multisegments, operator_indices, st.integers(0, 3))
def test_divided_powers(m, k, n):
    v = unit(m)
    w = v
    for _ in range(n):
        w = apply_F(k, w)
    assert apply_divided_F(k, n, v).scale(qfact(n)) == w


def test_fword():
    assert apply_fword([1]) == unit(M((1, 1)))
    assert apply_fword([]) == phi()


# string decomposition and root operators ----------------------------------------------


def test_string_examples():
    assert string_decompose(1, phi()) == [(0, phi())]
    assert string_decompose(1, unit(M((1, 1)))) == [(1, phi())]
    assert mod_root_F(3, phi()) == unit(M((3, 3)))
    assert mod_root_E(3, phi()) == zero()
    v = apply_F(-1, apply_F(-1, phi()))
    assert string_decompose(-1, v) == [(2, phi().scale(qint(2)))]


def test_string_decomposition_rejects_mixed_weights():
    with pytest.raises(ValueError):
        string_decompose(1, phi() + unit(M((1, 1))))


@given(homogeneous_vectors(), operator_indices)
def test_string_decomposition_properties(v, i):
    parts = string_decompose(i, v)
    total = zero()
    for n, u in parts:
        assert apply_E(i, u) == zero()
        total = total + apply_divided_F(i, n, u)
    assert total == v
    assert parts == string_decompose_recursive(i, v)


@given(homogeneous_vectors(), operator_indices)
def test_root_operators_shift_strings(v, i):
    assert mod_root_E(i, mod_root_F(i, v)) == v


@given(homogeneous_vectors(), operator_indices)
def test_kernel_vectors_are_their_own_string(v, i):
    u = mod_root_E(i, v)
    if u and apply_E(i, u) == zero():
        assert string_decompose(i, u) == [(0, u)]


def test_lattice_examples():
    assert in_lattice(phi()) and reduce_mod_q(phi()) == {EMPTY: 1}
    assert not in_lattice(phi().scale(qpow(-1)))
    with pytest.raises(ValueError):
        reduce_mod_q(phi().scale(qpow(-1)))


# bilinear form ------------------------------------------------------------------------


@given(homogeneous_vectors(), homogeneous_vectors(), operator_indices)
def test_adjunction_and_symmetry(u, v, k):
    assert bilinear_form(apply_E(k, v), u) == bilinear_form(v, apply_F(k, u))
    assert bilinear_form(u, v) == bilinear_form(v, u)


@given(homogeneous_vectors())
def test_bar_involution_on_random_vectors(v):
    assert bar_vtheta(bar_vtheta(v)) == v


# JSON ----------------------------------------------------------------------------------


@given(homogeneous_vectors())
def test_json_roundtrip(v):
    data = vector_to_json(v)
    assert set(data) == {"theta_weight", "terms"}
    assert vector_from_json(json.dumps(data)) == v
    assert vector_from_json(data["terms"]) == v


def test_json_rejects_wrong_weight():
    data = vector_to_json(unit(M((1, 1))))
    data["theta_weight"] = {"1": -2, "-1": -2}
    with pytest.raises(ValueError):
        vector_from_json(data)
