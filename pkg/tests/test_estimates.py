import pytest

from symcrystal import estimates
from symcrystal.crystal import theta_epsilon, theta_F
from symcrystal.multiseg import EMPTY, Multisegment, enumerate_theta_restricted
from symcrystal.qarith import ONE, parse_scalar
from symcrystal.vtheta import _F_terms

M = Multisegment.of
BASIS = enumerate_theta_restricted(6, 7)


def test_xi_and_B2_examples():
    # index -1: xi reads m_{-1,1} with sign from m_{1,1}
    assert estimates.xi(1, M((-1, 1))) == 1
    assert estimates.xi(1, Multisegment({(-1, 1): 2, (1, 1): 1})) == -2
    assert estimates.in_B2(1, M((1, 1)))
    assert not estimates.in_B2(1, EMPTY)


def test_leading_term_predicate():
    assert estimates._has_leading(parse_scalar("q^-2 + 5*q"), -2)
    assert not estimates._has_leading(parse_scalar("2*q^-2"), -2)
    assert not estimates._has_leading(parse_scalar("q^-1"), -2)
    assert estimates._has_leading(ONE / (ONE - parse_scalar("q")), 0)


@pytest.mark.parametrize("k", [1, -1, 3, -3, 5, -5, 7, -7, 9, -9])
def test_no_violations_within_default_bounds(k):
    bad = [v for m in BASIS for v in estimates.violations(k, m)]
    assert bad == []


def test_crystal_edge_has_expected_leading_term():
    for m in BASIS[:200]:
        for k in (-1, -3, 1):
            c = dict(_F_terms(k, m))[theta_F(k, m)]
            assert c.ord() == -theta_epsilon(k, m)


def test_equality_cases_are_exercised_for_negative_indices():
    # the side conditions only bite when the order bound is attained
    ties = 0
    for m in BASIS:
        for k in (-1, -3, -5, -7):
            l = theta_epsilon(k, m)
            for m2, c in _F_terms(k, m):
                if m2 != theta_F(k, m) and 2 * c.ord() == -(l + theta_epsilon(k, m2) - 1):
                    ties += 1
    assert ties > 0


def test_violation_is_reported_for_a_perturbed_table(monkeypatch):
    m, k = M((1, 1)), -1
    terms = dict(_F_terms(k, m))
    edge = theta_F(k, m)
    terms[edge] = terms[edge] * parse_scalar("q^-1")
    monkeypatch.setattr(estimates, "_F_terms", lambda kk, mm: tuple(terms.items()) if (kk, mm) == (k, m) else _F_terms(kk, mm))
    assert any(v.rule == "F-edge-leading" for v in estimates.violations(k, m))
