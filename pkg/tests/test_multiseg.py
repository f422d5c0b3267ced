import itertools
from collections import Counter

import pytest
from hypothesis import given

from conftest import general_multisegments, theta_multisegments
from symcrystal.multiseg import (
    EMPTY,
    Multisegment,
    Segment,
    Weight,
    cartan,
    cry_cmp,
    cry_cmp_multi,
    cry_sorted,
    enumerate_theta_restricted,
    is_theta_restricted,
    multisegment_from_json,
    multisegment_to_json,
    pairing,
    parse_multisegment,
    pbw_cmp,
    theta_weight,
    theta_weight_block,
    weight,
)


def brute_force(content_bound, index_bound):
    """Every multiset of segments inside [-b, b], filtered by box count and theta-restriction."""
    odd = range(-index_bound, index_bound + 1, 2)
    segs = [(i, j) for i in odd for j in odd if i <= j]
    out = set()
    for r in range(content_bound + 1):
        for combo in itertools.combinations_with_replacement(segs, r):
            boxes = sum((j - i) // 2 + 1 for i, j in combo)
            if boxes <= content_bound and all(i + j >= 0 for i, j in combo):
                out.add(Multisegment(Counter(combo)))
    return out


def S(i, j):
    return Segment.of(i, j)


def test_orders_on_small_segments():
    assert pbw_cmp(S(1, 1), S(-1, 1)) == 1
    assert pbw_cmp(S(-1, 1), S(-1, -1)) == 1
    assert cry_cmp(S(-1, 1), S(1, 1)) == 1
    assert cry_cmp(S(1, 1), S(-1, -1)) == 1
    assert pbw_cmp(S(3, 5), S(3, 5)) == 0 and cry_cmp(S(3, 5), S(3, 5)) == 0


@given(general_multisegments)
def test_multisegment_order_is_reflexive(m):
    assert cry_cmp_multi(m, m) == 0


def test_orders_agree_on_right_ends_and_oppose_on_left_ends():
    odd = range(-5, 6, 2)
    segs = [S(i, j) for i in odd for j in odd if i <= j]
    for s, t in itertools.product(segs, segs):
        if s.hi != t.hi:
            assert pbw_cmp(s, t) == cry_cmp(s, t)
        elif s.lo != t.lo:
            assert pbw_cmp(s, t) == -cry_cmp(s, t)


def test_segment_validation():
    with pytest.raises(ValueError):
        S(2, 3)
    with pytest.raises(ValueError):
        S(3, 1)


def test_theta_restriction_examples():
    assert is_theta_restricted(EMPTY)
    assert is_theta_restricted(Multisegment.of((-1, 3)))
    assert not is_theta_restricted(Multisegment.of((-3, 1)))


def test_weights():
    assert weight(EMPTY) == Weight()
    m = Multisegment.of((-1, 1))
    assert weight(m) == Weight({-1: -1, 1: -1})
    assert theta_weight(m) == Weight({-1: -2, 1: -2})
    assert theta_weight(Multisegment.of((1, 3))) == Weight({-3: -1, -1: -1, 1: -1, 3: -1})


def test_cartan_and_pairing():
    assert [cartan(1, j) for j in (-3, -1, 1, 3, 5)] == [0, -1, 2, -1, 0]
    mu = theta_weight(Multisegment.of((1, 1)))
    assert pairing(1, mu) == -1
    assert pairing(3, mu) == 1


def test_enumeration_small_cases():
    assert enumerate_theta_restricted(0, 1) == [EMPTY]
    assert enumerate_theta_restricted(1, 1) == [EMPTY, Multisegment.of((1, 1))]
    assert set(enumerate_theta_restricted(2, 1)) == {
        EMPTY,
        Multisegment.of((1, 1)),
        Multisegment.of((1, 1), (1, 1)),
        Multisegment.of((-1, 1)),
    }


@pytest.mark.parametrize("c, b", [(3, 3), (4, 5), (5, 3)])
def test_enumeration_matches_brute_force(c, b):
    got = enumerate_theta_restricted(c, b)
    assert len(got) == len(set(got))
    assert set(got) == brute_force(c, b)


def test_default_bounds_counts():
    # frozen after agreement with the brute-force enumerator on smaller bounds
    ms = enumerate_theta_restricted(6, 7)
    assert len(ms) == 900
    assert len({theta_weight(m) for m in ms}) == 210


def test_enumeration_is_cry_ascending():
    ms = enumerate_theta_restricted(4, 5)
    assert all(cry_cmp_multi(a, b) < 0 for a, b in zip(ms, ms[1:]))


def test_bad_bounds():
    with pytest.raises(ValueError):
        enumerate_theta_restricted(3, 2)
    with pytest.raises(ValueError):
        enumerate_theta_restricted(-1, 3)


def test_weight_blocks_partition_the_enumeration():
    ms = enumerate_theta_restricted(5, 5)
    by_weight = {}
    for m in ms:
        by_weight.setdefault(theta_weight(m), set()).add(m)
    for mu, block in by_weight.items():
        if max(abs(k) for k in mu.support() or [1]) <= 5:
            full = theta_weight_block(mu)
            assert block <= set(full)
            assert all(theta_weight(m) == mu and is_theta_restricted(m) for m in full)
            assert full == cry_sorted(full)


def test_block_of_nonreflective_weight_is_empty():
    assert theta_weight_block(Weight({1: -1})) == []
    assert theta_weight_block(Weight()) == [EMPTY]


@given(general_multisegments)
def test_text_and_json_roundtrip(m):
    assert parse_multisegment(str(m)) == m
    assert multisegment_from_json(multisegment_to_json(m)) == m


@given(theta_multisegments)
def test_theta_weight_is_reflection_symmetric(m):
    mu = theta_weight(m)
    assert mu == mu.reflected()
    assert sum(c for _, c in mu.items) == -2 * sum(s.length * n for s, n in m.items)


def test_parse_errors():
    for bad in ["[1,2]", "[1,1", "x", "2*[3,1]"]:
        with pytest.raises(ValueError):
            parse_multisegment(bad)
    assert parse_multisegment("0") == EMPTY
    assert parse_multisegment("2*[1,1] + [-1,3]") == Multisegment({(1, 1): 2, (-1, 3): 1})
