import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import shuffle_oracle as sh
from conftest import general_multisegments, laurents
from symcrystal.multiseg import EMPTY, Multisegment, Segment, is_theta_restricted
from symcrystal.qarith import ONE, Q, ZERO, parse_scalar, qfact, qint, qpow
from symcrystal.uqminus import (
    FuelExhausted,
    UqElement,
    ad_t_exponent,
    bar_uq,
    eprime,
    eprime_words,
    estar,
    estar_words,
    expand_monomial,
    expand_segment,
    multiply,
    parse_product,
    pbw,
    relation_case,
    segment_element,
    straighten_word,
    theta_normalizer,
)

M = Multisegment.of
seg = segment_element


def test_concatenation_relation():
    # <1,1><3,3> = <1,3> + q <3,3><1,1>
    assert multiply(seg(1, 1), seg(3, 3)) == pbw(M((1, 3))) + pbw(M((3, 3), (1, 1)), Q)


@pytest.mark.parametrize("i, j, k", [(1, 1, 3), (-1, 1, 5), (-3, -1, 3)])
def test_concatenation_relation_general(i, j, k):
    lhs = multiply(seg(i, j), seg(j + 2, k))
    assert lhs == pbw(M((i, k))) + pbw(M((j + 2, k), (i, j)), Q)


@pytest.mark.parametrize("i, j, k", [(1, 3, 3), (-1, 1, 3), (-3, 3, 5)])
def test_same_end_relation(i, j, k):
    assert multiply(seg(i, k), seg(j, k)) == pbw(M((j, k), (i, k)), qpow(-1))


def test_squares_and_unit():
    assert multiply(seg(1, 1), seg(1, 1)) == pbw(M((1, 1), (1, 1)), qint(2))
    assert multiply(seg(1, 3), seg(1, 3)) == pbw(M((1, 3), (1, 3)), qint(2))
    x = pbw(M((1, 3), (-1, 1)), Q) + seg(5, 5)
    assert multiply(pbw(EMPTY), x) == x and multiply(x, pbw(EMPTY)) == x


def test_expansion_examples():
    assert expand_segment((1, 1)) == {(1,): ONE}
    assert expand_segment((1, 3)) == {(1, 3): ONE, (3, 1): -Q}
    assert expand_monomial(M((1, 1), (1, 1))) == {(1, 1): qint(2).inverse()}


def test_bar_examples():
    assert bar_uq(seg(1, 1)) == seg(1, 1)
    expected = pbw(M((1, 3))) + pbw(M((3, 3), (1, 1)), Q - qpow(-1))
    assert bar_uq(seg(1, 3)) == expected


def test_derivation_examples():
    for i in (-3, 1, 5):
        assert eprime(i, seg(i, i)) == pbw(EMPTY)
        assert eprime(i + 2, seg(i, i)) == UqElement()
    assert ad_t_exponent(3, M((3, 3))) == -2


def test_relation_case_names():
    S = Segment
    assert relation_case(S(1, 1), S(5, 5)) == "apart"
    assert relation_case(S(1, 1), S(3, 3)) == "adjacent"
    assert relation_case(S(1, 3), S(3, 5)) == "overlap"
    assert relation_case(S(3, 3), S(1, 5)) == "nested"
    assert relation_case(S(1, 5), S(3, 5)) == "same-end"
    assert relation_case(S(1, 3), S(1, 5)) == "same-start"
    assert relation_case(S(1, 5), S(1, 3)) == "ordered"


def test_parse_product():
    x = parse_product("<1,3>^(2) * <-1,1>")
    assert x == multiply(seg(1, 3, 2), seg(-1, 1))
    assert parse_product("<1,1>^2") == pbw(M((1, 1), (1, 1)), qfact(2))
    for bad in ["", "<1,2>", "<1,3>^(x)", "1,3"]:
        with pytest.raises(ValueError):
            parse_product(bad)


def test_fuel_limit():
    with pytest.raises(FuelExhausted):
        straighten_word([((1, 1), 1), ((3, 3), 1), ((5, 5), 1), ((7, 7), 1)], fuel=1)


def test_theta_normalizer():
    assert theta_normalizer(M((1, 1))) == ONE
    assert theta_normalizer(M((-1, 1))) == qint(2).inverse()
    assert theta_normalizer(Multisegment({(-1, 1): 2})) == qfact(2) / (qint(2) * qint(4))


# against the shuffle model ---------------------------------------------------------

small_segments = st.tuples(st.integers(-2, 2), st.integers(0, 2)).map(lambda t: (2 * t[0] + 1, 2 * t[0] + 1 + 2 * t[1]))
small_multisegments = (
    st.dictionaries(small_segments, st.integers(1, 2), max_size=2).map(Multisegment).filter(lambda m: m.boxes() <= 3)
)
small_words = st.lists(st.tuples(small_segments, st.integers(1, 2)), min_size=2, max_size=3).filter(
    lambda w: sum(((s[1] - s[0]) // 2 + 1) * a for s, a in w) <= 5
)


@given(small_multisegments, small_multisegments)
def test_products_agree_with_shuffle_model(m, n):
    prod = multiply(pbw(m), pbw(n))
    assert sh.image(prod) == sh.shuffle(sh.monomial(m), sh.monomial(n))


@given(small_multisegments)
def test_word_expansion_agrees_with_shuffle_model(m):
    assert sh.words_image(expand_monomial(m)) == sh.monomial(m)


@given(small_words, st.integers(0, 10**6))
def test_rewriting_orders_are_confluent(word, seed):
    ref = straighten_word(word)
    assert straighten_word(word, rng=random.Random(seed)) == ref
    acc = pbw(EMPTY)
    for s, a in word:
        acc = multiply(acc, seg(*s, a))
    assert acc == ref
    assert sh.image(ref) == sh.factors_image([(s[0], s[1], a, False) for s, a in word])


@given(small_multisegments, small_multisegments, small_multisegments)
def test_associativity(a, b, c):
    x, y, z = pbw(a), pbw(b), pbw(c)
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@given(small_multisegments, laurents)
def test_bar_is_an_involution_and_fixes_words(m, c):
    x = pbw(m, c) if c else pbw(m)
    assert bar_uq(bar_uq(x)) == x
    barred = {w: d.bar() * (c.bar() if c else ONE) for w, d in expand_monomial(m).items()}
    assert sh.image(bar_uq(x)) == sh.words_image(barred)


@given(small_multisegments, st.sampled_from([-3, -1, 1, 3, 5]))
def test_derivations_agree_with_word_formulas(m, k):
    words = expand_monomial(m)
    assert sh.image(eprime(k, pbw(m))) == sh.words_image(eprime_words(k, words))
    assert sh.image(estar(k, pbw(m))) == sh.words_image(estar_words(k, words))


@given(small_multisegments, small_multisegments, st.sampled_from([-1, 1, 3]))
def test_eprime_is_a_twisted_derivation(a, b, k):
    x, y = pbw(a), pbw(b)
    lhs = eprime(k, multiply(x, y))
    rhs = multiply(eprime(k, x), y) + multiply(x, eprime(k, y)).scale(qpow(ad_t_exponent(k, a)))
    assert lhs == rhs
