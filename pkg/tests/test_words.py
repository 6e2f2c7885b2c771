from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmzv.brackets import bibracket_series
from qmzv.suites import _indices, all_biwords
from qmzv.words import (
    LinComb,
    box_product,
    derivative,
    eval_hom,
    lin_product,
    partition_involution,
    plain_words,
    second_product,
    shuffle,
    shuffle_bracket,
    shuffle_len1,
    stuffle,
    weight,
)

ORDER = 20
indices = st.lists(st.integers(1, 3), min_size=0, max_size=3).map(tuple)
biwords = st.lists(st.tuples(st.integers(1, 3), st.integers(0, 2)), min_size=1, max_size=2).map(tuple)


@given(indices, indices)
def test_products_commute(u, v):
    for op in (stuffle, shuffle, box_product):
        assert op(u, v) == op(v, u)


# shuffle products grow like binomials in the weight, so keep the triples light
light = indices.filter(lambda w: weight(w) <= 4)


@given(light, light, light)
@settings(max_examples=40)
def test_products_associate(u, v, w):
    for op in (stuffle, shuffle, box_product):
        left = lin_product(op(u, v), LinComb.word(w), op)
        right = lin_product(LinComb.word(u), op(v, w), op)
        assert left == right


@given(indices, indices)
def test_weight_and_term_counts(u, v):
    sh = shuffle(u, v)
    assert all(weight(w) == weight(u) + weight(v) for w in sh.words())
    assert all(weight(w) == weight(u) + weight(v) for w in stuffle(u, v).words())


@given(indices, indices)
def test_shuffle_multiplicity(u, v):
    # as words in x, y: C(|u| + |v|, |u|) shuffles counted with multiplicity
    total = sum(c for _, c in shuffle(u, v).items())
    assert total == comb(weight(u) + weight(v), weight(u))


def test_stuffle_small():
    assert stuffle((2,), (3,)) == LinComb({(2, 3): 1, (3, 2): 1, (5,): 1})


@pytest.mark.parametrize("s1,s2", [(a, b) for a in range(1, 6) for b in range(1, 6)])
def test_shuffle_len1_matches_shuffle(s1, s2):
    assert shuffle_len1(s1, s2) == shuffle((s1,), (s2,))


@given(biwords, biwords)
@settings(max_examples=60, deadline=None)
def test_box_product_is_multiplicative(u, v):
    assert eval_hom(box_product(u, v), ORDER) == eval_hom(u, ORDER) * eval_hom(v, ORDER)


@given(biwords, biwords)
@settings(max_examples=30, deadline=None)
def test_second_product_is_multiplicative(u, v):
    assert eval_hom(second_product(u, v), ORDER) == eval_hom(u, ORDER) * eval_hom(v, ORDER)


@pytest.mark.parametrize("w", all_biwords(5))
def test_derivative_matches_series(w):
    assert eval_hom(derivative(w), ORDER) == bibracket_series(w, ORDER).d()


def test_derivative_example():
    # d[1] = [2|1]: the letter (s, r) goes to s (r + 1) (s + 1, r + 1)
    assert derivative((1,)) == LinComb({((2, 1),): 1})


@pytest.mark.parametrize("w", all_biwords(5))
def test_partition_relation(w):
    pw = partition_involution(w)
    assert eval_hom(pw, ORDER) == eval_hom(w, ORDER)
    assert partition_involution(pw) == LinComb.word(w)


def test_partition_example():
    assert partition_involution((2, 2)) == LinComb({((1, 1), (1, 1)): 1, ((1, 0), (1, 2)): -2})


def _sb(lc):
    acc = LinComb()
    for w, c in lc.items():
        acc = acc + shuffle_bracket(w) * c
    return acc


@pytest.mark.parametrize(
    "u,v",
    [(u, v) for u in _indices(5) for v in _indices(5) if len(u) + len(v) <= 4 and sum(u) + sum(v) <= 7],
)
def test_shuffle_brackets_satisfy_shuffle_product(u, v):
    lhs = eval_hom(shuffle_bracket(u), ORDER) * eval_hom(shuffle_bracket(v), ORDER)
    assert lhs == eval_hom(_sb(shuffle(u, v)), ORDER)


def test_shuffle_bracket_length_one_and_limit():
    assert shuffle_bracket((3,)) == LinComb.word(((3, 0),))
    with pytest.raises(ValueError):
        shuffle_bracket((1, 1, 1, 1, 1))


def test_lincomb_json_round_trip():
    c = LinComb({(2, 3): Fraction(1, 2), ((2, 1), (1, 0)): -3})
    assert LinComb.from_json(c.to_json()) == c


def test_lincomb_arithmetic():
    a = LinComb({(2,): 1})
    b = LinComb({(3,): 2})
    assert (a + b) - b == a
    assert (a * 0) == LinComb()
    assert -a + a == LinComb()


def test_plain_words_merges_zero_r():
    c = LinComb({(2, 3): 1, ((2, 0), (3, 0)): 2, ((4, 1),): 1, ((4, 0),): -1})
    p = plain_words(c)
    assert p == LinComb({(2, 3): 3, ((4, 1),): 1, (4,): -1})
    assert eval_hom(p, 20) == eval_hom(c, 20)
