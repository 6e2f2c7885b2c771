from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmzv.brackets import (
    as_biword,
    bibracket_series,
    bracket_series,
    format_word,
    gtilde_constant,
    gtilde_eisenstein,
    parse_biindex,
    parse_index,
)
from qmzv.exact import bernoulli
from qmzv.suites import GOLDEN, all_biwords


def _brute_coefficient(word, n):
    """Coefficient of q^n straight from the definition: sum over
    u_1 > ... > u_l > 0 and v_j > 0 with sum u_j v_j = n."""

    def rec(j, umax, rest):
        if j == len(word):
            return Fraction(1) if rest == 0 else Fraction(0)
        s, r = word[j]
        total = Fraction(0)
        for u in range(1, min(umax, rest) + 1):
            for v in range(1, rest // u + 1):
                w = Fraction(u**r, factorial(r)) * Fraction(v ** (s - 1), factorial(s - 1))
                total += w * rec(j + 1, u - 1, rest - u * v)
        return total

    return rec(0, n, n)


@pytest.mark.parametrize("word,den,first,printed", GOLDEN)
def test_golden_coefficients(word, den, first, printed):
    f = bracket_series(word, first + len(printed) - 1)
    assert list(f.coeffs) == [0] * first + [Fraction(c, den) for c in printed]


@pytest.mark.parametrize("word", all_biwords(4))
def test_definition_oracle(word):
    f = bibracket_series(word, 14)
    assert [f[n] for n in range(15)] == [Fraction(0)] + [_brute_coefficient(word, n) for n in range(1, 15)]


@pytest.mark.parametrize("word", all_biwords(6))
def test_two_routes_agree(word):
    assert bibracket_series(word, 30, "eulerian") == bibracket_series(word, 30, "divisor")


def test_unknown_method():
    with pytest.raises(ValueError):
        bibracket_series((2,), 5, "magic")


def test_invalid_entries():
    with pytest.raises(ValueError):
        bracket_series((0, 2))
    with pytest.raises(ValueError):
        bibracket_series(((2, -1),))


def test_empty_word_is_one():
    assert bracket_series((), 5).coeffs == (1,) + (0,) * 5


@given(st.lists(st.tuples(st.integers(1, 9), st.integers(0, 5)), min_size=1, max_size=5))
def test_parse_format_round_trip(word):
    w = tuple(word)
    assert parse_biindex(format_word(w)) == w
    s = tuple(a for a, _ in w)
    assert parse_index(format_word(s)) == s


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_biindex("2,3|1")
    with pytest.raises(ValueError):
        parse_biindex("2|-1")


def test_as_biword():
    assert as_biword((2, 3)) == ((2, 0), (3, 0))
    assert as_biword(((2, 1),)) == ((2, 1),)


@pytest.mark.parametrize("k", [2, 4, 6, 8, 12])
def test_gtilde_constant(k):
    assert gtilde_constant(k) == -bernoulli(k) / (2 * factorial(k))
    assert gtilde_eisenstein(k, 5)[0] == gtilde_constant(k)


def test_gtilde_rejects_odd():
    with pytest.raises(ValueError):
        gtilde_constant(3)
