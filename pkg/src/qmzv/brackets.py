"""Multiple divisor sums, brackets and bi-brackets as exact q-series.

Indices are tuples of positive ints, bi-indices tuples of (s, r) pairs.
Two independent routes produce the series:

* ``"eulerian"`` (default): nested sums over u_1 > ... > u_l of
  u^r/r! * t P_{s-1}(t)/((s-1)!(1-t)^s) at t = q^u, where the power series of
  the rational function is expanded from the Eulerian polynomial;
* ``"divisor"``: direct enumeration of the partitions sum u_i v_i = n.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import bernoulli, binomial, eulerian_poly
from .qseries import QSeries

__all__ = [
    "DEFAULT_ORDER",
    "BiWord",
    "Index",
    "as_biword",
    "bibracket_series",
    "bracket_series",
    "format_word",
    "gtilde_eisenstein",
    "gtilde_constant",
    "multiple_divisor_sum",
    "parse_biindex",
    "parse_index",
]

DEFAULT_ORDER = 50

Index = tuple[int, ...]
BiWord = tuple[tuple[int, int], ...]


def parse_index(text: str) -> Index:
    """'4,2' -> (4, 2)."""
    text = text.strip()
    if not text:
        return ()
    s = tuple(int(x) for x in text.split(","))
    if any(x < 1 for x in s):
        raise ValueError(f"index entries must be positive: {text!r}")
    return s


def parse_biindex(text: str) -> BiWord:
    """'4,2|1,0' -> ((4, 1), (2, 0)); a missing lower part means r = 0."""
    if "|" not in text:
        return tuple((s, 0) for s in parse_index(text))
    upper, lower = text.split("|", 1)
    s = parse_index(upper)
    r = tuple(int(x) for x in lower.split(",")) if lower.strip() else ()
    if len(r) != len(s):
        raise ValueError(f"upper and lower parts differ in length: {text!r}")
    if any(x < 0 for x in r):
        raise ValueError(f"lower entries must be non-negative: {text!r}")
    return tuple(zip(s, r))


def as_biword(w) -> BiWord:
    """Promote an Index to a bi-word with r = 0; bi-words pass through."""
    return tuple(a if isinstance(a, tuple) else (a, 0) for a in w)


def format_word(w) -> str:
    """Inverse of the parsers: (4, 2) -> '4,2', ((4,1),(2,0)) -> '4,2|1,0'."""
    if not w:
        return ""
    if isinstance(w[0], tuple):
        return ",".join(str(s) for s, _ in w) + "|" + ",".join(str(r) for _, r in w)
    return ",".join(str(s) for s in w)


# -- multiple divisor sums -------------------------------------------------


def _partition_table(vexp, uexp, order: int) -> list[int]:
    """out[n] = sum over u_1 > ... > u_l > 0, v_i > 0, sum u_i v_i = n
    of prod v_i^vexp[i] u_i^uexp[i]."""
    l = len(vexp)
    out = [0] * (order + 1)

    def rec(j, umax, total, weight):
        if j == l:
            out[total] += weight
            return
        rest = l - j - 1
        minrest = rest * (rest + 1) // 2
        top = min(umax, order - total - minrest + 1)
        for u in range(rest + 1, top):
            wu = weight * u ** uexp[j]
            v = 1
            while total + u * v + minrest <= order:
                rec(j + 1, u, total + u * v, wu * v ** vexp[j])
                v += 1

    rec(0, order + 1, 0, 1)
    return out


def multiple_divisor_sum(r, n: int) -> int:
    """sigma_{r_1..r_l}(n)."""
    r = tuple(r)
    if not r or n < 1:
        raise ValueError("multiple_divisor_sum needs l >= 1 and n >= 1")
    return _partition_table(r, (0,) * len(r), n)[n]


# -- Eulerian nested-sum route ----------------------------------------------


@lru_cache(maxsize=None)
def _li_coeffs(s: int, order: int) -> tuple[int, ...]:
    """Coefficients of t P_{s-1}(t) / (1-t)^s up to t^order."""
    p = eulerian_poly(s - 1).coeffs
    # 1/(1-t)^s = sum_d C(d+s-1, s-1) t^d
    inv = [binomial(d + s - 1, s - 1) for d in range(order + 1)]
    out = [0] * (order + 1)
    for i, a in enumerate(p):
        a = int(a)
        for d in range(order - i):
            out[i + 1 + d] += a * inv[d]
    return tuple(out)


def _nested_sum(word: BiWord, order: int) -> list[int]:
    """Integer series of prod (s_j-1)! r_j! times the bi-bracket."""
    l = len(word)
    factors = [(_li_coeffs(s, order), r) for s, r in word]
    # acc[j]: sum over u_j > ... > u_l with u_j below the current u
    acc = [[0] * (order + 1) for _ in range(l)]
    one = [1] + [0] * order
    acc.append(one)
    lows = [order + 1] * l + [0]  # lowest nonzero degree of each acc
    for u in range(1, order + 1):
        for j in range(l):
            src, lo = acc[j + 1], lows[j + 1]
            if lo + u > order:
                continue
            c, r = factors[j]
            w = u**r
            dst = acc[j]
            v = 1
            while u * v + lo <= order:
                cv = c[v] * w
                off = u * v
                for m in range(lo, order - off + 1):
                    x = src[m]
                    if x:
                        dst[off + m] += cv * x
                v += 1
            lows[j] = min(lows[j], u + lo)
    return acc[0]


def _divisor_route(word: BiWord, order: int) -> list[int]:
    return _partition_table(tuple(s - 1 for s, _ in word), tuple(r for _, r in word), order)


def _normalizer(word: BiWord) -> int:
    den = 1
    for s, r in word:
        den *= factorial(s - 1) * factorial(r)
    return den


@lru_cache(maxsize=4096)
def _bibracket_cached(word: BiWord, order: int, method: str) -> QSeries:
    if not word:
        return QSeries.constant(1, order)
    if method == "eulerian":
        ints = _nested_sum(word, order)
    elif method == "divisor":
        ints = _divisor_route(word, order)
    else:
        raise ValueError(f"unknown method {method!r}")
    return QSeries.from_ints(ints, _normalizer(word))


def bibracket_series(b, order: int = DEFAULT_ORDER, method: str = "eulerian") -> QSeries:
    """The bi-bracket of b = ((s_1, r_1), ..., (s_l, r_l)) to q^order."""
    word = as_biword(b)
    for s, r in word:
        if s < 1 or r < 0:
            raise ValueError(f"invalid bi-index letter {(s, r)}")
    return _bibracket_cached(word, order, method)


def bracket_series(s, order: int = DEFAULT_ORDER, method: str = "eulerian") -> QSeries:
    """The bracket [s_1, ..., s_l] to q^order."""
    s = tuple(s)
    if any(x < 1 for x in s):
        raise ValueError(f"bracket entries must be positive: {s}")
    return bibracket_series(tuple((x, 0) for x in s), order, method)


def gtilde_constant(k: int) -> Fraction:
    """(-2 pi i)^{-k} zeta(k) = -B_k / (2 k!) for even k."""
    if k < 2 or k % 2:
        raise ValueError(f"gtilde needs an even weight >= 2, got {k}")
    return -bernoulli(k) / (2 * factorial(k))


def gtilde_eisenstein(k: int, order: int = DEFAULT_ORDER) -> QSeries:
    """Rational normalization of G_k: constant term plus [k]."""
    return gtilde_constant(k) + bracket_series((k,), order)
