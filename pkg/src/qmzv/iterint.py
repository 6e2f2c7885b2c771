"""Formal iterated integrals I(a_0; a_1..a_N; a_{N+1}) over {0, 1}.

Basis elements I(s_1, ..., s_r) = I(1; 0^{s_1-1} 1 ... 0^{s_r-1} 1; 0) are
stored as the Index (s_1, ..., s_r); the empty Index is the unit.  Every
factor produced by the coproduct is normalized into this basis right away.

Also here: the deconcatenation coproduct and the shuffle/stuffle
regularizations, which write any z-word as a polynomial in a formal T
(standing for z_1) with admissible coefficients.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .brackets import format_word
from .words import LinComb, compositions, shuffle, stuffle

__all__ = [
    "Tensor",
    "In_reduce",
    "deconcat_coproduct",
    "goncharov_coproduct",
    "integral",
    "reconstruct",
    "reg_at_zero",
    "shuffle_regularize",
    "stuffle_regularize",
    "tensor_product",
]


class Tensor(LinComb):
    """Linear combination of (left word, right word) pairs."""

    __slots__ = ()

    @staticmethod
    def sort_key(pair):
        return (LinComb.sort_key(pair[0]), LinComb.sort_key(pair[1]))

    def format_term(self, pair) -> str:
        return f"{format_word(pair[0]) or '1'} (x) {format_word(pair[1]) or '1'}"

    def to_json(self) -> list[dict]:
        return [
            {
                "left": format_word(l),
                "right": format_word(r),
                "coeff": f"{c.numerator}/{c.denominator}",
            }
            for (l, r), c in self.items()
        ]

    @classmethod
    def from_json(cls, data) -> Tensor:
        def idx(text):
            return tuple(int(x) for x in text.split(",") if x)

        return cls([((idx(e["left"]), idx(e["right"])), Fraction(e["coeff"])) for e in data])


def In_reduce(n: int, s) -> LinComb:
    """I_n(s) = I(1; 0^{s_1-1}1 ... 0^{s_r-1}1 0^n; 0) in the basis."""
    s = tuple(s)
    if n == 0:
        return LinComb.word(s)
    if not s:
        return LinComb()
    terms: dict = defaultdict(int)
    r = len(s)
    # k_j >= 1 with sum k = sum s + n; C(k_j - 1, s_j - 1) kills k_j < s_j
    for extra in compositions(n, r):
        c = 1
        k = tuple(a + e for a, e in zip(s, extra))
        for kj, sj in zip(k, s):
            c *= comb(kj - 1, sj - 1)
        terms[k] += c
    return LinComb(terms) * (-1) ** n


def _split_word(letters) -> tuple[tuple, int]:
    """0/1 letters -> (Index, trailing zeros): the I_n form of I(1; w; 0)."""
    s, run = [], 0
    for a in letters:
        if a == 0:
            run += 1
        else:
            s.append(run + 1)
            run = 0
    return tuple(s), run


@lru_cache(maxsize=None)
def integral(a0: int, letters: tuple, a_end: int) -> LinComb:
    """Normal form of I(a0; letters; a_end) in the quotient where I(1;0;0) = 0."""
    if not letters:
        return LinComb.word(())
    if a0 == a_end:
        return LinComb()
    if a0 == 0:
        # path inversion
        return integral(1, tuple(reversed(letters)), 0) * (-1) ** len(letters)
    s, n = _split_word(letters)
    return In_reduce(n, s)


def _letters(s) -> tuple:
    out = []
    for x in s:
        out.extend([0] * (x - 1))
        out.append(1)
    return tuple(out)


def _shuffle_all(factors: list[LinComb]) -> LinComb:
    acc = LinComb.word(())
    for f in factors:
        if not f:
            return LinComb()
        nxt: dict = defaultdict(Fraction)
        for w, c in acc._terms.items():
            for v, d in f._terms.items():
                for u, e in shuffle(w, v)._terms.items():
                    nxt[u] += c * d * e
        acc = LinComb._raw(nxt)
    return acc


@lru_cache(maxsize=None)
def _coproduct(s: tuple) -> Tensor:
    a = (1,) + _letters(s) + (0,)
    n = len(a) - 2
    acc: dict = defaultdict(Fraction)
    for k in range(n + 1):
        for chosen in combinations(range(1, n + 1), k):
            idx = (0,) + chosen + (n + 1,)
            left = integral(a[0], tuple(a[i] for i in chosen), a[n + 1])
            if not left:
                continue
            factors = [integral(a[p], a[p + 1 : q], a[q]) for p, q in zip(idx, idx[1:])]
            right = _shuffle_all(factors)
            for lw, lc in left._terms.items():
                for rw, rc in right._terms.items():
                    acc[(lw, rw)] += lc * rc
    return Tensor._raw(acc)


def goncharov_coproduct(s) -> Tensor:
    """Goncharov's coproduct of the basis element I(s)."""
    if isinstance(s, LinComb):
        acc = Tensor()
        for w, c in s.items():
            acc = acc + _coproduct(tuple(w)) * c
        return acc
    return _coproduct(tuple(s))


def deconcat_coproduct(w) -> Tensor:
    """sum_{uv = w} u (x) v."""
    w = tuple(w)
    return Tensor({(w[:i], w[i:]): 1 for i in range(len(w) + 1)})


def tensor_product(x: Tensor, y: Tensor, op=shuffle) -> Tensor:
    """Componentwise product of two tensors."""
    acc: dict = defaultdict(Fraction)
    for (l1, r1), c in x._terms.items():
        for (l2, r2), d in y._terms.items():
            lp = op(l1, l2)
            rp = op(r1, r2)
            for lw, lc in lp._terms.items():
                for rw, rc in rp._terms.items():
                    acc[(lw, rw)] += c * d * lc * rc
    return Tensor._raw(acc)


# -- regularization ---------------------------------------------------------

# A regularized value is a dict {power of T: LinComb of admissible words}.


def _poly_add(acc: dict, p: dict, c) -> None:
    for e, lc in p.items():
        acc[e] = acc[e] + lc * c if e in acc else lc * c


def _regularize(w: tuple, product, cache: dict) -> dict:
    hit = cache.get(w)
    if hit is not None:
        return hit
    if not w or w[0] != 1:
        out = {0: LinComb.word(w)}
        cache[w] = out
        return out
    k = 0
    while k < len(w) and w[k] == 1:
        k += 1
    # z_1 . (z_1^{k-1} u) = k z_1^k u + (words with fewer leading z_1)
    rest = product((1,), w[1:]) - LinComb.word(w) * k
    acc: dict = {}
    for e, lc in _regularize(w[1:], product, cache).items():
        _poly_add(acc, {e + 1: lc}, 1)
    for u, c in rest._terms.items():
        _poly_add(acc, _regularize(u, product, cache), -c)
    out = {e: lc * Fraction(1, k) for e, lc in acc.items() if lc}
    cache[w] = out
    return out


_SH_REG: dict = {}
_ST_REG: dict = {}


def shuffle_regularize(w) -> dict[int, LinComb]:
    """w as a shuffle polynomial in T = z_1 over admissible words."""
    return dict(_regularize(tuple(w), shuffle, _SH_REG))


def stuffle_regularize(w) -> dict[int, LinComb]:
    """w as a stuffle polynomial in T = z_1 over admissible words."""
    return dict(_regularize(tuple(w), stuffle, _ST_REG))


def reg_at_zero(poly: dict[int, LinComb]) -> LinComb:
    """The T = 0 specialization."""
    return poly.get(0, LinComb())


def reconstruct(poly: dict[int, LinComb], product) -> LinComb:
    """Substitute z_1 for T and expand with the given product."""
    acc = LinComb()
    power = LinComb.word(())
    for e in range(max(poly, default=-1) + 1):
        if e in poly:
            acc = acc + _lin(poly[e], power, product)
        power = _lin(power, LinComb.word((1,)), product)
    return acc


def _lin(x: LinComb, y: LinComb, product) -> LinComb:
    acc: dict = defaultdict(Fraction)
    for w, c in x._terms.items():
        for v, d in y._terms.items():
            for u, e in product(w, v)._terms.items():
                acc[u] += c * d * e
    return LinComb._raw(acc)
