"""Known exact identities between brackets, as data.

An identity is a list of (coefficient, factors) whose sum of products
vanishes as a q-series.  A factor is a (bi-)word, ("d", word) for
q d/dq of a bracket, ("delta",) for the cusp form Delta, or ("gtilde", k)
for the rational Eisenstein series gtilde_eisenstein(k).
"""

from __future__ import annotations

from fractions import Fraction as Fr
from math import comb
from typing import NamedTuple

from .brackets import DEFAULT_ORDER, bibracket_series, gtilde_eisenstein
from .qseries import QSeries, delta_series
from .words import LinComb

__all__ = [
    "DELTA_BRACKETS",
    "Identity",
    "catalogue",
    "dk_identity",
    "factor_series",
    "identity_residual",
]


class Identity(NamedTuple):
    name: str
    text: str
    terms: tuple  # ((coeff, (factor, ...)), ...)


def _mb(s, r):
    return tuple(zip(s, r))


def _lin(*pairs) -> tuple:
    """(c, factor) pairs -> identity terms with single factors."""
    return tuple((Fr(c), (f,)) for c, f in pairs)


def _d(w):
    return ("d", tuple(w))


# -(2^6 5 691)^{-1} Delta as brackets
DELTA_BRACKETS = LinComb(
    [
        ((5, 7), 168),
        ((7, 5), 150),
        ((9, 3), 28),
        ((2,), Fr(1, 1408)),
        ((4,), Fr(-83, 14400)),
        ((6,), Fr(187, 6048)),
        ((8,), Fr(-7, 120)),
        ((12,), Fr(-5197, 691)),
    ]
)
DELTA_SCALE = Fr(-1, 2**6 * 5 * 691)


def dk_identity(s1: int, s2: int) -> Identity:
    """C(s, s1-1) d[s]/s = [s1][s2] + C(s, s1-1)[s+1]
    - sum_{a+b=s+2} (C(a-1, s1-1) + C(a-1, s2-1)) [a, b],  s = s1 + s2 - 2."""
    s = s1 + s2 - 2
    if s1 < 1 or s2 < 1 or s < 1:
        raise ValueError("need s1, s2 >= 1 and s1 + s2 > 2")
    c = comb(s, s1 - 1)
    terms = [(Fr(c, s), (_d((s,)),)), (Fr(-1), ((s1,), (s2,))), (Fr(-c), ((s + 1,),))]
    for a in range(1, s + 2):
        b = s + 2 - a
        terms.append((Fr(comb(a - 1, s1 - 1) + comb(a - 1, s2 - 1)), ((a, b),)))
    return Identity(f"dk({s1},{s2})", f"d[{s}] from [{s1}]*[{s2}]", tuple(terms))


def catalogue() -> list[Identity]:
    """All identities checked by the identity suite."""
    out = [
        Identity("d1", "d[1] = [3] + 1/2[2] - [2,1]",
                 _lin((1, _d((1,))), (-1, (3,)), (Fr(-1, 2), (2,)), (1, (2, 1)))),
        Identity("d2a", "d[2] = [4] + 2[3] - 1/6[2] - 4[3,1]",
                 _lin((1, _d((2,))), (-1, (4,)), (-2, (3,)), (Fr(1, 6), (2,)), (4, (3, 1)))),
        Identity("d2b", "d[2] = 2[4] + [3] + 1/6[2] - 2[2,2] - 2[3,1]",
                 _lin((1, _d((2,))), (-2, (4,)), (-1, (3,)), (Fr(-1, 6), (2,)), (2, (2, 2)), (2, (3, 1)))),
        Identity("d11", "d[1,1] = [3,1] + 3/2[2,1] + 1/2[1,2] + [1,3] - 2[2,1,1] - [1,2,1]",
                 _lin((1, _d((1, 1))), (-1, (3, 1)), (Fr(-3, 2), (2, 1)), (Fr(-1, 2), (1, 2)),
                      (-1, (1, 3)), (2, (2, 1, 1)), (1, (1, 2, 1)))),
        Identity("weight8", "[8] = 1/40[4] - 1/252[2] + 12[4,4]",
                 _lin((1, (8,)), (Fr(-1, 40), (4,)), (Fr(1, 252), (2,)), (-12, (4, 4)))),
        Identity("stuffle23", "[2][3] = [3,2] + [2,3] + [5] - 1/12[3]",
                 ((Fr(1), ((2,), (3,))),) + _lin((-1, (3, 2)), (-1, (2, 3)), (-1, (5,)), (Fr(1, 12), (3,)))),
        Identity("shuffle23", "[2][3] = [2,3] + 3[3,2] + 6[4,1] - 3[4] + d[3]",
                 ((Fr(1), ((2,), (3,))),)
                 + _lin((-1, (2, 3)), (-3, (3, 2)), (-6, (4, 1)), (3, (4,)), (-1, _d((3,))))),
        Identity("stuffle3x21",
                 "[3][2,1] = [3,2,1]+[2,3,1]+[2,1,3]+[5,1]+[2,4]+1/12[2,2]-1/2[2,3]-1/12[3,1]",
                 ((Fr(1), ((3,), (2, 1))),)
                 + _lin((-1, (3, 2, 1)), (-1, (2, 3, 1)), (-1, (2, 1, 3)), (-1, (5, 1)), (-1, (2, 4)),
                        (Fr(-1, 12), (2, 2)), (Fr(1, 2), (2, 3)), (Fr(1, 12), (3, 1)))),
        Identity("shuffle3x21",
                 "[3][2,1] = [2,1,3]+[2,2,2]+2[2,3,1]+2[3,1,2]+5[3,2,1]+9[4,1,1]"
                 "+[2,3|0,1]+2[3,2|0,1]+3[4,1|1,0]-[2,3]-2[3,2]-6[4,1]",
                 ((Fr(1), ((3,), (2, 1))),)
                 + _lin((-1, (2, 1, 3)), (-1, (2, 2, 2)), (-2, (2, 3, 1)), (-2, (3, 1, 2)),
                        (-5, (3, 2, 1)), (-9, (4, 1, 1)), (-1, _mb((2, 3), (0, 1))),
                        (-2, _mb((3, 2), (0, 1))), (-3, _mb((4, 1), (1, 0))),
                        (1, (2, 3)), (2, (3, 2)), (6, (4, 1)))),
        Identity("partition22", "[2,2] = [1,1|1,1] - 2[1,1|0,2]",
                 _lin((1, (2, 2)), (-1, _mb((1, 1), (1, 1))), (2, _mb((1, 1), (0, 2))))),
        Identity("4211", "[4] - [2,1,1] = 1/2(d[1] + d[2]) - 1/3[2] - [3] + [2,1|1,0]",
                 _lin((1, (4,)), (-1, (2, 1, 1)), (Fr(-1, 2), _d((1,))), (Fr(-1, 2), _d((2,))),
                      (Fr(1, 3), (2,)), (1, (3,)), (-1, _mb((2, 1), (1, 0))))),
    ]
    out += [dk_identity(s1, s2) for n in range(3, 11) for s1 in range(1, n) for s2 in [n - s1]]
    out += [
        Identity("delta-eisenstein", "Delta = -3316800 G6~^2 + 3432000 G12~",
                 ((Fr(1), (("delta",),)), (Fr(3316800), (("gtilde", 6), ("gtilde", 6))),
                  (Fr(-3432000), (("gtilde", 12),)))),
        Identity("delta-66", "Delta = 3455/198[2] - 691/6[4] + 6910/21[6] + 115200[12] - 6633600[6,6]",
                 _lin((1, ("delta",)), (Fr(-3455, 198), (2,)), (Fr(691, 6), (4,)), (Fr(-6910, 21), (6,)),
                      (-115200, (12,)), (6633600, (6, 6)))),
        Identity("delta-brackets",
                 "-Delta/(2^6 5 691) = 168[5,7]+150[7,5]+28[9,3]+1/1408[2]-83/14400[4]"
                 "+187/6048[6]-7/120[8]-5197/691[12]",
                 ((DELTA_SCALE, (("delta",),)),) + tuple((-c, (w,)) for w, c in DELTA_BRACKETS.items())),
    ]
    return out


def factor_series(f, order: int) -> QSeries:
    if f and f[0] == "d":
        return bibracket_series(f[1], order).d()
    if f == ("delta",):
        return delta_series(order)
    if f and f[0] == "gtilde":
        return gtilde_eisenstein(f[1], order)
    return bibracket_series(f, order)


def identity_residual(identity: Identity, order: int = DEFAULT_ORDER) -> QSeries:
    """Left minus right; zero when the identity holds to this order."""
    acc = QSeries.constant(0, order)
    for c, factors in identity.terms:
        prod = QSeries.constant(1, order)
        for f in factors:
            prod = prod * factor_series(f, order)
        acc = acc + prod * c
    return acc
