"""Symbolic Fourier expansions of multiple Eisenstein series.

An expansion is a finite sum of terms

    coeff * zeta(z) * (-2 pi i)^p * b(q),   q = e^{2 pi i tau},

with z an admissible index (empty means 1) and b a bi-bracket word (empty
means 1).  Powers of -2 pi i stay integers until a numeric realization is
requested.  Products of zeta values are expanded with the stuffle product so
every term carries a single zeta word.
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from math import comb

import mpmath

from ..brackets import as_biword, bibracket_series, format_word, parse_biindex, parse_index
from ..iterint import goncharov_coproduct, reg_at_zero, shuffle_regularize
from ..qseries import qs_eval
from ..words import LinComb, shuffle_bracket, stuffle, weight
from .mzv import mzv_numeric

__all__ = ["MESExpansion", "fourier_coefficient", "g_shuffle", "mes_fourier"]


class MESExpansion:
    """Map (zeta word, bi-bracket word, power of -2 pi i) -> rational."""

    __slots__ = ("weight", "_terms")

    def __init__(self, weight: int, terms=None):
        self.weight = weight
        acc: dict = defaultdict(Fraction)
        for key, c in dict(terms or {}).items():
            z, b, p = key
            acc[(tuple(z), as_biword(b), int(p))] += Fraction(c)
        self._terms = {k: c for k, c in acc.items() if c}

    @staticmethod
    def _sort_key(key):
        z, b, p = key
        return (-p, LinComb.sort_key(b), LinComb.sort_key(z))

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, key) -> Fraction:
        z, b, p = key
        return self._terms.get((tuple(z), as_biword(b), p), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MESExpansion):
            return NotImplemented
        return self.weight == other.weight and self._terms == other._terms

    def __add__(self, other: MESExpansion) -> MESExpansion:
        if self.weight != other.weight:
            raise ValueError("cannot add expansions of different weights")
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return MESExpansion(self.weight, acc)

    def __sub__(self, other: MESExpansion) -> MESExpansion:
        return self + other * -1

    def __mul__(self, c) -> MESExpansion:
        c = Fraction(c)
        return MESExpansion(self.weight, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def g_parts(self) -> dict[tuple, LinComb]:
        """Group by (bi-bracket word, power): the zeta coefficient of each g-part."""
        out: dict = defaultdict(dict)
        for (z, b, p), c in self._terms.items():
            out[(b, p)][z] = out[(b, p)].get(z, 0) + c
        return {k: LinComb(v) for k, v in out.items()}

    def grading_errors(self) -> list[tuple]:
        """Terms violating weight(zeta) + power = weight and weight(bracket) <= power."""
        bad = []
        for key in self._terms:
            z, b, p = key
            if weight(z) + p != self.weight or weight(b) > p or (not b and p):
                bad.append(key)
        return bad

    def realize(self, tau, precision: int = 30, order: int | None = None):
        """Numeric value at tau in the upper half plane."""
        with mpmath.workdps(precision + 10):
            tau = mpmath.mpc(tau)
            if tau.imag <= 0:
                raise ValueError("tau must lie in the upper half plane")
            q = mpmath.exp(2j * mpmath.pi * tau)
            if order is None:
                order = _series_order(float(abs(q)), self.weight, precision)
            twopii = -2j * mpmath.pi
            tol = 10.0 ** -(precision + 5)
            total = mpmath.mpc(0)
            for (z, b, p), c in self._terms.items():
                zv = mzv_numeric(z, tol) if z else 1
                bv = qs_eval(bibracket_series(b, order), q, precision).value if b else 1
                total += mpmath.mpf(c.numerator) / c.denominator * zv * twopii**p * bv
            return +total

    def format(self) -> str:
        parts = []
        for (z, b, p), c in self.items():
            factors = []
            if z:
                factors.append(f"zeta({format_word(z)})")
            if p:
                factors.append(f"(-2pi i)^{p}")
            if b:
                factors.append(f"[{format_word(b)}]")
            parts.append(f"{c}*" + "*".join(factors) if factors else str(c))
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"MESExpansion({self.weight}: {self.format()})"

    def to_json(self) -> list[dict]:
        return [
            {
                "zeta": format_word(z) or None,
                "bracket": format_word(b) or None,
                "twopii_pow": p,
                "coeff": f"{c.numerator}/{c.denominator}",
            }
            for (z, b, p), c in self.items()
        ]

    @classmethod
    def from_json(cls, data, weight: int | None = None) -> MESExpansion:
        terms: dict = defaultdict(Fraction)
        for e in data:
            z = parse_index(e["zeta"]) if e.get("zeta") else ()
            b = parse_biindex(e["bracket"]) if e.get("bracket") else ()
            terms[(z, b, int(e["twopii_pow"]))] += Fraction(e["coeff"])
        if weight is None:
            weight = max((sum(z) + p for z, _, p in terms), default=0)
        return cls(weight, terms)


def _series_order(aq: float, k: int, precision: int) -> int:
    """Smallest N with N^{2k} |q|^N below 10^{-precision-5}, at least 20."""
    if aq == 0:
        return 20
    target = (precision + 5) * math.log(10)
    n = 20
    while n * -math.log(aq) - 2 * k * math.log(n) < target:
        n += 10
        if n > 2000:
            raise ValueError("tau too close to the real axis for a q-series realization")
    return n


# -- closed-form Fourier expansions ---------------------------------------


def fourier_coefficient(n1: int, n2: int, k: int) -> int:
    """C^k_{n1,n2} = (-1)^{n2} C(k-1, n2-1) + (-1)^{k-n1} C(k-1, n1-1)."""
    return (-1) ** (n2 % 2) * comb(k - 1, n2 - 1) + (-1) ** ((k - n1) % 2) * comb(k - 1, n1 - 1)


class _Builder:
    def __init__(self, k: int):
        self.k = k
        self.terms: dict = defaultdict(Fraction)

    def add(self, c, zeta, g=()):
        """c * zeta * g_{g}; zeta is an index or a LinComb of indices."""
        if not c:
            return
        zl = zeta if isinstance(zeta, LinComb) else LinComb.word(tuple(zeta))
        b = as_biword(g)
        for z, d in zl.items():
            self.terms[(z, b, sum(g))] += Fraction(c) * d

    def build(self) -> MESExpansion:
        return MESExpansion(self.k, self.terms)


def _pairs(total: int):
    """(k1, k2) with k1 + k2 = total and both >= 2."""
    return [(k1, total - k1) for k1 in range(2, total - 1)]


def mes_fourier(s) -> MESExpansion:
    """Fourier expansion of G_s for length <= 3 and all s_i >= 2."""
    s = tuple(s)
    if not s or len(s) > 3:
        raise ValueError("closed Fourier expansions exist for lengths 1, 2, 3 only")
    if min(s) < 2:
        raise ValueError(f"Fourier expansion needs all s_i >= 2, got {s}")
    k = sum(s)
    out = _Builder(k)
    if len(s) == 1:
        out.add(1, s)
        out.add(1, (), s)
        return out.build()
    if len(s) == 2:
        s1, s2 = s
        out.add(1, s)
        out.add(1, (s2,), (s1,))
        for k1, k2 in _pairs(s1 + s2):
            out.add(fourier_coefficient(s1, s2, k2), (k2,), (k1,))
        out.add(1, (), s)
        return out.build()
    s1, s2, s3 = s
    out.add(1, s)
    out.add(1, (s2, s3), (s1,))
    out.add(1, (s3,), (s1, s2))
    out.add(1, (), s)
    for k1, k2 in _pairs(s1 + s2):
        out.add(fourier_coefficient(s1, s2, k1), stuffle((s3,), (k1,)), (k2,))
        out.add(fourier_coefficient(s1, s2, k2), (k2,), (k1, s3))
    for k1, k2 in _pairs(s2 + s3):
        out.add(fourier_coefficient(s2, s3, k2), (k2,), (s1, k1))
    for k1 in range(2, k - 3):
        for k2, k3 in _pairs(k - k1):
            c = (-1) ** (s2 + s3) * comb(k2 - 1, s2 - 1) * comb(k3 - 1, s3 - 1)
            c += (-1) ** (s1 + s2 + k2 + k3) * comb(k3 - 1, s1 - 1) * comb(k2 - 1, s2 - 1)
            out.add(c, (k3, k2), (k1,))
            c = (-1) ** (s1 + s3 + k2) * comb(k2 - 1, s1 - 1) * comb(k3 - 1, s3 - 1)
            out.add(c, stuffle((k3,), (k2,)), (k1,))
    return out.build()


# -- shuffle regularized multiple Eisenstein series ---------------------------


def g_shuffle(s) -> MESExpansion:
    """G^sh_s: the coproduct of z_s with left legs sent to (-2 pi i)^{|t|} [t]^sh
    and right legs to shuffle regularized zeta values."""
    s = tuple(s)
    if not s or min(s) < 1:
        raise ValueError(f"invalid index {s}")
    if len(s) > 4:
        raise ValueError("G^sh needs shuffle brackets, available up to length 4")
    terms: dict = defaultdict(Fraction)
    for (left, right), c in goncharov_coproduct(s).items():
        zeta = reg_at_zero(shuffle_regularize(right)) if right else LinComb.word(())
        bracket = shuffle_bracket(left)
        p = sum(left)
        for z, d in zeta.items():
            for b, e in bracket.items():
                terms[(z, b, p)] += c * d * e
    return MESExpansion(sum(s), terms)
