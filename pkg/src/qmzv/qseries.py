"""Truncated power series in q with rational coefficients.

A QSeries knows its coefficients of q^0..q^N and nothing beyond; every
operation truncates to the smallest order among its operands so that no
coefficient is ever invented.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import NamedTuple

import mpmath

__all__ = [
    "QSeries",
    "SeriesValue",
    "delta_series",
    "qs_d",
    "qs_eval",
    "qs_mul",
]


def _scaled(coeffs) -> tuple[list[int], int]:
    """Clear denominators: coeffs == ints / den."""
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    # skip leading zeros, which brackets have plenty of
    ia = [(i, x) for i, x in enumerate(a[: n + 1]) if x]
    jb = [(j, y) for j, y in enumerate(b[: n + 1]) if y]
    for i, x in ia:
        lim = n - i
        for j, y in jb:
            if j > lim:
                break
            out[i + j] += x * y
    return out


class QSeries:
    """sum_{n<=order} coeffs[n] q^n, immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if len(cs) < order + 1:
                cs.extend([Fraction(0)] * (order + 1 - len(cs)))
            del cs[order + 1 :]
        if not cs:
            raise ValueError("QSeries needs at least the constant coefficient")
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c, order: int) -> QSeries:
        return cls([c], order)

    @classmethod
    def from_ints(cls, ints, den: int = 1) -> QSeries:
        return cls(Fraction(x, den) for x in ints)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise IndexError(f"coefficient q^{n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1])

    def _coerce(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return other
        return QSeries.constant(other, self.order)

    def __add__(self, other) -> QSeries:
        other = self._coerce(other)
        n = min(self.order, other.order)
        return QSeries(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries(-a for a in self.coeffs)

    def __sub__(self, other) -> QSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def __mul__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        c = Fraction(other)
        return QSeries(c * a for a in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, c) -> QSeries:
        c = Fraction(c)
        return QSeries(a / c for a in self.coeffs)

    def __pow__(self, e: int) -> QSeries:
        out = QSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        # equality only makes sense up to the common truncation order
        if not isinstance(other, QSeries):
            if isinstance(other, (int, Fraction)):
                other = QSeries.constant(other, self.order)
            else:
                return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def d(self) -> QSeries:
        return qs_d(self)

    def __repr__(self) -> str:
        return f"QSeries({self.format()}, order={self.order})"

    def format(self, var: str = "q") -> str:
        """Human-readable text like 'q + 3q^2 - 1/2q^3'."""
        parts = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if n == 0:
                body = str(a)
            else:
                mono = var if n == 1 else f"{var}^{n}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> QSeries:
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = [Fraction(c) for c in data["coeffs"]]
        if len(coeffs) != data["order"] + 1:
            raise ValueError("QSeries JSON: coeffs length does not match order")
        return cls(coeffs)


def qs_mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product truncated to min(order f, order g)."""
    n = min(f.order, g.order)
    a, da = _scaled(f.coeffs[: n + 1])
    b, db = _scaled(g.coeffs[: n + 1])
    return QSeries.from_ints(_convolve(a, b, n), da * db)


def qs_d(f: QSeries) -> QSeries:
    """d = q d/dq, i.e. a_n -> n a_n."""
    return QSeries(n * c for n, c in enumerate(f.coeffs))


class SeriesValue(NamedTuple):
    value: mpmath.mpc
    tail_bound: mpmath.mpf
    # False when the last coefficients are still growing in modulus, in
    # which case the geometric tail bound is only a heuristic
    tail_reliable: bool


def qs_eval(f: QSeries, q0, precision: int = 30) -> SeriesValue:
    """Sum the stored coefficients at q0 (|q0| < 1) with a geometric tail estimate."""
    with mpmath.workdps(precision + 10):
        q0 = mpmath.mpmathify(q0)
        aq = abs(q0)
        if aq >= 1:
            raise ValueError(f"qs_eval needs |q0| < 1, got {mpmath.nstr(aq, 8)}")
        acc = mpmath.mpf(0)
        for c in reversed(f.coeffs):
            acc = acc * q0 + mpmath.mpf(c.numerator) / c.denominator
        n = f.order
        last = abs(mpmath.mpf(f.coeffs[n].numerator) / f.coeffs[n].denominator)
        tail = last * aq ** (n + 1) / (1 - aq)
        k = min(5, n)
        tail_terms = [abs(f.coeffs[m]) * float(aq) ** m for m in range(n - k, n + 1)]
        reliable = all(x >= y for x, y in zip(tail_terms, tail_terms[1:]))
        if not reliable:
            # fall back to a cruder bound built from the largest recent term
            tail = max(tail, mpmath.mpf(max(tail_terms)) * aq / (1 - aq))
        return SeriesValue(+acc, +tail, reliable)


def _eta_cube(n: int) -> list[int]:
    # prod (1-q^m)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}
    out = [0] * (n + 1)
    k = 0
    while k * (k + 1) // 2 <= n:
        out[k * (k + 1) // 2] += (-1) ** k * (2 * k + 1)
        k += 1
    return out


def delta_series(order: int) -> QSeries:
    """Delta = q prod (1 - q^n)^24 to the given order."""
    if order < 1:
        raise ValueError("delta_series: order must be at least 1")
    n = order - 1
    e3 = _eta_cube(n)
    e6 = _convolve(e3, e3, n)
    e12 = _convolve(e6, e6, n)
    e24 = _convolve(e12, e12, n)
    return QSeries.from_ints([0] + e24)
