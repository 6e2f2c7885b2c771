"""Exact coefficient tables: Bernoulli numbers, Eulerian polynomials,
the lambda coefficients of the bracket product, and binomials.

Everything here is rational and memoized; nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

__all__ = [
    "Polynomial",
    "bernoulli",
    "binomial",
    "eulerian_number",
    "eulerian_poly",
    "lambda_coeff",
]


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial: negative upper argument {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


# B_0..B_k are produced together, so keep one growing table instead of
# caching each k separately.
_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """B_k from X/(e^X - 1), so B_1 = -1/2."""
    if k < 0:
        raise ValueError("bernoulli: k must be non-negative")
    table = _BERNOULLI
    while len(table) <= k:
        m = len(table)
        # sum_{j=0}^{m} C(m+1, j) B_j = 0
        acc = sum(comb(m + 1, j) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return table[k]


class Polynomial:
    """Dense univariate polynomial over Q, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        # -1 marks the zero polynomial
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        out = Polynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c) -> Polynomial:
        return Polynomial(c * a for a in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"


def eulerian_number(s: int, n: int) -> int:
    """A_{s,n} = sum_{i<=n} (-1)^i C(s+1, i) (n+1-i)^s."""
    return sum((-1) ** i * comb(s + 1, i) * (n + 1 - i) ** s for i in range(n + 1))


@lru_cache(maxsize=None)
def eulerian_poly(s: int) -> Polynomial:
    """P_s(X) with t P_{s-1}(t)/(1-t)^s = sum_n n^{s-1} t^n."""
    if s < 0:
        raise ValueError("eulerian_poly: s must be non-negative")
    if s == 0:
        return Polynomial([1])
    return Polynomial(eulerian_number(s, n) for n in range(s))


@lru_cache(maxsize=None)
def lambda_coeff(a: int, b: int, j: int) -> Fraction:
    """The correction coefficient of z_j in z_a <> z_b for the bracket product."""
    if not 1 <= j <= a:
        raise ValueError(f"lambda_coeff: j={j} outside [1, {a}]")
    if b < 1:
        raise ValueError("lambda_coeff: b must be positive")
    m = a + b - j
    return (-1) ** (b - 1) * comb(m - 1, a - j) * bernoulli(m) / factorial(m)
