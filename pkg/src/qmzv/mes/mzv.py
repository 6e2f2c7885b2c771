"""Numerical multiple zeta values.

zeta(w) for an admissible word is an iterated integral from 0 to 1.  Cutting
the path at 1/2 writes it as

    zeta(a_1..a_n) = sum_j I_0^{1/2}(dual(a_1..a_j)) * I_0^{1/2}(a_{j+1}..a_n)

where dual reverses a word and swaps 0 <-> 1 (t -> 1 - t).  Both factors are
multiple polylogarithms at 1/2, i.e. nested sums converging like 2^{-n}.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath

from ..iterint import reg_at_zero, shuffle_regularize, stuffle_regularize
from ..words import LinComb

__all__ = ["mzv_numeric", "mzv_regularized", "zeta_combination"]


def _blocks(letters) -> tuple[int, ...]:
    """0/1 word ending in 1 -> exponents m of Li_m."""
    s, run = [], 0
    for a in letters:
        if a == 0:
            run += 1
        else:
            s.append(run + 1)
            run = 0
    return tuple(s)


def _li_half(m: tuple[int, ...], terms: int):
    """sum_{n_1 > .. > n_k > 0} 2^{-n_1} / prod n_i^{m_i}, truncated."""
    if not m:
        return mpmath.mpf(1)
    k = len(m)
    # innermost first: inner[n] = sum over the inner indices below n
    cur = [mpmath.mpf(0)] * (terms + 1)
    for n in range(1, terms + 1):
        cur[n] = mpmath.mpf(n) ** (-m[k - 1])
    for j in range(k - 2, -1, -1):
        nxt = [mpmath.mpf(0)] * (terms + 1)
        running = mpmath.mpf(0)
        for n in range(1, terms + 1):
            nxt[n] = running * mpmath.mpf(n) ** (-m[j])
            running += cur[n]
        cur = nxt
    total = mpmath.mpf(0)
    half = mpmath.mpf(1) / 2
    p = mpmath.mpf(1)
    for n in range(1, terms + 1):
        p *= half
        total += p * cur[n]
    return total


@lru_cache(maxsize=4096)
def _mzv(s: tuple[int, ...], dps: int):
    with mpmath.workdps(dps + 10):
        letters = []
        for x in s:
            letters.extend([0] * (x - 1))
            letters.append(1)
        n = len(letters)
        # 2^{-T} T^{depth} below 10^{-dps-10}
        terms = int((dps + 12) * math.log2(10)) + 8 * len(s) + 20
        total = mpmath.mpf(0)
        for j in range(n + 1):
            head = letters[:j]
            dual = [1 - a for a in reversed(head)]
            left = _li_half(_blocks(dual), terms) if dual else mpmath.mpf(1)
            right = _li_half(_blocks(letters[j:]), terms) if j < n else mpmath.mpf(1)
            total += left * right
        return +total


def mzv_numeric(s, tol: float = 1e-20):
    """zeta(s_1, ..., s_l) for admissible s to absolute accuracy tol."""
    s = tuple(s)
    if not s:
        return mpmath.mpf(1)
    if s[0] < 2 or any(x < 1 for x in s):
        raise ValueError(f"zeta{s} is not admissible; regularize first")
    dps = max(15, int(-math.log10(tol)) + 5)
    return _mzv(s, dps)


def zeta_combination(lc: LinComb, tol: float = 1e-20):
    """Evaluate a combination of admissible words (the empty word is 1)."""
    acc = mpmath.mpf(0)
    for w, c in lc.items():
        acc += mpmath.mpf(c.numerator) / c.denominator * mzv_numeric(w, tol)
    return acc


def mzv_regularized(s, kind: str = "shuffle", tol: float = 1e-20):
    """Shuffle (default) or stuffle regularized zeta at T = 0."""
    if kind == "shuffle":
        poly = shuffle_regularize(s)
    elif kind == "stuffle":
        poly = stuffle_regularize(s)
    else:
        raise ValueError(f"unknown regularization {kind!r}")
    return zeta_combination(reg_at_zero(poly), tol)
