"""Monotangent and multitangent functions.

Psi_{s_1..s_l}(x) = sum over integers n_1 > ... > n_l of prod (x + n_i)^{-s_i}.

Length one uses the Hurwitz zeta function (and pi cot(pi x) for Psi_1).  For
longer indices the sum is truncated symmetrically to |n_i| <= N; the
truncation error is a power series in 1/N, which Richardson extrapolation
over N = N_0 2^j removes.
"""

from __future__ import annotations

import math
from math import comb

import mpmath

from ..words import LinComb

__all__ = ["monotangent", "multitangent", "multitangent_reduce_len2"]


def _dps(tol: float) -> int:
    return max(20, int(-math.log10(tol)) + 10)


def monotangent(k: int, x):
    """Psi_k(x) = sum_{n in Z} (x + n)^{-k}; Psi_1 is the principal value pi cot(pi x)."""
    x = mpmath.mpc(x)
    if k < 1:
        raise ValueError(f"monotangent order must be positive, got {k}")
    if k == 1:
        return mpmath.pi * mpmath.cot(mpmath.pi * x)
    # Hurwitz zeta wants Re > 0 on both halves; Psi_k is 1-periodic
    x = x - mpmath.floor(x.real)
    return mpmath.zeta(k, x) + (-1) ** k * mpmath.zeta(k, 1 - x)


def _truncated(s: tuple, x, n_max: int):
    """sum over n_max >= n_1 > ... > n_l >= -n_max."""
    l = len(s)
    # acc[j]: sum over n_1 > ... > n_j, all above the current n
    acc = [mpmath.mpc(1)] + [mpmath.mpc(0)] * l
    for n in range(n_max, -n_max - 1, -1):
        t = x + n
        for j in range(l, 0, -1):
            acc[j] += acc[j - 1] * t ** (-s[j - 1])
    return acc[l]


def _richardson(s: tuple, x, tol: float, n0: int = 16, max_levels: int = 10):
    """Extrapolate N -> oo over N = n0 2^j; returns (value, error estimate)."""
    rows: list[list] = []
    best, err = None, math.inf
    for j in range(max_levels):
        row = [_truncated(s, x, n0 * 2**j)]
        for m, prev in enumerate(rows[-1] if rows else [], start=1):
            f = 2**m
            row.append((f * row[m - 1] - prev) / (f - 1))
        if rows:
            e = float(abs(row[-1] - rows[-1][-1]))
            if e < err:
                best, err = row[-1], e
            if e < tol:
                return row[-1], e
        rows.append(row)
    return best, err


def multitangent(s, x, tol: float = 1e-12):
    """Psi_s(x) for x in the upper half plane."""
    s = tuple(s)
    if not s:
        return mpmath.mpc(1)
    x = mpmath.mpc(x)
    if x.imag <= 0:
        raise ValueError("multitangent needs Im(x) > 0")
    if len(s) == 1:
        with mpmath.workdps(_dps(tol)):
            return +monotangent(s[0], x)
    if s[0] < 2 or s[-1] < 2 or min(s) < 1:
        raise ValueError(f"Psi{s} needs regularization (first and last entries >= 2)")
    with mpmath.workdps(_dps(tol)):
        # shift to 0 <= Re x < 1 so the symmetric window stays centred
        x = x - mpmath.floor(x.real)
        value, err = _richardson(s, x, tol)
        if err > tol:
            raise ArithmeticError(f"Psi{s}({x}) not converged: error {err:.2e} > tol {tol:.2e}")
        return +value


def multitangent_reduce_len2(s1: int, s2: int) -> dict[int, LinComb]:
    """Psi_{s1,s2} = sum_h c_h Psi_h with c_h a combination of zeta values.

    Partial fractions of 1/((x+m_1)^{s1}(x+m_2)^{s2}) in x; summing over
    m_1 > m_2 turns each coefficient into zeta(s1+s2-h).  The h = 1 terms
    telescope to zero.
    """
    if s1 < 2 or s2 < 2:
        raise ValueError("length-2 reduction needs s1, s2 >= 2")
    out: dict[int, LinComb] = {}
    for h in range(1, s1 + s2 - 1):
        c = 0
        if h <= s1:
            c += (-1) ** s2 * comb(s1 + s2 - h - 1, s1 - h)
        if h <= s2:
            c += (-1) ** (s2 - h) * comb(s1 + s2 - h - 1, s2 - h)
        if h == 1:
            assert c == 0, "Psi_1 coefficient must telescope away"
        elif c:
            out[h] = LinComb.word((s1 + s2 - h,), c)
    return out
