"""Multiple Eisenstein series as ordered lattice sums, and G^{*,M}.

The lattice sum runs over lambda = a tau + b in the box 0 <= a <= N, |b| <= N
restricted to the positive half P (a > 0, or a = 0 and b > 0).  Sorting the
box lexicographically in (a, b) realizes the order lambda_1 > lambda_2
(lambda_1 - lambda_2 in P), so nested cumulative sums give the truncated
series in one pass.  The box truncation error expands in powers of 1/N and
Richardson extrapolation over N = N_0 2^j removes it.  This runs in numpy
double precision.

G^{*,M} sums multitangents over M > m_1 > ... > m_k > 0 and converges to G
exponentially fast in M.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import mpmath
import numpy as np

from .multitangent import monotangent, multitangent, multitangent_reduce_len2
from .mzv import mzv_numeric, zeta_combination

__all__ = ["LatticeValue", "g_star_M", "mes_lattice", "star_F"]


class LatticeValue(NamedTuple):
    value: complex
    tail_estimate: float
    cutoffs: tuple[int, ...]
    partials: tuple[complex, ...]


def _box_sum(s: tuple, tau: complex, n_max: int) -> complex:
    a = np.arange(0, n_max + 1)
    b = np.arange(-n_max, n_max + 1)
    A, B = np.meshgrid(a, b, indexing="ij")
    A, B = A.ravel(), B.ravel()
    keep = (A > 0) | ((A == 0) & (B > 0))
    A, B = A[keep], B[keep]
    perm = np.lexsort((B, A))
    lam = (A * tau + B)[perm]
    cur = lam ** (-s[-1])
    for e in reversed(s[:-1]):
        below = np.concatenate(([0], np.cumsum(cur)[:-1]))
        cur = lam ** (-e) * below
    return complex(cur.sum())


def mes_lattice(s, tau, cutoff: int = 1600, levels: int = 7) -> LatticeValue:
    """G_s(tau) for s_1 >= 3, s_i >= 2, extrapolated from boxes up to cutoff."""
    s = tuple(s)
    if not s:
        raise ValueError("empty index")
    if s[0] < 3 or min(s) < 2:
        raise ValueError(f"lattice sum needs s_1 >= 3 and s_i >= 2, got {s}")
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    levels = max(1, min(levels, int(math.log2(cutoff / 12)) + 1))
    cutoffs = tuple(cutoff >> (levels - 1 - j) for j in range(levels))
    partials = tuple(_box_sum(s, tau, n) for n in cutoffs)
    # table[m] eliminates the N^{-1} .. N^{-m} error terms
    table = [list(partials)]
    for m in range(1, levels):
        f = 2.0**m
        prev = table[-1]
        table.append([(f * prev[i + 1] - prev[i]) / (f - 1) for i in range(len(prev) - 1)])
    value = table[-1][0]
    tail = abs(value - table[-2][-1]) if levels > 1 else math.inf
    return LatticeValue(value, tail, cutoffs, partials)


def _psi(block: tuple, x, tol: float):
    if len(block) == 1:
        return monotangent(block[0], x)
    if len(block) == 2:
        red = multitangent_reduce_len2(*block)
        return sum(zeta_combination(c, tol) * monotangent(h, x) for h, c in red.items())
    return multitangent(block, x, tol)


def _blocks(w: tuple):
    """All ways to cut w into non-empty consecutive blocks."""
    n = len(w)
    for mask in range(1 << (n - 1)):
        out, start = [], 0
        for i in range(1, n):
            if mask >> (i - 1) & 1:
                out.append(w[start:i])
                start = i
        out.append(w[start:])
        yield out


def star_F(w, M: int, tau, tol: float = 1e-15):
    """F_w(M): sum over blocks w = w_1..w_k and M > m_1 > ... > m_k > 0 of
    prod Psi_{w_i}(m_i tau)."""
    w = tuple(w)
    if not w:
        return mpmath.mpc(1)
    if min(w) < 2:
        raise ValueError(f"G^(*,M) needs all entries >= 2, got {w}")
    dps = max(20, int(-math.log10(tol)) + 10)
    with mpmath.workdps(dps):
        tau = mpmath.mpc(tau)
        cache: dict = {}

        def psi(block, m):
            key = (block, m)
            if key not in cache:
                cache[key] = _psi(block, m * tau, tol)
            return cache[key]

        total = mpmath.mpc(0)
        for blocks in _blocks(w):
            k = len(blocks)
            # acc[j]: sum over m >= m_j > ... > m_k > 0 of the block products
            acc = [mpmath.mpc(0)] * k + [mpmath.mpc(1)]
            for m in range(1, M):
                new = list(acc)
                for j in range(k - 1, -1, -1):
                    new[j] = acc[j] + psi(blocks[j], m) * acc[j + 1]
                acc = new
            total += acc[0]
        return +total


def g_star_M(s, M: int, tau, tol: float = 1e-15):
    """G^{*,M}_s(tau) = sum_{uv = s} F_u(M) zeta(v)."""
    s = tuple(s)
    if not s or min(s) < 2:
        raise ValueError(f"G^(*,M) needs a non-empty index with entries >= 2, got {s}")
    if M < 1:
        raise ValueError("M must be a positive integer")
    dps = max(20, int(-math.log10(tol)) + 10)
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        for i in range(len(s) + 1):
            total += star_F(s[:i], M, tau, tol) * mzv_numeric(s[i:], tol)
        return +total
