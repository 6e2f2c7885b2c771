"""The limit map Z_k(f) = lim_{q -> 1} (1 - q)^k f(q).

Samples are taken at q = 1 - h with h = 2^{-j}.  A combination of
bi-brackets is evaluated directly in double precision from its nested-sum
form: each letter (s, r) contributes u^r/r! t P_{s-1}(t) / ((s-1)! (1-t)^s)
at t = q^u, and the sum over u_1 > ... > u_l is a chain of cumulative sums,
cut where t^u is negligible.  The samples are extrapolated to h = 0 by a
least-squares fit in h^p log^m h, since entries with s = 1 bring logarithms.
A sequence whose steps do not shrink is reported as divergent.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from ..exact import eulerian_poly
from ..qseries import QSeries
from ..words import LinComb

__all__ = ["ZkResult", "zk_limit", "zk_samples"]

_SPAN = 60.0  # keep u up to SPAN / h, where t^u ~ e^{-SPAN}


class ZkResult(NamedTuple):
    value: float
    error: float
    diverges: bool
    hs: tuple[float, ...]
    samples: tuple[float, ...]

    def ok(self, tol: float) -> bool:
        return not self.diverges and self.error <= tol


def _letter(s: int, r: int, u: np.ndarray, log_q: float) -> np.ndarray:
    t = np.exp(u * log_q)
    one_minus_t = -np.expm1(u * log_q)
    p = np.polynomial.polynomial.polyval(t, [float(c) for c in eulerian_poly(s - 1).coeffs])
    return u**r / math.factorial(r) * t * p / (math.factorial(s - 1) * one_minus_t**s)


def _word_value(w, h: float) -> float:
    """The bi-bracket w at q = 1 - h, in floating point."""
    if not w:
        return 1.0
    log_q = math.log1p(-h)
    u = np.arange(1, int(_SPAN / h) + 10, dtype=float)
    letters = [a if isinstance(a, tuple) else (a, 0) for a in w]
    cur = _letter(*letters[-1], u, log_q)
    for s, r in reversed(letters[:-1]):
        below = np.concatenate(([0.0], np.cumsum(cur)[:-1]))
        cur = _letter(s, r, u, log_q) * below
    return float(cur.sum())


def _series_value(f: QSeries, h: float) -> float:
    q = 1.0 - h
    acc = 0.0
    for c in reversed(f.coeffs):
        acc = acc * q + float(c)
    return acc


def _log_power(f) -> int:
    """Highest power of log h to allow in the fit."""
    if isinstance(f, LinComb):
        lows = [sum(1 for a in w if (a[0] - a[1] if isinstance(a, tuple) else a) <= 1) for w in f.words()]
        return max(lows, default=0)
    return 2


def _sampler(f) -> tuple[Callable[[float], float], int]:
    """Returns (h -> f(1 - h), largest usable j)."""
    if isinstance(f, (tuple, list)):
        f = LinComb.word(tuple(f))
    if isinstance(f, LinComb):
        terms = [(w, float(c)) for w, c in f.items()]
        return (lambda h: sum(c * _word_value(w, h) for w, c in terms)), 16
    if isinstance(f, QSeries):
        # the truncation q^N must be negligible: N h >= SPAN
        return (lambda h: _series_value(f, h)), int(math.log2(f.order / _SPAN))
    if callable(f):
        return (lambda h: float(f(1.0 - h))), 16
    raise TypeError(f"cannot take Z_k of {type(f).__name__}")


def zk_samples(f, k: int, js) -> tuple[np.ndarray, np.ndarray]:
    """(h_j, (1 - q)^k f(q)) at q = 1 - 2^{-j}."""
    sample, _ = _sampler(f)
    hs = np.array([2.0**-j for j in js])
    return hs, np.array([h**k * sample(h) for h in hs])


def _fit(hs: np.ndarray, ys: np.ndarray, p_max: int, l_max: int) -> float:
    cols = [np.ones_like(hs)]
    for p in range(1, p_max + 1):
        for m in range(l_max + 1):
            cols.append(hs**p * np.log(hs) ** m)
    a = np.array(cols).T
    return float(np.linalg.lstsq(a, ys, rcond=None)[0][0])


def zk_limit(f, k: int, tol: float = 1e-4, j_min: int = 3, j_max: int | None = None) -> ZkResult:
    """Z_k(f) for f a LinComb of (bi-)bracket words, a QSeries or a callable q -> value."""
    if k < 0:
        raise ValueError("k must be non-negative")
    sample, j_top = _sampler(f)
    j_max = j_top if j_max is None else min(j_max, j_top)
    if j_max - j_min < 5:
        raise ValueError(
            f"too few grid points: need q = 1 - 2^-j up to j >= {j_min + 5}; "
            f"a q-series needs order >= {int(_SPAN) * 2 ** (j_min + 5)}"
        )
    js = list(range(j_min, j_max + 1))
    hs = np.array([2.0**-j for j in js])
    ys = np.array([h**k * sample(h) for h in hs])

    steps = np.abs(np.diff(ys))
    ratios = steps[1:] / np.maximum(steps[:-1], 1e-300)
    tail = ratios[-4:]
    diverges = bool(steps[-1] > tol and np.all(tail > 0.85))
    if diverges:
        return ZkResult(math.inf, math.inf, True, tuple(hs), tuple(ys))

    l_max = _log_power(f)
    # drop the coarsest points, where the expansion in h is poor
    h_fit, y_fit = hs[4:], ys[4:]
    p_max = max(1, min(4, (len(h_fit) - 3) // (l_max + 1)))
    value = _fit(h_fit, y_fit, p_max, l_max)
    # error: the same fit without its coarsest point
    error = abs(value - _fit(h_fit[1:], y_fit[1:], p_max, l_max))
    return ZkResult(value, error, False, tuple(hs), tuple(ys))
