"""Exact linear relations among q-series, dimension series and q-analogues.

Relations are kernel vectors of the coefficient matrix of a family of
truncated q-series, found by fraction-free (Bareiss) elimination and
returned in reduced echelon form.  Also here: the Broadhurst-Kreimer
generating series, and conversions of other q-analogues of multiple zeta
values (the zeta_q model, Okounkov's model, any Q-family) into brackets.
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, lcm
from typing import Callable, NamedTuple

from .brackets import DEFAULT_ORDER, format_word, parse_biindex
from .exact import Polynomial, eulerian_poly
from .identities import DELTA_BRACKETS, DELTA_SCALE
from .qseries import QSeries, delta_series
from .words import LinComb, compositions, derivative, eval_hom, weight

__all__ = [
    "BKSeries",
    "RelationSet",
    "SeriesFamily",
    "bk_dim_series",
    "express_in_brackets",
    "find_relations",
    "kernel_membership_suite",
    "okounkov_Q",
    "okounkov_to_brackets",
    "qana_basis_change",
    "qanalogue_series",
    "qanalogue_to_brackets",
    "rational_kernel",
    "zq_convert",
    "zq_series",
]


# -- exact linear algebra ---------------------------------------------------


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (nonzero rows, pivot columns)."""
    a = [r[:] for r in rows]
    m = len(a)
    prev, r, pivots = 1, 0, []
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            x = a[i][c]
            row = a[i]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - x * a[r][j]) // prev
            row[c] = 0
        # rows above r keep their entries; rows below are scaled consistently
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q (used on small matrices)."""
    a = [list(r) for r in rows]
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv if x else x for x in a[r]]
        support = [j for j, y in enumerate(a[r]) if y]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f, row = a[i][c], a[i]
                for j in support:
                    row[j] -= f * a[r][j]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _integer_rows(mat) -> list[list[int]]:
    out = []
    for row in mat:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def rational_kernel(mat) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel of a rational matrix, in reduced echelon form
    (each vector starts with a 1)."""
    mat = [list(r) for r in mat]
    if not mat:
        return []
    n = len(mat[0])
    echelon, pivots = _bareiss(_integer_rows(mat), n)
    # back substitution on the (small) echelon form
    red, pivots = _rref([[Fraction(x) for x in row] for row in echelon], n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    canon, _ = _rref(basis, n)
    return [tuple(v) for v in canon]


# -- relation finder ------------------------------------------------------


@dataclass
class SeriesFamily:
    """Named q-series at a common order, optionally recomputable at other orders."""

    labels: list[str]
    series: list[QSeries]
    weights: list[int] | None = None
    recompute: Callable[[int], list[QSeries]] | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        if len(self.labels) != len(self.series):
            raise ValueError("one label per series")
        orders = {f.order for f in self.series}
        if len(orders) > 1:
            raise ValueError(f"series have different orders {sorted(orders)}")

    @property
    def order(self) -> int:
        return self.series[0].order

    @classmethod
    def from_items(cls, items, order: int = DEFAULT_ORDER) -> SeriesFamily:
        """items: (label, x) with x a word, a LinComb of words, or a callable order -> QSeries."""
        items = list(items)

        def build(n: int) -> list[QSeries]:
            out = []
            for _, x in items:
                if callable(x):
                    out.append(x(n))
                else:
                    out.append(eval_hom(x if isinstance(x, LinComb) else LinComb.word(tuple(x)), n))
            return out

        weights = []
        for _, x in items:
            if isinstance(x, LinComb):
                weights.append(max((weight(w) for w in x.words()), default=0))
            elif callable(x):
                weights.append(getattr(x, "weight", 0))
            else:
                weights.append(weight(tuple(x)))
        return cls([str(l) for l, _ in items], build(order), weights, build)


class RelationSet(NamedTuple):
    labels: list[str]
    basis: list[tuple[Fraction, ...]]
    verified_to_order: int
    stable: bool

    def __len__(self) -> int:
        return len(self.basis)

    @staticmethod
    def cleared(v) -> tuple[int, ...]:
        """Integer multiple with coprime entries and a positive first entry."""
        den = lcm(*(x.denominator for x in v))
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = _gcd(g, x)
        return tuple(x // g for x in ints) if g else tuple(ints)

    def contains(self, v) -> bool:
        """Is v in the span of the relations?"""
        v = [Fraction(x) for x in v]
        rows = [list(b) for b in self.basis]
        rank = len(_rref(rows, len(self.labels))[0])
        return len(_rref(rows + [v], len(self.labels))[0]) == rank

    def format(self) -> str:
        lines = []
        for v in self.basis:
            terms = [f"{c}*{l}" for c, l in zip(v, self.labels) if c]
            lines.append(" + ".join(terms) + " = 0")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "verified_to_order": self.verified_to_order,
            "stable": self.stable,
            "relations": [
                [{"label": l, "coeff": f"{c.numerator}/{c.denominator}"} for c, l in zip(v, self.labels) if c]
                for v in self.basis
            ],
        }

    @classmethod
    def from_json(cls, data: dict, labels: list[str]) -> RelationSet:
        basis = []
        for rel in data["relations"]:
            v = [Fraction(0)] * len(labels)
            for e in rel:
                v[labels.index(e["label"])] = Fraction(e["coeff"])
            basis.append(tuple(v))
        return cls(list(labels), basis, int(data["verified_to_order"]), bool(data.get("stable", True)))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _kernel_of(series: list[QSeries]) -> list[tuple[Fraction, ...]]:
    n = series[0].order
    mat = [[f[i] for f in series] for i in range(n + 1)]
    return rational_kernel(mat)


def _vanishes(v, series: list[QSeries]) -> bool:
    terms = [(c, f.coeffs) for c, f in zip(v, series) if c]
    return all(sum(c * f[i] for c, f in terms) == 0 for i in range(series[0].order + 1))


def find_relations(fam: SeriesFamily, margin: int = 10) -> RelationSet:
    """All Q-linear relations of the family to its order; rechecked at order + margin."""
    n = fam.order
    if fam.weights:
        need = 2 * max(fam.weights) + 20
        if n < need:
            warnings.warn(f"order {n} is below the safety margin {need}; relations may be spurious", stacklevel=2)
    if n + 1 < len(fam.series):
        warnings.warn(f"order {n} gives fewer coefficients than series; kernel is surely too large", stacklevel=2)
    basis = _kernel_of(fam.series)
    for v in basis:
        if not _vanishes(v, fam.series):
            raise ArithmeticError("kernel vector fails direct verification")
    if fam.recompute is None:
        return RelationSet(fam.labels, basis, n, True)
    longer = fam.recompute(n + margin)
    basis2 = _kernel_of(longer)
    stable = basis2 == basis
    if not stable:
        warnings.warn(f"relations found at order {n} do not all persist at order {n + margin}", stacklevel=2)
    for v in basis2:
        if not _vanishes(v, longer):
            raise ArithmeticError("kernel vector fails direct verification")
    return RelationSet(fam.labels, basis2, n + margin, stable)


def brackets_up_to(max_weight: int, max_length: int | None = None) -> list[tuple[int, ...]]:
    out = []
    for k in range(1, max_weight + 1):
        for l in range(1, min(k, max_length or k) + 1):
            out.extend(tuple(x + 1 for x in c) for c in compositions(k - l, l))
    return out


def express_in_brackets(target, max_weight: int, max_length: int | None = None, order: int = 80):
    """A relation writing the bi-bracket target through brackets, or None."""
    target = tuple(target)
    words = [w for w in brackets_up_to(max_weight, max_length)]
    items = [(format_word(target), target)] + [(f"[{format_word(w)}]", w) for w in words if w != target]
    fam = SeriesFamily.from_items(items, order)
    rel = find_relations(fam)
    for v in rel.basis:
        if v[0]:
            return LinComb({w: -c / v[0] for w, c in zip([x for _, x in items[1:]], v[1:]) if c})
    return None


# -- Broadhurst-Kreimer ---------------------------------------------------


class BKSeries(NamedTuple):
    E: list[int]
    O: list[int]
    S: list[int]
    table: list[list[int]]  # table[l][k]: coefficient of X^k Y^l


def _ps_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
    return out


def bk_dim_series(maxk: int, max_length: int = 4) -> BKSeries:
    """Coefficients of E, O, S and of (1 + E Y)/(1 - O Y + S Y^2 - S Y^4) to X^maxk, Y^max_length."""
    if maxk < 0 or maxk > 40:
        raise ValueError("maxk must lie in 0..40")
    n = maxk
    E = [1 if k >= 2 and k % 2 == 0 else 0 for k in range(n + 1)]
    O = [1 if k >= 3 and k % 2 == 1 else 0 for k in range(n + 1)]
    S = [sum(1 for a in range(k // 4 + 1) if (k - 12 - 4 * a) >= 0 and (k - 12 - 4 * a) % 6 == 0)
         for k in range(n + 1)]
    zero = [0] * (n + 1)
    one = [1] + [0] * n
    num = [one, E] + [zero] * max(0, max_length - 1)
    den = [one, [-x for x in O], S, zero, [-x for x in S]] + [zero] * max(0, max_length - 4)
    table: list[list[int]] = []
    for l in range(max_length + 1):
        acc = list(num[l])
        for i in range(1, l + 1):
            acc = [x - y for x, y in zip(acc, _ps_mul(den[i], table[l - i], n))]
        table.append(acc)
    return BKSeries(E, O, S, table)


# -- q-analogues ------------------------------------------------------------


def qana_basis_change(i: int, k: int) -> dict[int, Fraction]:
    """b^k_{i,j} for j = 1..k-1: sum_j b^k_{i,j} t^j / j! = C(t + k - 1 - i, k - 1)."""
    if k < 2 or not 1 <= i <= k - 1:
        raise ValueError(f"need k >= 2 and 1 <= i <= k-1, got i={i}, k={k}")
    poly = Polynomial([1])
    for m in range(k - 1):
        poly = poly * Polynomial([k - 1 - i - m, 1])
    poly = poly.scale(Fraction(1, factorial(k - 1)))
    return {j: poly.coeffs[j] * factorial(j) if j < len(poly.coeffs) else Fraction(0) for j in range(1, k)}


def qE(j: int) -> Polynomial:
    """Q^E_j(t) = t P_{j-1}(t) / (j-1)!, the numerator of the bracket letter j."""
    return (Polynomial([0, 1]) * eulerian_poly(j - 1)).scale(Fraction(1, factorial(j - 1)))


def _letter_in_brackets(poly: Polynomial, s: int) -> dict[int, Fraction]:
    """Q(t)/(1-t)^s = sum_j c_j Q^E_j(t)/(1-t)^j for deg Q <= s-1, Q(0) = 0."""
    coeffs = list(poly.coeffs)
    if coeffs and coeffs[0]:
        raise ValueError("Q(0) must vanish")
    if poly.degree > s - 1:
        raise ValueError(f"deg Q_{s} must be at most {s - 1}")
    out: dict[int, Fraction] = defaultdict(Fraction)
    for i, a in enumerate(coeffs):
        if i == 0 or not a:
            continue
        b = qana_basis_change(i, s)
        for j in range(2, s + 1):
            out[j] += a * b[j - 1]
    return {j: c for j, c in out.items() if c}


def qanalogue_to_brackets(s, Q: Callable[[int], Polynomial]) -> LinComb:
    """Z_Q(s) = sum_{n_1 > .. > n_l} prod Q_{s_j}(q^{n_j})/(1-q^{n_j})^{s_j} as brackets."""
    s = tuple(s)
    if any(x < 2 for x in s):
        raise ValueError("Q-families here are indexed by s >= 2")
    acc = {(): Fraction(1)}
    for x in s:
        letter = _letter_in_brackets(Q(x), x)
        nxt: dict = defaultdict(Fraction)
        for w, c in acc.items():
            for j, d in letter.items():
                nxt[w + (j,)] += c * d
        acc = nxt
    return LinComb(acc)


def okounkov_Q(s: int) -> Polynomial:
    """t^{s/2} for even s, t^{(s-1)/2}(1 + t) for odd s."""
    if s % 2 == 0:
        return Polynomial([0] * (s // 2) + [1])
    return Polynomial([0] * ((s - 1) // 2) + [1, 1])


def okounkov_to_brackets(s) -> LinComb:
    return qanalogue_to_brackets(s, okounkov_Q)


def _inv_power(n: int, s: int, order: int) -> list[int]:
    """1/(1 - q^n)^s."""
    out = [0] * (order + 1)
    v = 0
    while n * v <= order:
        out[n * v] = comb(v + s - 1, s - 1)
        v += 1
    return out


def _nested_direct(factor: Callable[[int, int], QSeries], l: int, n_max: int, order: int) -> QSeries:
    """sum over n_max >= n_1 > ... > n_l > 0 of prod factor(j, n_j)."""
    zero = QSeries.constant(0, order)
    inner = [zero] * l + [QSeries.constant(1, order)]
    for n in range(1, n_max + 1):
        new = list(inner)
        for j in range(l):
            if inner[j + 1].is_zero():
                continue
            new[j] = inner[j] + factor(j, n) * inner[j + 1]
        inner = new
    return inner[0]


def qanalogue_series(s, Q: Callable[[int], Polynomial], order: int = DEFAULT_ORDER) -> QSeries:
    """Direct summation of Z_Q(s) (the oracle for qanalogue_to_brackets)."""
    s = tuple(s)

    def factor(j: int, n: int) -> QSeries:
        num = [0] * (order + 1)
        for e, c in enumerate(Q(s[j]).coeffs):
            if c and n * e <= order:
                num[n * e] += c
        return QSeries(num) * QSeries(_inv_power(n, s[j], order))

    return _nested_direct(factor, len(s), order, order)


def zq_series(s, order: int = DEFAULT_ORDER) -> QSeries:
    """zeta_q(s) = sum q^{n_1} / prod (1 - q^{n_j})^{s_j}, summed directly."""
    s = tuple(s)

    def factor(j: int, n: int) -> QSeries:
        f = QSeries(_inv_power(n, s[j], order))
        if j == 0:
            f = f * QSeries([0] * n + [1] + [0] * (order - n)) if n <= order else QSeries.constant(0, order)
        return f

    return _nested_direct(factor, len(s), order, order)


class _Poly2(dict):
    """Sparse polynomial in (x, y) with Fraction coefficients."""

    def mul(self, other: _Poly2) -> _Poly2:
        out = _Poly2()
        for (a, b), c in self.items():
            for (e, f), d in other.items():
                out[(a + e, b + f)] = out.get((a + e, b + f), 0) + c * d
        return _Poly2({k: v for k, v in out.items() if v})


def _binom_poly(g: int, lin: dict) -> _Poly2:
    """C(z, g) with z a linear form {(a, b): coeff} in x, y (constant key (0, 0))."""
    out = _Poly2({(0, 0): Fraction(1)})
    for m in range(g):
        factor = dict(lin)
        factor[(0, 0)] = factor.get((0, 0), 0) - m
        out = out.mul(_Poly2({k: Fraction(v) for k, v in factor.items() if v}))
    return _Poly2({k: v / factorial(g) for k, v in out.items()})


def _v_poly(s: int, lead: bool) -> dict[int, Fraction]:
    """Coefficients in v of the t^v weight: C(v+s-2, s-1) if lead (t/(1-t)^s), else C(v+s-1, s-1)."""
    shift = s - 2 if lead else s - 1
    poly = Polynomial([1])
    for m in range(s - 1):
        poly = poly * Polynomial([shift - m, 1])
    poly = poly.scale(Fraction(1, factorial(s - 1)))
    return {a: c for a, c in enumerate(poly.coeffs) if c}


def zq_convert(s) -> LinComb:
    """zeta_q(s) as a combination of bi-brackets.

    Expand each inner 1/(1-t)^s = 1 + sum_{v>0} C(v+s-1, s-1) t^v.  Positions
    taking the 1 are summed freely: a run of g of them between kept positions
    with values N > N' contributes C(N - N' - 1, g), a trailing run
    C(N - 1, g).  These are polynomials in the kept u's, and the v-polynomials
    of the kept positions become the s-part of bi-bracket letters.
    """
    s = tuple(s)
    if not s or min(s) < 1:
        raise ValueError(f"invalid index {s}")
    l = len(s)
    total: dict = defaultdict(Fraction)
    for mask in range(1 << (l - 1)):
        kept = [0] + [j for j in range(1, l) if not mask >> (j - 1) & 1]
        m = len(kept)
        # gap polynomials in u-exponents of the kept positions
        upoly: dict[tuple, Fraction] = {(0,) * m: Fraction(1)}
        for idx in range(m):
            hi = kept[idx]
            lo = kept[idx + 1] if idx + 1 < m else l
            g = lo - hi - 1
            if not g:
                continue
            if idx + 1 < m:
                gap = _binom_poly(g, {(1, 0): 1, (0, 1): -1, (0, 0): -1})
            else:
                gap = _binom_poly(g, {(1, 0): 1, (0, 0): -1})
            nxt: dict = defaultdict(Fraction)
            for e, c in upoly.items():
                for (a, b), d in gap.items():
                    e2 = list(e)
                    e2[idx] += a
                    if idx + 1 < m:
                        e2[idx + 1] += b
                    nxt[tuple(e2)] += c * d
            upoly = {k: v for k, v in nxt.items() if v}
        # v-polynomials of the kept positions
        vpolys = [_v_poly(s[p], p == 0) for p in kept]
        vterms: dict[tuple, Fraction] = {(): Fraction(1)}
        for vp in vpolys:
            vterms = {k + (a,): c * d for k, c in vterms.items() for a, d in vp.items()}
        for ue, c in upoly.items():
            for ve, d in vterms.items():
                word = tuple((a + 1, r) for a, r in zip(ve, ue))
                norm = 1
                for a, r in zip(ve, ue):
                    norm *= factorial(a) * factorial(r)
                total[word] += c * d * norm
    return LinComb(total)


# -- Z_k kernel ---------------------------------------------------------------


def _delta_product(q: float) -> float:
    import numpy as np

    n = np.arange(1, int(80 / (1 - q)) + 10)
    return float(q * np.exp(24 * np.log1p(-(q**n)).sum()))


def kernel_membership_suite(k: int, tol: float = 1e-3) -> list[dict]:
    """Z_k on lower-weight brackets, d-images and weight-k cusp forms."""
    from .mes.mzv import zeta_combination
    from .mes.zk import zk_limit

    if k < 2 or k > 12:
        raise ValueError("kernel suite covers weights 2..12")
    rows = []

    def run(cls: str, label: str, f, expect=0.0):
        r = zk_limit(f, k)
        err = abs(r.value - expect) if not r.diverges else float("inf")
        rows.append(
            {"class": cls, "label": label, "value": r.value, "expected": expect,
             "estimate": r.error, "passed": (not r.diverges) and err <= tol}
        )

    for w in range(max(1, k - 2), k):
        for word in brackets_up_to(w, 2):
            if weight(word) == w:
                run("lower weight", f"[{format_word(word)}]", LinComb.word(word))
    for w in range(1, min(k - 2, 4) + 1):
        for word in brackets_up_to(w, 2):
            if weight(word) == w:
                run("derivative", f"d[{format_word(word)}]", derivative(word))
    if k == 12:
        run("cusp form", "Delta", _delta_product)
        run("cusp form", "Delta as brackets", DELTA_BRACKETS)
        # the weight 12 part of the bracket form of Delta is a relation among zeta values
        top = LinComb({w: c for w, c in DELTA_BRACKETS.items() if len(w) == 2})
        run("cusp form", "168[5,7]+150[7,5]+28[9,3]", top,
            float(zeta_combination(LinComb.word((12,), Fraction(5197, 691)))))
    return rows


def _scaled_delta(n: int) -> QSeries:
    return delta_series(n) * DELTA_SCALE


_scaled_delta.weight = 12


def delta_family(order: int = 60) -> SeriesFamily:
    """The family {-Delta/(2^6 5 691), [5,7], [7,5], [9,3], [2], [4], [6], [8], [12]}."""

    items = [("Delta", _scaled_delta)] + [(f"[{format_word(w)}]", w) for w in
                                  [(5, 7), (7, 5), (9, 3), (2,), (4,), (6,), (8,), (12,)]]
    return SeriesFamily.from_items(items, order)


def parse_family_items(args: list[str]):
    """CLI helper: 'label=word', 'd:word', 'delta' or 'word' arguments -> from_items input."""
    out = []
    for arg in args:
        label, _, text = arg.rpartition("=")
        if text.startswith("d:"):
            w = parse_biindex(text[2:])
            out.append((label or f"d[{text[2:]}]", derivative(w)))
        elif text == "delta":
            out.append((label or "Delta", _scaled_delta))
        else:
            w = parse_biindex(text)
            if all(r == 0 for _, r in w):
                w = tuple(s for s, _ in w)
            out.append((label or f"[{text}]", w))
    return out
