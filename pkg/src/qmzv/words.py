"""Word algebras and the products on them.

Words are tuples of letters.  On the alphabet A_z a letter z_s is the int
s; on the bi-alphabet a letter z_{s,r} is the pair (s, r).  The empty
tuple is the unit.  Linear combinations live in :class:`LinComb`.

The products implemented here:

* ``stuffle``         quasi-shuffle with z_a <> z_b = z_{a+b}
* ``shuffle``         the shuffle of the x/y words with z_s = x^{s-1} y
* ``box_product``     the bracket product, a quasi-shuffle whose diamond
                      carries Bernoulli corrections (bi-alphabet version
                      with binomial factors in r)
* ``second_product``  P(P(u) box P(v)), the partition-dual product
"""

from __future__ import annotations

import json
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, gcd
from typing import Callable

from .brackets import DEFAULT_ORDER, as_biword, bibracket_series, format_word, parse_biindex
from .exact import lambda_coeff
from .qseries import QSeries

__all__ = [
    "LinComb",
    "bibracket_diamond",
    "box_product",
    "bracket_diamond",
    "compositions",
    "derivative",
    "eval_hom",
    "lin_product",
    "partition_involution",
    "plain_words",
    "quasi_shuffle",
    "second_product",
    "shuffle",
    "shuffle_bracket",
    "shuffle_len1",
    "stuffle",
    "stuffle_diamond",
    "weight",
]


def weight(w) -> int:
    """Total weight: sum of s (plus r on the bi-alphabet)."""
    return sum(a[0] + a[1] if isinstance(a, tuple) else a for a in w)


def _letter_key(a):
    return a if isinstance(a, tuple) else (a,)


def word_key(w):
    """Canonical order: by length, then lexicographically on (s, r)."""
    return (len(w), tuple(_letter_key(a) for a in w))


class LinComb:
    """A finite Q-linear combination of hashable basis elements (words)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        d: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                c = Fraction(c)
                if c:
                    d[w] = d.get(w, 0) + c
                    if not d[w]:
                        del d[w]
        self._terms = d

    @classmethod
    def word(cls, w, c=1) -> LinComb:
        return cls({tuple(w): c})

    @classmethod
    def _raw(cls, d: dict) -> LinComb:
        out = cls.__new__(cls)
        out._terms = {w: c for w, c in d.items() if c}
        return out

    @staticmethod
    def sort_key(w):
        return word_key(w)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: self.sort_key(t[0]))

    def words(self):
        return [w for w, _ in self.items()]

    def __iter__(self):
        return iter(self.words())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, w) -> Fraction:
        return self._terms.get(tuple(w) if not isinstance(w, tuple) else w, Fraction(0))

    def __contains__(self, w) -> bool:
        return w in self._terms

    def __add__(self, other: LinComb) -> LinComb:
        d = dict(self._terms)
        for w, c in other._terms.items():
            d[w] = d.get(w, 0) + c
        return type(self)._raw(d)

    def __neg__(self) -> LinComb:
        return type(self)._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: LinComb) -> LinComb:
        return self + (-other)

    def __mul__(self, c) -> LinComb:
        c = Fraction(c)
        return type(self)._raw({w: c * x for w, x in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def map(self, f: Callable) -> LinComb:
        """Linear extension of f: word -> LinComb."""
        acc: dict = defaultdict(Fraction)
        for w, c in self._terms.items():
            for u, x in f(w)._terms.items():
                acc[u] += c * x
        return LinComb._raw(acc)

    def format_term(self, w) -> str:
        return format_word(w)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            parts.append(f"{c}*[{self.format_term(w)}]")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"word": format_word(w), "coeff": f"{c.numerator}/{c.denominator}"}
            for w, c in self.items()
        ]

    @classmethod
    def from_json(cls, data) -> LinComb:
        if isinstance(data, str):
            data = json.loads(data)
        terms = []
        for entry in data:
            text = entry["word"]
            w = parse_biindex(text) if "|" in text else tuple(int(x) for x in text.split(",") if x)
            terms.append((w, Fraction(entry["coeff"])))
        return cls(terms)


# -- quasi-shuffle ----------------------------------------------------------

_QS_CACHE: dict = defaultdict(dict)


def _qsh(w: tuple, v: tuple, diamond, cache: dict) -> dict:
    if not w:
        return {v: Fraction(1)}
    if not v:
        return {w: Fraction(1)}
    key = (w, v)
    hit = cache.get(key)
    if hit is not None:
        return hit
    a, w1 = w[0], w[1:]
    b, v1 = v[0], v[1:]
    res: dict = defaultdict(Fraction)
    for u, c in _qsh(w1, v, diamond, cache).items():
        res[(a,) + u] += c
    for u, c in _qsh(w, v1, diamond, cache).items():
        res[(b,) + u] += c
    if diamond is not None:
        dm = diamond(a, b)
        if dm:
            inner = _qsh(w1, v1, diamond, cache)
            for letter, x in dm.items():
                for u, c in inner.items():
                    res[(letter,) + u] += x * c
    res = {u: c for u, c in res.items() if c}
    cache[key] = res
    return res


def quasi_shuffle(w, v, diamond=None) -> LinComb:
    """aw . bv = a(w . bv) + b(aw . v) + (a <> b)(w . v).

    ``diamond(a, b)`` returns a dict letter -> coefficient (or None for 0).
    """
    return LinComb._raw(_qsh(tuple(w), tuple(v), diamond, _QS_CACHE[diamond]))


@lru_cache(maxsize=None)
def stuffle_diamond(a: int, b: int) -> dict:
    return {a + b: Fraction(1)}


@lru_cache(maxsize=None)
def bracket_diamond(a: int, b: int) -> dict:
    out = defaultdict(Fraction)
    out[a + b] += 1
    for j in range(1, a + 1):
        out[j] += lambda_coeff(a, b, j)
    for j in range(1, b + 1):
        out[j] += lambda_coeff(b, a, j)
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def bibracket_diamond(x: tuple, y: tuple) -> dict:
    (s1, r1), (s2, r2) = x, y
    r = r1 + r2
    c = comb(r, r1)
    return {(j, r): c * x for j, x in bracket_diamond(s1, s2).items()}


def stuffle(w, v) -> LinComb:
    return quasi_shuffle(w, v, stuffle_diamond)


def _to_xy(w) -> tuple:
    out = []
    for s in w:
        out.extend([0] * (s - 1))
        out.append(1)
    return tuple(out)


def _from_xy(u) -> tuple:
    w, run = [], 0
    for a in u:
        if a == 0:
            run += 1
        else:
            w.append(run + 1)
            run = 0
    if run:
        raise ValueError("x/y word does not end in y")
    return tuple(w)


_XY_CACHE: dict = {}


def shuffle(w, v) -> LinComb:
    """Shuffle product of z-words through their x/y encodings."""
    w, v = tuple(w), tuple(v)
    res = _qsh(_to_xy(w), _to_xy(v), None, _XY_CACHE)
    return LinComb._raw({_from_xy(u): c for u, c in res.items()})


def box_product(w, v) -> LinComb:
    """The bracket product of two words; bi-words if either operand is one."""
    w, v = tuple(w), tuple(v)
    bi = any(isinstance(a, tuple) for a in w + v)
    if bi:
        return quasi_shuffle(as_biword(w), as_biword(v), bibracket_diamond)
    return quasi_shuffle(w, v, bracket_diamond)


def lin_product(x: LinComb, y: LinComb, op: Callable = box_product) -> LinComb:
    """Bilinear extension of a word product."""
    acc: dict = defaultdict(Fraction)
    for w, c in x._terms.items():
        for v, d in y._terms.items():
            for u, e in op(w, v)._terms.items():
                acc[u] += c * d * e
    return LinComb._raw(acc)


def shuffle_len1(s1: int, s2: int) -> LinComb:
    """z_{s1} sh z_{s2} = sum_{a+b=s1+s2} (C(a-1,s1-1)+C(a-1,s2-1)) z_a z_b.

    The a = 1 term only survives when s1 or s2 is 1.
    """
    k = s1 + s2
    terms = {}
    for a in range(1, k):
        c = comb(a - 1, s1 - 1) + comb(a - 1, s2 - 1)
        if c:
            terms[(a, k - a)] = c
    return LinComb(terms)


# -- partition involution -------------------------------------------------


def compositions(total: int, parts: int):
    """All tuples of `parts` non-negative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def _monomial_coeff(forms, exps, target) -> int:
    """Coefficient of x^target in prod forms[j]^exps[j], forms being linear
    forms given as dicts variable index -> integer coefficient."""
    state = {tuple([0] * len(target)): 1}
    for form, e in zip(forms, exps):
        for _ in range(e):
            nxt: dict = defaultdict(int)
            for mono, c in state.items():
                for var, a in form.items():
                    if mono[var] < target[var]:
                        m = list(mono)
                        m[var] += 1
                        nxt[tuple(m)] += c * a
            state = {m: c for m, c in nxt.items() if c}
            if not state:
                return 0
    return state.get(tuple(target), 0)


@lru_cache(maxsize=None)
def _partition_word(w: tuple) -> LinComb:
    l = len(w)
    if l == 0:
        return LinComb.word(())
    # T(X;Y) = T(Y_1+..+Y_l, .., Y_1+Y_2, Y_1; X_l, X_{l-1}-X_l, .., X_1-X_2)
    a_forms = [{i: 1 for i in range(l - j)} for j in range(l)]
    b_forms = []
    for j in range(l):
        f = {l - 1 - j: 1}
        if j > 0:
            f[l - j] = -1
        b_forms.append(f)
    tx = tuple(s - 1 for s, _ in w)
    ty = tuple(r for _, r in w)
    ys = {}
    for a in compositions(sum(ty), l):
        c = _monomial_coeff(a_forms, a, ty)
        if c:
            ys[a] = c
    xs = {}
    for b in compositions(sum(tx), l):
        c = _monomial_coeff(b_forms, b, tx)
        if c:
            xs[b] = c
    terms = {}
    for a, ca in ys.items():
        for b, cb in xs.items():
            terms[tuple((aj + 1, bj) for aj, bj in zip(a, b))] = ca * cb
    return LinComb(terms)


def partition_involution(w) -> LinComb:
    """P(w): the bi-word combination with the same bi-bracket as w, read off
    from the partition-conjugation symmetry of the generating series."""
    if isinstance(w, LinComb):
        return w.map(partition_involution)
    return _partition_word(as_biword(tuple(w)))


def second_product(u, v) -> LinComb:
    """P(P(u) box P(v))."""
    pu = partition_involution(u)
    pv = partition_involution(v)
    return partition_involution(lin_product(pu, pv, box_product))


# -- shuffle brackets -----------------------------------------------------


def _mb(s, r=None) -> tuple:
    r = r or (0,) * len(s)
    return tuple(zip(s, r))


def shuffle_bracket(s) -> LinComb:
    """[s]^sh for length at most 4 as a bi-bracket combination."""
    s = tuple(s)
    l = len(s)
    if l == 0:
        return LinComb.word(())
    if l > 4:
        raise ValueError("shuffle brackets are only available up to length 4")
    h = Fraction(1, 2)
    terms: list[tuple[tuple, Fraction]] = [(_mb(s), Fraction(1))]

    def add(c, *pairs):
        for coeff, word in pairs:
            terms.append((word, c * coeff))

    if l == 2:
        s1, s2 = s
        if s2 == 1:
            add(h, (1, _mb((s1,), (1,))), (-1, _mb((s1,))))
    elif l == 3:
        s1, s2, s3 = s
        if s3 == 1:
            add(h, (1, _mb((s1, s2), (0, 1))), (-1, _mb((s1, s2))))
        if s2 == 1:
            add(h, (1, _mb((s1, s3), (1, 0))), (-1, _mb((s1, s3), (0, 1))), (-1, _mb((s1, s3))))
        if s2 == 1 and s3 == 1:
            add(Fraction(1, 6), (1, _mb((s1,), (2,))), (Fraction(-3, 2), _mb((s1,), (1,))), (1, _mb((s1,))))
    elif l == 4:
        s1, s2, s3, s4 = s
        if s4 == 1:
            add(h, (1, _mb((s1, s2, s3), (0, 0, 1))), (-1, _mb((s1, s2, s3))))
        if s3 == 1:
            add(h, (1, _mb((s1, s2, s4), (0, 1, 0))), (-1, _mb((s1, s2, s4), (0, 0, 1))), (-1, _mb((s1, s2, s4))))
        if s2 == 1:
            add(h, (1, _mb((s1, s3, s4), (1, 0, 0))), (-1, _mb((s1, s3, s4), (0, 1, 0))), (-1, _mb((s1, s3, s4))))
        if s2 == 1 and s4 == 1:
            add(
                Fraction(1, 4),
                (1, _mb((s1, s3), (1, 1))),
                (-2, _mb((s1, s3), (0, 2))),
                (-1, _mb((s1, s3), (1, 0))),
                (1, _mb((s1, s3))),
            )
        if s3 == 1 and s4 == 1:
            add(
                Fraction(1, 6),
                (1, _mb((s1, s2), (0, 2))),
                (Fraction(-3, 2), _mb((s1, s2), (0, 1))),
                (1, _mb((s1, s2))),
            )
        if s2 == 1 and s3 == 1:
            add(
                Fraction(1, 6),
                (1, _mb((s1, s4), (0, 2))),
                (-1, _mb((s1, s4), (1, 1))),
                (Fraction(3, 2), _mb((s1, s4), (0, 1))),
                (1, _mb((s1, s4), (2, 0))),
                (Fraction(-3, 2), _mb((s1, s4), (1, 0))),
                (1, _mb((s1, s4))),
            )
        if s2 == 1 and s3 == 1 and s4 == 1:
            add(
                Fraction(1, 24),
                (1, _mb((s1,), (3,))),
                (-2, _mb((s1,), (2,))),
                (Fraction(11, 6), _mb((s1,), (1,))),
                (-1, _mb((s1,))),
            )
    return LinComb(terms)


# -- derivative and evaluation --------------------------------------------


def derivative(w) -> LinComb:
    """d = q d/dq on a bi-bracket: sum_j s_j (r_j+1) with s_j, r_j raised."""
    if isinstance(w, LinComb):
        return w.map(derivative)
    w = as_biword(tuple(w))
    terms = []
    for j, (s, r) in enumerate(w):
        u = w[:j] + ((s + 1, r + 1),) + w[j + 1 :]
        terms.append((u, s * (r + 1)))
    return LinComb(terms)


def plain_words(c: LinComb) -> LinComb:
    """Write bi-words with all r_i = 0 as plain indices, merging equal terms."""

    def plain(w):
        if w and all(isinstance(a, tuple) and a[1] == 0 for a in w):
            return LinComb.word(tuple(a[0] for a in w))
        return LinComb.word(w)

    return c.map(plain)


def eval_hom(c, order: int = DEFAULT_ORDER) -> QSeries:
    """Linear extension of the (bi-)bracket map to combinations of words."""
    if not isinstance(c, LinComb):
        c = LinComb.word(tuple(c))
    num = [0] * (order + 1)
    den = 1
    # accumulate over a common denominator; much cheaper than Fractions
    for w, x in c._terms.items():
        f = bibracket_series(w, order)
        for n, a in enumerate(f.coeffs):
            if a:
                t = x * a
                if den % t.denominator:
                    g = t.denominator // gcd(den, t.denominator)
                    num = [v * g for v in num]
                    den *= g
                num[n] += t.numerator * (den // t.denominator)
    return QSeries.from_ints(num, den)
