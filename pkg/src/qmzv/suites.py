"""Named bundles of checks, shared by the command line and the test suite.

Every check returns a Check record: a name, pass/fail, the tolerance it
was held to (0 for exact rational equality), a short detail string and
the time it took.  Report order is fixed.
"""

from __future__ import annotations

import random
import time
import warnings
from fractions import Fraction
from typing import Callable, NamedTuple

import mpmath

from .brackets import bracket_series, format_word
from .identities import DELTA_BRACKETS, catalogue, identity_residual
from .iterint import goncharov_coproduct, reconstruct, shuffle_regularize, stuffle_regularize, tensor_product
from .mes import g_shuffle, g_star_M, mes_fourier, mes_lattice, mzv_numeric, zeta_combination, zk_limit
from .qseries import qs_eval
from .relations import SeriesFamily, delta_family, express_in_brackets, find_relations, kernel_membership_suite
from .words import LinComb, box_product, compositions, derivative, eval_hom, partition_involution, shuffle, stuffle

__all__ = ["Check", "GOLDEN", "SUITES", "all_biwords", "random_biword", "run_suite"]


class Check(NamedTuple):
    name: str
    passed: bool
    tolerance: float
    detail: str
    seconds: float

    def to_json(self) -> dict:
        return dict(self._asdict())


def _timed(name: str, tol: float, fn: Callable[[], tuple[bool, str]]) -> Check:
    t = time.perf_counter()
    ok, detail = fn()
    return Check(name, bool(ok), tol, detail, round(time.perf_counter() - t, 3))


# (word, normalizer, first exponent, printed coefficients)
GOLDEN = [
    ((2,), 1, 1, [1, 3, 4, 7, 6, 12, 8, 15]),
    ((4, 2), 6, 3, [1, 3, 15, 27, 78, 135]),
    ((4, 4, 4), 216, 6, [1, 9, 45, 190, 642, 1899]),
    ((3, 1, 3, 1), 4, 10, [1, 2, 8, 16, 43, 70]),
    ((1, 2, 3, 4, 5), 288, 15, [1, 17, 107, 512, 1985]),
]


def all_biwords(max_weight: int) -> list[tuple]:
    """Every bi-word with sum(s) + sum(r) <= max_weight, s_i >= 1."""
    out = []
    for total in range(1, max_weight + 1):
        for l in range(1, total + 1):
            for parts in compositions(total - l, 2 * l):
                out.append(tuple((parts[i] + 1, parts[l + i]) for i in range(l)))
    return out


def random_biword(rng: random.Random, total: int, bi: bool) -> tuple:
    """A random (bi-)word of the given total weight."""
    l = rng.randint(1, total)
    if not bi:
        cuts = sorted(rng.sample(range(1, total), l - 1))
        return tuple(b - a for a, b in zip([0] + cuts, cuts + [total]))
    # split total - l among the 2l slots s_i - 1, r_i
    slots = [0] * (2 * l)
    for _ in range(total - l):
        slots[rng.randrange(2 * l)] += 1
    return tuple((slots[i] + 1, slots[l + i]) for i in range(l))


# -- identities ---------------------------------------------------------------


def suite_identities(order: int = 40, **_) -> list[Check]:
    checks = []
    for word, den, first, printed in GOLDEN:

        def golden(word=word, den=den, first=first, printed=printed):
            f = bracket_series(word, first + len(printed) - 1)
            want = [Fraction(0)] * first + [Fraction(c, den) for c in printed]
            return list(f.coeffs) == want, f"{len(printed)} printed terms"

        checks.append(_timed(f"golden [{format_word(word)}]", 0.0, golden))
    for ident in catalogue():
        n = max(order, 60) if ident.name.startswith("delta") else order

        def residual(ident=ident, n=n):
            r = identity_residual(ident, n)
            return r.is_zero(), f"exact to q^{n}"

        checks.append(_timed(f"identity {ident.name}", 0.0, residual))
    return checks


# -- algebra ----------------------------------------------------------------


def suite_homomorphism(order: int = 40, seed: int = 0, pairs: int = 200, **_) -> list[Check]:
    rng = random.Random(seed)

    def run():
        bad = []
        for i in range(pairs):
            wu = rng.randint(1, 6)
            wv = rng.randint(1, 7 - wu)
            bi = i % 2 == 1
            u, v = random_biword(rng, wu, bi), random_biword(rng, wv, bi and rng.random() < 0.5)
            if eval_hom(box_product(u, v), order) != eval_hom(u, order) * eval_hom(v, order):
                bad.append((u, v))
        return not bad, f"{pairs} pairs, weight <= 7, order {order}, failures {bad[:3]}"

    return [_timed("eval_hom(u box v) = eval_hom(u) eval_hom(v)", 0.0, run)]


def suite_partition(order: int = 40, max_weight: int = 6, **_) -> list[Check]:
    words = all_biwords(max_weight)

    def series():
        bad = [w for w in words if eval_hom(partition_involution(w), order) != eval_hom(w, order)]
        return not bad, f"{len(words)} bi-words, order {order}, failures {bad[:3]}"

    def involution():
        bad = [w for w in words if partition_involution(partition_involution(w)) != LinComb.word(w)]
        return not bad, f"{len(words)} bi-words, failures {bad[:3]}"

    return [_timed("eval_hom(P(w)) = eval_hom(w)", 0.0, series), _timed("P(P(w)) = w", 0.0, involution)]


def _indices(max_weight: int) -> list[tuple]:
    return [tuple(x + 1 for x in c) for k in range(1, max_weight + 1) for l in range(1, k + 1)
            for c in compositions(k - l, l)]


def coassociativity_defect(s) -> dict:
    """(Delta (x) id) Delta - (id (x) Delta) Delta on I(s), as a dict of triples."""
    acc: dict = {}
    for (a, b), c in goncharov_coproduct(s).items():
        for (a1, a2), d in goncharov_coproduct(a).items():
            acc[(a1, a2, b)] = acc.get((a1, a2, b), 0) + c * d
        for (b1, b2), d in goncharov_coproduct(b).items():
            acc[(a, b1, b2)] = acc.get((a, b1, b2), 0) - c * d
    return {k: v for k, v in acc.items() if v}


def suite_coproduct(seed: int = 0, **_) -> list[Check]:
    rng = random.Random(seed)
    words = _indices(4)

    def golden():
        got = goncharov_coproduct((3, 2))
        want = LinComb({((), (3, 2)): 1, ((2,), (3,)): 3, ((3,), (2,)): 2, ((3, 2), ()): 1})
        return dict(got.items()) == dict(want.items()), repr(got)

    def coassoc():
        bad = [s for s in words if coassociativity_defect(s)]
        return not bad, f"{len(words)} words of weight <= 4, failures {bad[:3]}"

    def homomorphism():
        bad = []
        for u in words:
            for v in words:
                if sum(u) + sum(v) > 4:
                    continue
                lhs = goncharov_coproduct(shuffle(u, v))
                if dict(lhs.items()) != dict(tensor_product(goncharov_coproduct(u), goncharov_coproduct(v)).items()):
                    bad.append((u, v))
        return not bad, f"pairs of total weight <= 4, failures {bad[:3]}"

    def regularize():
        sh = shuffle_regularize((1, 2))
        st = stuffle_regularize((1, 2))
        ok = (sh == {1: LinComb.word((2,)), 0: LinComb.word((2, 1), -2)}
              and st == {1: LinComb.word((2,)), 0: LinComb({(2, 1): -1, (3,): -1})})
        return ok, f"z1z2: shuffle {sh}, stuffle {st}"

    def reconstruction():
        bad = []
        for _ in range(100):
            k = rng.randint(1, 6)
            w = rng.choice([s for s in _indices(k) if sum(s) == k])
            for reg, prod in ((shuffle_regularize, shuffle), (stuffle_regularize, stuffle)):
                if reconstruct(reg(w), prod) != LinComb.word(w):
                    bad.append((w, reg.__name__))
        return not bad, f"100 random words of weight <= 6, failures {bad[:3]}"

    return [
        _timed("Delta(I(3,2)) four-term tensor", 0.0, golden),
        _timed("coassociativity", 0.0, coassoc),
        _timed("Delta is a shuffle homomorphism", 0.0, homomorphism),
        _timed("regularization of z1z2", 0.0, regularize),
        _timed("regularization reconstructs w", 0.0, reconstruction),
    ]


# -- analytic -------------------------------------------------------------


def suite_mes_numeric(precision: int = 64, **_) -> list[Check]:
    tau = 1j
    checks = []
    values: dict = {}

    for s in [(4, 3), (3, 2)]:

        def triangle(s=s):
            lat = mes_lattice(s, tau)
            fou = complex(mes_fourier(s).realize(tau, precision))
            sha = complex(g_shuffle(s).realize(tau, precision))
            values[s] = lat.value
            diffs = [abs(lat.value - fou), abs(lat.value - sha), abs(fou - sha)]
            study = ", ".join(f"N={n}: {abs(p - fou):.1e}" for n, p in zip(lat.cutoffs, lat.partials))
            return max(diffs) <= 1e-6, (f"G_{s} = {fou:.15g}; |lat-fou| {diffs[0]:.1e}, |lat-sh| {diffs[1]:.1e}, "
                                        f"|fou-sh| {diffs[2]:.1e}; raw box error {study}")

        checks.append(_timed(f"G_{format_word(s)} lattice = Fourier = shuffle at tau=i", 1e-6, triangle))

    def star():
        lat = values.get((4, 3)) or mes_lattice((4, 3), tau).value
        v = complex(g_star_M((4, 3), 80, tau))
        return abs(v - lat) <= 1e-5, f"|G*,80 - lattice| = {abs(v - lat):.1e}"

    checks.append(_timed("g_star_M(4,3; M=80) = lattice at tau=i", 1e-5, star))

    def euler_48():
        g4 = mes_fourier((4,)).realize(tau, precision)
        g8 = mes_fourier((8,)).realize(tau, precision)
        d = abs(g4**2 - mpmath.mpf(7) / 6 * g8)
        return d <= 1e-6, f"|G4^2 - 7/6 G8| = {mpmath.nstr(d, 3)}"

    checks.append(_timed("G4^2 = 7/6 G8 at tau=i", 1e-6, euler_48))

    def euler_22():
        with mpmath.workdps(precision + 10):
            q = mpmath.exp(-2 * mpmath.pi)
            w = (-2j * mpmath.pi) ** 2
            z2 = mzv_numeric((2,), 10.0 ** -(precision + 5))
            b2 = qs_eval(bracket_series((2,), 150), q, precision).value
            db2 = qs_eval(bracket_series((2,), 150).d(), q, precision).value
            g4 = mes_fourier((4,)).realize(tau, precision)
            lhs = (z2 + w * b2) ** 2 - 12 * z2 * w * db2 - mpmath.mpf(5) / 2 * g4
            return abs(lhs) <= 1e-6, f"|G2^2 - 12 zeta(2) dG2 - 5/2 G4| = {mpmath.nstr(abs(lhs), 3)}"

    checks.append(_timed("G2^2 = 12 zeta(2) dG2 + 5/2 G4 at q=exp(-2pi)", 1e-6, euler_22))

    def shuffle_relation():
        lhs = g_shuffle((5,))
        rhs = g_shuffle((3, 2)) * 2 + g_shuffle((4, 1)) * 6
        d = abs(lhs.realize(tau, 30) - rhs.realize(tau, 30))
        return d <= 1e-12, f"|G^sh_5 - 2G^sh_3,2 - 6G^sh_4,1| = {mpmath.nstr(d, 3)}"

    checks.append(_timed("G^sh_5 = 2 G^sh_3,2 + 6 G^sh_4,1 at tau=i", 1e-12, shuffle_relation))
    return checks


def suite_zk(**_) -> list[Check]:
    checks = []

    def z5():
        r = zk_limit((2, 3), 5)
        want = float(mzv_numeric((2, 3)))
        return abs(r.value - want) <= 1e-4, f"Z5 = {r.value:.12f}, zeta(2,3) = {want:.12f}"

    def z4():
        r = zk_limit(LinComb({(4,): 1, (2, 1, 1): -1}), 4)
        return abs(r.value) <= 1e-4, f"Z4 = {r.value:.2e}"

    def exotic():
        top = LinComb({w: c for w, c in DELTA_BRACKETS.items() if len(w) == 2})
        r = zk_limit(top, 12)
        want = float(zeta_combination(LinComb.word((12,), Fraction(5197, 691))))
        return abs(r.value - want) <= 1e-3, f"Z12 = {r.value:.12f}, 5197/691 zeta(12) = {want:.12f}"

    def divergent():
        r = zk_limit((((1, 1), (1, 0))), 3)
        return r.diverges, f"last samples {[f'{y:.3g}' for y in r.samples[-3:]]}"

    checks.append(_timed("Z5([2,3]) = zeta(2,3)", 1e-4, z5))
    checks.append(_timed("Z4([4] - [2,1,1]) = 0", 1e-4, z4))
    checks.append(_timed("Z12 of the Delta brackets gives 5197/691 zeta(12)", 1e-3, exotic))
    checks.append(_timed("Z3 of [1,1|1,0] diverges", 0.0, divergent))
    for row in kernel_membership_suite(4):
        checks.append(Check(f"Z4 kills {row['class']} {row['label']}", row["passed"], 1e-3,
                            f"value {row['value']:.2e}", 0.0))
    return checks


def suite_relations(order: int = 60, mdbd_weight: int = 5, **_) -> list[Check]:
    checks = []

    def delta():
        rel = find_relations(delta_family(order))
        want = [1, -168, -150, -28, Fraction(-1, 1408), Fraction(83, 14400), Fraction(-187, 6048),
                Fraction(7, 120), Fraction(5197, 691)]
        ok = len(rel) == 1 and list(rel.basis[0]) == want and rel.stable
        return ok, f"{rel.format()} (verified to order {rel.verified_to_order}, stable {rel.stable})"

    def family(items, want):
        def run():
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rel = find_relations(SeriesFamily.from_items(items, 40))
            return rel.contains(want) and rel.stable, rel.format()

        return run

    d1 = [("[3]", (3,)), ("[2,1]", (2, 1)), ("[2]", (2,)), ("d[1]", derivative((1,)))]
    f4211 = [("[4]", (4,)), ("[2,1,1]", (2, 1, 1)), ("[2]", (2,)), ("[3]", (3,)), ("d[1]", derivative((1,))),
             ("d[2]", derivative((2,))), ("[2,1|1,0]", ((2, 1), (1, 0)))]

    def mdbd():
        bad = []
        words = [w for w in all_biwords(mdbd_weight) if any(r for _, r in w)]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for w in words:
                k = sum(s + r for s, r in w)
                if express_in_brackets(w, k, order=2 * k + 20) is None:
                    bad.append(w)
        return not bad, f"{len(words)} bi-brackets of weight <= {mdbd_weight}, not expressed: {bad}"

    def len2():
        bad = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for s1 in range(1, 5):
                for s2 in range(1, 6 - s1):
                    for r in ((1, 0), (0, 1)):
                        w = ((s1, r[0]), (s2, r[1]))
                        k = s1 + s2 + 1
                        if express_in_brackets(w, k, 3, order=2 * k + 20) is None:
                            bad.append(w)
        return not bad, f"failures {bad}"

    checks.append(_timed(f"Delta coefficients recovered at order {order}", 0.0, delta))
    checks.append(_timed("d[1] relation found", 0.0, family(d1, [1, -1, Fraction(1, 2), -1])))
    checks.append(_timed("4211 relation found", 0.0,
                         family(f4211, [1, -1, Fraction(1, 3), 1, Fraction(-1, 2), Fraction(-1, 2), -1])))
    checks.append(_timed(f"every bi-bracket of weight <= {mdbd_weight} is a bracket combination", 0.0, mdbd))
    checks.append(_timed("[s1,s2|1,0], [s1,s2|0,1] in brackets of weight s1+s2+1, length 3", 0.0, len2))
    return checks


SUITES: dict[str, Callable[..., list[Check]]] = {
    "identities": suite_identities,
    "homomorphism": suite_homomorphism,
    "partition": suite_partition,
    "coproduct": suite_coproduct,
    "mes-numeric": suite_mes_numeric,
    "zk": suite_zk,
    "relations": suite_relations,
}


def run_suite(name: str, **options) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](**options)
