from fractions import Fraction

import mpmath
import pytest

from qmzv.mes import (
    MESExpansion,
    fourier_coefficient,
    g_shuffle,
    g_star_M,
    mes_fourier,
    mes_lattice,
    mzv_numeric,
    star_F,
    zeta_combination,
)
from qmzv.words import LinComb

TAUS = [1j, complex(0.3, 1.1)]


def _value(exp, tau, precision=30):
    return complex(exp.realize(tau, precision))


@pytest.mark.parametrize("tau", TAUS)
@pytest.mark.parametrize("s", [(3,), (4,), (3, 2), (4, 3), (3, 3), (4, 2), (3, 2, 2)])
def test_lattice_matches_fourier(s, tau):
    lat = mes_lattice(s, tau)
    assert abs(lat.value - _value(mes_fourier(s), tau)) < 1e-10
    assert lat.tail_estimate < 1e-9


def test_lattice_box_sums_converge_like_one_over_n():
    lat = mes_lattice((3, 2), 1j)
    exact = _value(mes_fourier((3, 2)), 1j)
    errs = [abs(p - exact) for p in lat.partials]
    ratios = [a / b for a, b in zip(errs, errs[1:])]
    assert all(1.8 < r < 2.2 for r in ratios)


def test_lattice_periodic_in_tau():
    a = mes_lattice((4, 3), complex(0.3, 1.1)).value
    b = mes_lattice((4, 3), complex(1.3, 1.1)).value
    assert abs(a - b) < 1e-12


def test_lattice_stuffle():
    # G_3 G_4 = G_{3,4} + G_{4,3} + G_7, all absolutely convergent
    tau = complex(0.3, 1.1)
    g = {s: mes_lattice(s, tau).value for s in [(3,), (4,), (3, 4), (4, 3), (7,)]}
    assert abs(g[(3,)] * g[(4,)] - g[(3, 4)] - g[(4, 3)] - g[(7,)]) < 1e-12


def test_lattice_rejects_bad_input():
    with pytest.raises(ValueError):
        mes_lattice((2, 3), 1j)
    with pytest.raises(ValueError):
        mes_lattice((3, 2), -1j)


@pytest.mark.parametrize("M", [10, 20, 40])
def test_star_converges_to_lattice(M):
    lat = mes_lattice((4, 3), 1j).value
    # the error decays like e^{-2 pi M Im tau}, far below the lattice accuracy here
    assert abs(complex(g_star_M((4, 3), M, 1j)) - lat) < 1e-12


def test_star_F_empty_and_errors():
    assert star_F((), 5, 1j) == 1
    with pytest.raises(ValueError):
        g_star_M((4, 1), 10, 1j)
    with pytest.raises(ValueError):
        g_star_M((4, 3), 0, 1j)


def test_star_F_is_stuffle_multiplicative():
    # F_u F_v = F_{u * v}: both sides are nested sums over the same m's
    M, tau = 12, complex(0.1, 0.8)
    lhs = star_F((3,), M, tau) * star_F((4,), M, tau)
    rhs = star_F((3, 4), M, tau) + star_F((4, 3), M, tau) + star_F((7,), M, tau)
    assert abs(lhs - rhs) < 1e-14


def test_fourier_32_shape():
    # zeta(3,2) + 3 zeta(3) g_2 + 2 zeta(2) g_3 + g_{3,2}
    want = MESExpansion(5, {((3, 2), (), 0): 1, ((3,), (2,), 2): 3, ((2,), (3,), 3): 2, ((), (3, 2), 5): 1})
    assert mes_fourier((3, 2)) == want


def test_fourier_322_coefficients():
    parts = mes_fourier((3, 2, 2)).g_parts()
    with mpmath.workdps(30):
        c2 = zeta_combination(parts[(((2, 0),), 2)])
        c3 = zeta_combination(parts[(((3, 0),), 3)])
        assert abs(c2 - Fraction(54, 5) * mzv_numeric((2, 3)) - Fraction(51, 5) * mzv_numeric((3, 2))) < 1e-18
        assert abs(c3 - Fraction(16, 3) * mzv_numeric((2, 2))) < 1e-18


@pytest.mark.parametrize("s", [(a, b) for a in range(2, 6) for b in range(2, 6)])
def test_fourier_equals_coproduct_length_two(s):
    assert mes_fourier(s) == g_shuffle(s)


@pytest.mark.parametrize("s", [(2, 2, 2), (3, 2, 2), (3, 3, 2), (4, 2, 3), (2, 3, 4)])
def test_fourier_equals_coproduct_length_three(s):
    for tau in TAUS:
        with mpmath.workdps(35):
            diff = mes_fourier(s).realize(tau, 30) - g_shuffle(s).realize(tau, 30)
            assert abs(diff) < 1e-25


@pytest.mark.parametrize("s", [(2,), (3, 2), (4, 1), (2, 1, 2), (3, 2, 2), (2, 2, 1, 2)])
def test_grading(s):
    assert g_shuffle(s).grading_errors() == []
    if min(s) >= 2 and len(s) <= 3:
        assert mes_fourier(s).grading_errors() == []


def test_shuffle_41():
    want = MESExpansion(5, {
        ((), ((4, 0),), 5): Fraction(-1, 2),
        ((), ((4, 1),), 5): Fraction(1, 2),
        ((), (4, 1), 5): 1,
        ((2,), (3,), 3): -1,
        ((3,), (2,), 2): -1,
        ((4, 1), (), 0): 1,
    })
    assert g_shuffle((4, 1)) == want


def test_shuffle_relation_weight_five():
    lhs = g_shuffle((5,))
    rhs = g_shuffle((3, 2)) * 2 + g_shuffle((4, 1)) * 6
    with mpmath.workdps(35):
        assert abs(lhs.realize(1j, 30) - rhs.realize(1j, 30)) < 1e-25


def test_fourier_coefficient_is_an_integer():
    for n1 in range(2, 6):
        for n2 in range(2, 6):
            for k in range(2, n1 + n2 - 1):
                assert type(fourier_coefficient(n1, n2, k)) is int


def test_expansion_json_round_trip():
    e = mes_fourier((3, 2, 2))
    assert MESExpansion.from_json(e.to_json(), e.weight) == e


def test_expansion_arithmetic():
    e = mes_fourier((4, 3))
    assert (e - e) == MESExpansion(7)
    assert (e * 2) == e + e
    with pytest.raises(ValueError):
        e + mes_fourier((3, 2))


def test_realize_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        mes_fourier((4,)).realize(-1j)


def test_euler_relation_g4_g8():
    with mpmath.workdps(45):
        g4 = mes_fourier((4,)).realize(1j, 40)
        g8 = mes_fourier((8,)).realize(1j, 40)
        assert abs(g4**2 - mpmath.mpf(7) / 6 * g8) < 1e-35


def test_fourier_errors():
    with pytest.raises(ValueError):
        mes_fourier((2, 2, 2, 2))
    with pytest.raises(ValueError):
        mes_fourier((3, 1))
    with pytest.raises(ValueError):
        g_shuffle((1, 1, 1, 1, 1))


def test_empty_zeta_combination():
    assert zeta_combination(LinComb()) == 0
