from fractions import Fraction

import numpy as np
import pytest

from qmzv.brackets import bracket_series
from qmzv.identities import DELTA_BRACKETS
from qmzv.mes import mzv_numeric, zeta_combination, zk_limit, zk_samples
from qmzv.words import LinComb, derivative


@pytest.mark.parametrize("w", [(2,), (3,), (5,), (3, 2), (2, 3), (2, 1), (4, 1, 1), (2, 2, 2)])
def test_admissible_brackets_give_zeta_values(w):
    r = zk_limit(w, sum(w))
    assert not r.diverges
    assert abs(r.value - float(mzv_numeric(w))) < 1e-8


@pytest.mark.parametrize("w,k", [((2,), 3), ((3,), 5), ((2, 1), 4), ((1,), 2)])
def test_lower_weight_vanishes(w, k):
    assert abs(zk_limit(w, k).value) < 1e-8


@pytest.mark.parametrize("w", [(1,), (2,), (1, 1), (2, 1)])
def test_derivatives_vanish(w):
    k = sum(w) + 2
    assert abs(zk_limit(derivative(w), k).value) < 1e-6


def test_relation_4211():
    r = zk_limit(LinComb({(4,): 1, (2, 1, 1): -1}), 4)
    assert abs(r.value) < 1e-4


def test_exotic_relation():
    top = LinComb({w: c for w, c in DELTA_BRACKETS.items() if len(w) == 2})
    want = float(zeta_combination(LinComb.word((12,), Fraction(5197, 691))))
    assert abs(zk_limit(top, 12).value - want) < 1e-3


def test_cusp_form_vanishes():
    def delta(q):
        n = np.arange(1, int(80 / (1 - q)) + 10)
        return q * np.exp(24 * np.log1p(-(q**n)).sum())

    assert abs(zk_limit(delta, 12).value) < 1e-10
    assert abs(zk_limit(DELTA_BRACKETS, 12).value) < 1e-3


def test_divergence_flagged():
    r = zk_limit(((1, 1), (1, 0)), 3)
    assert r.diverges and not r.ok(1.0)


def test_series_input_error_estimate_is_honest():
    r = zk_limit(bracket_series((4,), 4000), 4, j_min=1)
    assert abs(r.value - float(mzv_numeric((4,)))) <= r.error


def test_short_series_rejected():
    with pytest.raises(ValueError):
        zk_limit(bracket_series((4,), 200), 4)


def test_samples_shape_and_errors():
    hs, ys = zk_samples((3,), 3, [3, 4, 5])
    assert list(hs) == [0.125, 0.0625, 0.03125]
    assert ys.shape == (3,)
    with pytest.raises(ValueError):
        zk_limit((3,), -1)
    with pytest.raises(TypeError):
        zk_limit("3", 3)
