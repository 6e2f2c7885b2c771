"""
From brackets back to zeta values
=================================

(1-q)^k times a bracket of weight k tends to a multiple zeta value as q -> 1.
Lower weight brackets and derivatives go to zero, and the cusp form relation
turns into a relation among double zeta values.
"""

from fractions import Fraction

from qmzv.identities import DELTA_BRACKETS
from qmzv.mes import mzv_numeric, zk_limit
from qmzv.words import LinComb, derivative

print("Z5([2,3]) =", zk_limit((2, 3), 5).value, " zeta(2,3) =", float(mzv_numeric((2, 3))))
print("Z4([2])   =", zk_limit((2,), 4).value)
print("Z4(d[1,1]) =", zk_limit(derivative((1, 1)), 4).value)

top = LinComb({w: c for w, c in DELTA_BRACKETS.items() if len(w) == 2})
print("Z12(168[5,7] + 150[7,5] + 28[9,3]) =", zk_limit(top, 12).value)
print("5197/691 zeta(12)                  =", float(Fraction(5197, 691) * mzv_numeric((12,))))

r = zk_limit(((1, 1), (1, 0)), 3)
print("Z3([1,1|1,0]) diverges:", r.diverges)
