"""
Multiple Eisenstein series three ways
=====================================

G_{4,3} and G_{3,2} at tau = i: a lattice sum, the Fourier expansion in
multiple zeta values and brackets, and the expansion built from the
coproduct and shuffle brackets.
"""

import mpmath

from qmzv.mes import g_shuffle, g_star_M, mes_fourier, mes_lattice

tau = 1j
for s in [(4, 3), (3, 2)]:
    lat = mes_lattice(s, tau)
    fou = mes_fourier(s)
    print(s, "Fourier expansion:", fou)
    with mpmath.workdps(30):
        print("  lattice  ", lat.value)
        print("  fourier  ", complex(fou.realize(tau, 30)))
        print("  shuffle  ", complex(g_shuffle(s).realize(tau, 30)))
    # the plain box sums converge like 1/N; extrapolation does the rest
    for n, p in zip(lat.cutoffs, lat.partials):
        print("  box N=%5d error %.1e" % (n, abs(p - lat.value)))

# the truncated product over multitangents approaches the same value
print("G*,80 (4,3):", complex(g_star_M((4, 3), 80, tau)))
