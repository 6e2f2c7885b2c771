"""
Brackets and their products
===========================

Brackets are q-series with rational coefficients.  Their products can be
written in two ways, through the stuffle and through the shuffle, and the
difference of the two expressions is a relation between brackets.
"""

from qmzv.brackets import bracket_series, bibracket_series
from qmzv.words import box_product, eval_hom, plain_words, second_product

# the first few brackets
for word in [(2,), (4, 2), (3, 1, 3, 1)]:
    print(word, bracket_series(word, 12))

# two routes to a bi-bracket: the defining sum and the divisor sum
w = ((2, 1), (1, 0))
print(bibracket_series(w, 10, method="eulerian") == bibracket_series(w, 10, method="divisor"))

# [2][3] as a stuffle and as a shuffle, both checked to q^40
stuffle_side = box_product((2,), (3,))
shuffle_side = plain_words(second_product((2,), (3,)))
print("stuffle:", stuffle_side)
print("shuffle:", shuffle_side)
target = bracket_series((2,), 40) * bracket_series((3,), 40)
print(eval_hom(stuffle_side, 40) == target, eval_hom(shuffle_side, 40) == target)

# their difference vanishes as a q-series
diff = stuffle_side - shuffle_side
print("relation:", diff, eval_hom(diff, 40).is_zero())
