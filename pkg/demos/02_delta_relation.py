"""
Finding the cusp form relation
==============================

Nine q-series are truncated at q^60 and put into a matrix.  Exact elimination
over the rationals finds one linear relation: the cusp form Delta written
through brackets of weight at most 12.  The relation is then rechecked at q^70.
"""

from qmzv.relations import RelationSet, delta_family, find_relations

fam = delta_family(60)
print("series:", ", ".join(fam.labels))

rel = find_relations(fam)
print(rel.format())
print("verified to q^%d, stable: %s" % (rel.verified_to_order, rel.stable))

# the same relation with integer coefficients
print(dict(zip(rel.labels, RelationSet.cleared(rel.basis[0]))))
