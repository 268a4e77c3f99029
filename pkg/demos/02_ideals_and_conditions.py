"""The exact local side: condition systems, ideals, and colengths.

Passing through a weighted cluster imposes linear conditions on the
coefficients of a germ.  The conditions are built by pushing the germ
through the blowups one point at a time, entirely in exact rational
arithmetic, and the rank of the resulting matrix is the length of the
scheme, whatever multiplicity system you started from.
"""

from fractions import Fraction

from nearpoints import (EmbeddedCluster, colength, colon_subspace, contains,
                        ideal_subspace, length, local_conditions,
                        weighted_chain)

# An order-2 tacnode along the direction y = 0: two double points.
tacnode = EmbeddedCluster(weighted_chain([None, None], [2, 2]),
                          (None, Fraction(0)))
cs = local_conditions(tacnode)
print("conditions (point, monomial):")
for (pt, mono), row in zip(cs.labels, cs.rows):
    print("  point %d, coeff of x^%d y^%d:" % (pt, *mono), dict(row))

H = ideal_subspace(tacnode)
print("colength:", colength(tacnode), "= scheme length", length(tacnode.weighted))
print("y^2 - x^4 passes:", contains(H, {(0, 2): 1, (4, 0): -1}))
print("y^2 - x^3 passes:", contains(H, {(0, 2): 1, (3, 0): -1}))
print()

# The cuspidal cubic against its own cluster: two free points along y = 0
# and a satellite third point; every condition evaluates to zero.
cusp = EmbeddedCluster(weighted_chain([None, None, 0], [2, 1, 1]),
                       (None, Fraction(0), None))
print("cusp conditions on y^2 - x^3:",
      local_conditions(cusp, 3).apply({(0, 2): 1, (3, 0): -1}))
print()

# The same multiplicities land on different lengths depending on where the
# third point sits: 9 for three free double points, 8 at the satellite.
free = EmbeddedCluster(weighted_chain([None] * 3, [2, 2, 2]),
                       (None, Fraction(1, 3), Fraction(-2, 7)))
sat = EmbeddedCluster(weighted_chain([None, None, 0], [2, 2, 2]),
                      (None, Fraction(1, 3), None))
print("colengths, free vs satellite:", colength(free), colength(sat))
print()

# Conductors: dividing the ideal by a germ through part of the cluster
# peels its multiplicities off.  (m^2 : x) = m, exactly.
point2 = EmbeddedCluster(weighted_chain([None], [2]), (None,))
H2 = ideal_subspace(point2, 3)
quotient = colon_subspace(H2, {(1, 0): 1}, e=(1,))
H1 = ideal_subspace(point2.with_mults((1,)), 3)
print("(m^2 : x) == m:", quotient == H1)
