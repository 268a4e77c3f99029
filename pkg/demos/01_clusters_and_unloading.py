"""Clusters of infinitely near points, proximity, and unloading.

A weighted cluster is a chain of points, each infinitely near the previous
one, with an integer multiplicity at every point.  This demo builds a few,
checks the proximity inequalities, and repairs the ones that fail.
"""

from nearpoints import (WeightedCluster, excesses, is_consistent, length,
                        proximity_matrix, render_enriques, single_chain,
                        unload, weighted_chain)

# Three double points in a row, each free: the cluster of an order-3 tacnode.
tacnode3 = weighted_chain([None, None, None], [2, 2, 2])
print(render_enriques(tacnode3))
print("excesses:", excesses(tacnode3))
print("consistent:", is_consistent(tacnode3))
print("length:", length(tacnode3))
print()

# Same multiplicities, but now the third point is a satellite: it sits on
# the intersection of the last exceptional divisor with the strict
# transform of the first one (extra proximity to point 0).
satellite = weighted_chain([None, None, 0], [2, 2, 2])
print(render_enriques(satellite))
print("excesses:", excesses(satellite))
print("consistent:", is_consistent(satellite))

# The proximity inequality fails at the root: the scheme is actually cut
# out by a different, consistent system.  Unloading finds it.
trace = unload(satellite)
for i, n, before, after in trace.steps:
    print("unload %d onto point %d: %s -> %s" % (n, i, before, after))
print("normal form:", trace.final.mults)
print("length drops to:", length(satellite), "(9 at free points)")
print()

# The proximity matrix encodes the whole structure; its transpose applied
# to the multiplicities gives the excesses again.
P = proximity_matrix(satellite.cluster)
for row in P:
    print(row)

# A long specialized cluster from the discriminant-type family: the third
# point proximate to the root and the last one a satellite.  Its normal
# form trades the inconsistent head for a fatter point and trailing zeros.
dk = WeightedCluster(single_chain([None, None, 0, None, None, None, 4]),
                     (3, 2, 2, 2, 2, 1, 1))
print()
print(render_enriques(dk))
print("normal form:", unload(dk).final.mults)
print("length:", length(dk))
