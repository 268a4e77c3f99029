"""Linear systems of plane curves through unions of cluster schemes.

Conditions from clusters at distinct points stack into one matrix per
degree; its rank against the count of curve coefficients decides the
dimension of the linear system and whether the scheme behaves generically
(maximal rank) or is superabundant.
"""

from nearpoints import (ell, exception_catalog, expected_dimension,
                        generic_union, max_rank)

# Two double points at general position: no lines pass, but one conic does
# (the line through them, doubled), one more than the count predicts.
Z = generic_union([(2,), (2,)], seed=1)
print("two double points:")
for d in (1, 2, 3):
    print("  degree %d: dim %d (expected %d)"
          % (d, ell(Z, d), expected_dimension(Z, d)))
print()

# Five double points miss maximal rank exactly once, in degree 4, by one:
# the doubled conic through all five.
Z5 = generic_union([(2,)] * 5, seed=2)
rep = max_rank(Z5)
for row in rep["detail"]:
    print("  degree %(degree)d: %(verdict)s (dim %(actual)d, expected "
          "%(expected)d)" % row)
print()

# A mixed union in general position passes the audit window clean.
Z_mix = generic_union([(2, 2), (2,), (2,), (2,), (2,)], seed=3)
print("tacnode + four double points:", "ok" if max_rank(Z_mix)["ok"]
      else "superabundant")
print()

# The full catalog of superabundant systems with one multiple point and
# double points, measured at random general positions.
print("system        fails at   defect")
for entry in exception_catalog(seed=4):
    (degree, defect), = entry["failures"].items()
    print("%-12s  %8d   %6d" % (entry["system"], degree, defect))
