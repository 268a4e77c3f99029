"""Moving points into satellite positions: lengths and dimensions.

Specializing a free point onto a corner of the exceptional configuration
can only shrink the scheme, linear systems can only grow, and for the
boundary systems the exact unloading identities say precisely when and how
the normal form changes.
"""

from nearpoints import (cusp_to_tacnode_chain, limit_identities,
                        limit_identities_sweep, semicontinuity_experiment)

# Lengths never go up under specialization; for (2,2,2) they drop 9 -> 8.
rep = semicontinuity_experiment((2, 2, 2), trials=5, seed=0)
print("semicontinuity on (2,2,2):", "ok" if rep["ok"] else "violated")
for run in rep["runs"][:3]:
    print("  free %d -> satellite %d" % (run["free"], run["special"]))
print()

# The boundary identities: a head of 2s-2 with at least s double points is
# exactly when the length drops into the next stratum, and the specialized
# system unloads predictably.
rep = limit_identities(2, 2, 3, 0)
print("s=2, (2, 2^3): lengths %s, specialized normal form %s"
      % (rep["lengths"], rep["part3_delta"]))

detected, bad = limit_identities_sweep(4, 8, 10, 10)
print("sweep s<=4, m<=8, i,j<=10: %d boundary cases, %d counterexamples"
      % (detected, len(bad)))
print()

# A cusp scheme degenerates onto the next tacnode scheme: slide the free
# extra point onto the satellite corner and unload.
for n in (1, 2, 3):
    rep = cusp_to_tacnode_chain(n, seed=n)
    print("cusp order %d -> tacnode order %d: normal form %s, lengths %d=%d"
          % (n, n + 1, rep["specialized_delta"], rep["colength_special"],
             rep["colength_tacnode"]))
