"""An explicit sextic with three tacnodes of order 2, certified.

The driver places three four-point schemes at random rational points,
solves the exact linear system in degree 6, draws a member, and then
certifies it: blowing up along each cluster must reproduce the prescribed
multiplicities with clean crossings, and the curve must have no other
singular point anywhere, the line at infinity included.
"""

import json

from nearpoints import SingularitySpec, existence_driver, min_degree

spec = SingularitySpec(tacnodes=(2, 2, 2))
print("three tacnodes of order 2: total weight", spec.weight,
      "-> degree", min_degree(spec))

report = existence_driver(spec, seed=5)
print("verdict:", report["verdict"])
print("scheme length:", report["total_length"],
      "(bookkeeping ok:" , report["length_check"], ")")
print("base points:", report["bases"])

attempt = report["attempts"][-1]
for k, cert in enumerate(attempt["certificates"]):
    print("cluster %d: prescribed %s, attained %s"
          % (k, cert["prescribed"], cert["attained"]))
print("singular points found:",
      [p["point"] for p in attempt["singular_points"]])

print()
print("the curve (degree 6, exact integer coefficients):")
print(json.dumps(report["curve"], indent=2))

# The same machinery handles cusps; a single ordinary cusp on a cubic:
cubic = existence_driver(SingularitySpec(cusps=(1,)), seed=2, degree=3)
print()
print("cuspidal cubic verdict:", cubic["verdict"])
print("its singular locus:", cubic["attempts"][-1]["singular_points"])
