from fractions import Fraction

import pytest

from nearpoints.clusters import validate, weighted_chain
from nearpoints.local_algebra import (EmbeddedCluster, contains,
                                      ideal_subspace, to_local)
from nearpoints.plane_systems import SchemeUnion, max_rank
from nearpoints.synthesis import (PlaneCurve, SingularitySpec, cusp_scheme,
                                  dk_scheme, existence_driver, min_degree,
                                  singular_locus, synthesize, tacnode_scheme,
                                  verify_sharp)
from nearpoints.unloading import length, unload


def ec_of(extras, mults, lambdas):
    return EmbeddedCluster(weighted_chain(extras, mults), tuple(lambdas))


def test_tacnode_scheme():
    for t in (1, 2, 4):
        ec = tacnode_scheme(t, seed=t)
        assert length(ec.weighted) == 3 * t
        assert unload(ec.weighted).steps == ()       # consistent
        assert validate(ec.weighted.cluster) == []


def test_cusp_scheme():
    ec = cusp_scheme(1, seed=1)
    assert ec.mults == (2, 1, 1, 1)
    assert length(ec.weighted) == 6
    for n in (1, 2, 3):
        ec = cusp_scheme(n, seed=n)
        assert length(ec.weighted) == 3 * (n + 1)
        assert unload(ec.weighted).steps == ()
    core = cusp_scheme(1, seed=5, extended=False,
                       lambdas=(None, Fraction(0), None))
    assert contains(ideal_subspace(core, 5), {(0, 2): 1, (3, 0): -1})


def test_dk_scheme():
    assert dk_scheme(4, seed=1).mults == (3,)
    assert length(dk_scheme(4, seed=1).weighted) == 6
    assert dk_scheme(6, seed=1).mults == (3, 2)
    assert length(dk_scheme(6, seed=1).weighted) == 9
    ec7 = dk_scheme(7, seed=1)
    assert ec7.mults == (3, 2, 1, 1) and ec7.extras[-1] == 1
    with pytest.raises(ValueError):
        dk_scheme(3)


def test_min_degree():
    assert min_degree(SingularitySpec(tacnodes=(2, 2, 2))) == 6
    assert min_degree(SingularitySpec(cusps=(1,) * 10)) == 11
    with pytest.raises(ValueError):
        min_degree(SingularitySpec(tacnodes=(5,)))
    with pytest.raises(ValueError):
        min_degree(SingularitySpec(tacnodes=(1,)))


def test_verify_sharp_tacnode():
    tac = ec_of([None, None], [2, 2], [None, 0])
    cert = verify_sharp(PlaneCurve(4, {(0, 2): 1, (4, 0): -1}), tac)
    assert cert.ok and cert.attained == (2, 2)


def test_verify_sharp_cusp():
    cusp = ec_of([None, None, 0], [2, 1, 1], [None, 0, None])
    cert = verify_sharp(PlaneCurve(3, {(0, 2): 1, (3, 0): -1}), cusp)
    assert cert.ok and cert.attained == (2, 1, 1)


def test_verify_sharp_mismatch():
    tac = ec_of([None, None], [2, 2], [None, 0])
    cert = verify_sharp(PlaneCurve(3, {(0, 2): 1, (3, 0): -1}), tac)
    assert not cert.ok
    assert cert.attained == (2, 1)


def test_verify_sharp_rejects_tangency_and_high_contact():
    node = ec_of([None], [2], [None])
    # y^2 - x^5: double tangent line, not an honest node
    assert not verify_sharp(PlaneCurve(5, {(0, 2): 1, (5, 0): -1}), node).ok
    # a node with two transverse branches passes
    assert verify_sharp(PlaneCurve(2, {(0, 2): 1, (2, 0): -1}), node).ok
    # triple point with a repeated tangent fails the simple-crossing audit
    triple = ec_of([None], [3], [None])
    assert not verify_sharp(
        PlaneCurve(4, {(0, 2): 1, (4, 0): -1}), triple).ok


def test_verify_sharp_vanishing_curve():
    tac = ec_of([None, None], [2, 2], [None, 0])
    with pytest.raises(ValueError):
        verify_sharp(PlaneCurve(1, {}), tac)


def test_singular_locus_cuspidal_cubic():
    loc = singular_locus(PlaneCurve(3, {(0, 2): 1, (3, 0): -1}))
    assert loc["affine"] == [{"point": (Fraction(0), Fraction(0)),
                              "multiplicity": 2}]
    assert not loc["infinity"] and not loc["infinity_unlocated"]
    assert not loc["affine_unlocated"]


def test_singular_locus_smooth_conic():
    loc = singular_locus(PlaneCurve(2, {(2, 0): 1, (0, 2): 1, (0, 0): -1}))
    assert loc["affine"] == [] and loc["infinity"] == []


def test_singular_locus_tacnode_model():
    loc = singular_locus(PlaneCurve(4, {(0, 2): 1, (4, 0): -1}))
    assert [p["point"] for p in loc["affine"]] == [(0, 0)]
    assert loc["affine"][0]["multiplicity"] == 2
    # the two branches also meet at the vertical direction at infinity
    assert loc["infinity"] == [{"direction": (Fraction(0), Fraction(1))}]


def test_singular_locus_rejects_non_squarefree():
    with pytest.raises(ValueError):
        singular_locus(PlaneCurve(4, {(0, 2): 1, (2, 1): -2, (4, 0): 1}))


def test_singular_locus_irrational_node_counted():
    # (y - x^2 + 2)(y + x^2 - 2) has nodes at x^2 = 2: not rational, so the
    # two points come back counted against their eliminant
    f = {(0, 2): 1, (4, 0): -1, (2, 0): 4, (0, 0): -4}
    loc = singular_locus(PlaneCurve(4, f))
    assert loc["affine"] == []
    assert len(loc["affine_unlocated"]) == 1
    entry = loc["affine_unlocated"][0]
    assert entry["degree"] == 2 and entry["count"] == 2


def test_synthesize_three_nodes():
    curve, union = synthesize(SingularitySpec(tacnodes=(1, 1, 1)), 4, seed=8)
    assert not curve.is_zero()
    for ec in union.components:
        H = ideal_subspace(ec, max(curve.d, 3))
        assert contains(H, to_local(curve.coeffs, ec))
        assert verify_sharp(curve, ec).ok


def test_synthesize_below_bound():
    with pytest.raises(ValueError):
        synthesize(SingularitySpec(tacnodes=(1, 1, 1)), 3, seed=8)


def test_driver_three_tacnodes_sextic():
    rep = existence_driver(SingularitySpec(tacnodes=(2, 2, 2)), seed=5)
    assert rep["degree"] == 6
    assert rep["verdict"] == "ok"
    assert rep["length_check"]


def test_driver_cuspidal_cubic_equisingular():
    # the synthesized cubic is certified equisingular to an ordinary cusp
    # through its own cluster, not compared coefficientwise to y^2 - x^3
    rep = existence_driver(SingularitySpec(cusps=(1,)), seed=2, degree=3)
    assert rep["verdict"] == "ok"
    assert rep["total_length"] == 6


def test_driver_rejects_weight_five():
    with pytest.raises(ValueError):
        existence_driver(SingularitySpec(tacnodes=(5,)), seed=1)


def test_driver_mixed():
    rep = existence_driver(SingularitySpec(tacnodes=(3,), cusps=(2,)),
                            seed=9)
    assert rep["degree"] == 6 and rep["verdict"] == "ok"


def test_dk_maximal_rank_small():
    rep_ok = max_rank(SchemeUnion((dk_scheme(5, seed=3),)))
    assert rep_ok["ok"]
    rep_bad = max_rank(SchemeUnion((dk_scheme(6, seed=3),)))
    fails = [d for d in rep_bad["detail"] if d["verdict"] != "ok"]
    assert [f["degree"] for f in fails] == [3] and fails[0]["defect"] == 1
