"""JSON schemas for clusters, unions, curves, and singularity lists.

Rationals travel as exact strings "p" or "p/q" in lowest terms with a
positive denominator; anything else is rejected.  Cluster files look like

    {"chains": [{"base": ["1", "-2/3"],      # embedded chains only
                 "shear": "0",                # optional
                 "points": [
                    {"kind": "root", "mult": 3},
                    {"kind": "free", "mult": 2, "lambda": "1/2"},
                    {"kind": "satellite", "mult": 1, "extra_prox": 0}]}]}

with extra_prox a 0-based index into the same chain.  A file whose chains
all carry bases (and lambdas on free points) parses as a SchemeUnion of
embedded clusters; without them it parses as a combinatorial
WeightedCluster.  Curve files carry {"degree": d, "coefficients":
{"a,b": "p/q"}}; singularity lists carry {"tacnodes": [...], "cusps":
[...]}.
"""

import json
from fractions import Fraction
from math import gcd

from .clusters import Cluster, WeightedCluster
from .local_algebra import EmbeddedCluster
from .plane_systems import SchemeUnion
from .synthesis import PlaneCurve, SingularitySpec


class SchemaError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__("%s: %s" % (path, message))


def parse_fraction(text, path="value"):
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise SchemaError(path, "expected a rational string, got %r" % (text,))
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise SchemaError(path, "malformed rational %r" % text) from None
    if q == 0:
        raise SchemaError(path, "zero denominator in %r" % text)
    if q < 0:
        raise SchemaError(path, "denominator must be positive in %r" % text)
    if sep and gcd(abs(p), q) != 1:
        raise SchemaError(path, "rational %r is not in lowest terms" % text)
    return Fraction(p, q)


def format_fraction(v):
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return "%d/%d" % (v.numerator, v.denominator)


def _parse_chain(obj, path):
    pts = obj.get("points")
    if not isinstance(pts, list) or not pts:
        raise SchemaError(path + ".points", "expected a nonempty list")
    extras = []
    mults = []
    lambdas = []
    for k, p in enumerate(pts):
        pp = "%s.points[%d]" % (path, k)
        if not isinstance(p, dict):
            raise SchemaError(pp, "expected an object")
        kind = p.get("kind")
        if kind not in ("root", "free", "satellite"):
            raise SchemaError(pp + ".kind", "expected root|free|satellite")
        if (kind == "root") != (k == 0):
            raise SchemaError(pp + ".kind", "the first point and only the "
                              "first point is the root")
        if "mult" not in p or not isinstance(p["mult"], int):
            raise SchemaError(pp + ".mult", "expected an integer")
        mults.append(p["mult"])
        if kind == "satellite":
            t = p.get("extra_prox")
            if not isinstance(t, int):
                raise SchemaError(pp + ".extra_prox", "expected an integer")
            extras.append(t)
            if "lambda" in p:
                raise SchemaError(pp, "satellites carry no lambda")
            lambdas.append(None)
        else:
            extras.append(None)
            lam = p.get("lambda")
            lambdas.append(None if lam is None
                           else parse_fraction(lam, pp + ".lambda"))
    base = obj.get("base")
    if base is not None:
        if (not isinstance(base, list)) or len(base) != 2:
            raise SchemaError(path + ".base", "expected [x, y]")
        base = (parse_fraction(base[0], path + ".base[0]"),
                parse_fraction(base[1], path + ".base[1]"))
    shear = parse_fraction(obj.get("shear", "0"), path + ".shear")
    return extras, mults, lambdas, base, shear


def parse_cluster_data(data, path="$"):
    """Cluster JSON -> WeightedCluster (combinatorial) or SchemeUnion."""
    chains = data.get("chains")
    if not isinstance(chains, list) or not chains:
        raise SchemaError(path + ".chains", "expected a nonempty list")
    parsed = [_parse_chain(c, "%s.chains[%d]" % (path, idx))
              for idx, c in enumerate(chains)]
    embedded = any(base is not None for _, _, _, base, _ in parsed)
    if not embedded:
        all_extras = tuple(tuple(extras) for extras, _, _, _, _ in parsed)
        all_mults = tuple(m for _, mults, _, _, _ in parsed for m in mults)
        return WeightedCluster(Cluster(all_extras), all_mults)
    comps = []
    bases = set()
    for idx, (extras, mults, lambdas, base, shear) in enumerate(parsed):
        p = "%s.chains[%d]" % (path, idx)
        if base is None:
            raise SchemaError(p + ".base", "all chains of a union need bases")
        if base in bases:
            raise SchemaError(p + ".base", "duplicate base point")
        bases.add(base)
        for k in range(1, len(extras)):
            if extras[k] is None and lambdas[k] is None:
                raise SchemaError("%s.points[%d].lambda" % (p, k),
                                  "free points of an embedded chain need a "
                                  "lambda")
        try:
            wc = WeightedCluster(Cluster((tuple(extras),)), tuple(mults))
            comps.append(EmbeddedCluster(wc, tuple(lambdas), base, shear))
        except ValueError as exc:
            raise SchemaError(p, str(exc)) from None
    try:
        return SchemeUnion(tuple(comps))
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def parse_curve_data(data, path="$"):
    d = data.get("degree")
    if not isinstance(d, int) or d < 0:
        raise SchemaError(path + ".degree", "expected a nonnegative integer")
    co = data.get("coefficients")
    if not isinstance(co, dict):
        raise SchemaError(path + ".coefficients", "expected an object")
    coeffs = {}
    for key, val in co.items():
        try:
            a, b = (int(t) for t in key.split(","))
        except ValueError:
            raise SchemaError("%s.coefficients[%r]" % (path, key),
                              "key must be 'a,b'") from None
        if a < 0 or b < 0 or a + b > d:
            raise SchemaError("%s.coefficients[%r]" % (path, key),
                              "monomial outside degree %d" % d)
        coeffs[(a, b)] = parse_fraction(val, "%s.coefficients[%r]"
                                        % (path, key))
    return PlaneCurve(d, coeffs)


def parse_spec_data(data, path="$"):
    tac = data.get("tacnodes", [])
    cusp = data.get("cusps", [])
    for name, lst in (("tacnodes", tac), ("cusps", cusp)):
        if not isinstance(lst, list) or any(not isinstance(v, int)
                                            for v in lst):
            raise SchemaError("%s.%s" % (path, name),
                              "expected a list of integers")
    try:
        return SingularitySpec(tuple(tac), tuple(cusp))
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def parse_inputs(path):
    """Load a JSON file and dispatch on its shape: cluster/union files have
    "chains", curves have "degree"+"coefficients", singularity lists have
    "tacnodes"/"cusps"."""
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", "not valid JSON: %s" % exc) from None
    if not isinstance(data, dict):
        raise SchemaError("$", "expected a JSON object")
    if "chains" in data:
        return parse_cluster_data(data)
    if "degree" in data and "coefficients" in data:
        return parse_curve_data(data)
    if "tacnodes" in data or "cusps" in data:
        return parse_spec_data(data)
    raise SchemaError("$", "unrecognized input shape")


def cluster_to_data(obj):
    """WeightedCluster | EmbeddedCluster | SchemeUnion -> JSON-ready dict."""
    if isinstance(obj, SchemeUnion):
        return {"chains": [cluster_to_data(ec)["chains"][0]
                           for ec in obj.components]}
    if isinstance(obj, EmbeddedCluster):
        chain = _chain_data(obj.weighted.cluster.chains[0],
                            obj.mults, obj.lambdas)
        chain["base"] = [format_fraction(obj.base[0]),
                         format_fraction(obj.base[1])]
        if obj.shear:
            chain["shear"] = format_fraction(obj.shear)
        return {"chains": [chain]}
    wc = obj
    chains = []
    off = 0
    for ch in wc.cluster.chains:
        chains.append(_chain_data(ch, wc.mults[off:off + len(ch)],
                                  (None,) * len(ch)))
        off += len(ch)
    return {"chains": chains}


def _chain_data(extras, mults, lambdas):
    pts = []
    for k in range(len(extras)):
        if k == 0:
            p = {"kind": "root", "mult": mults[k]}
        elif extras[k] is None:
            p = {"kind": "free", "mult": mults[k]}
            if lambdas[k] is not None:
                p["lambda"] = format_fraction(lambdas[k])
        else:
            p = {"kind": "satellite", "mult": mults[k],
                 "extra_prox": extras[k]}
        pts.append(p)
    return {"points": pts}


def curve_to_data(curve):
    return {"degree": curve.d,
            "coefficients": {"%d,%d" % e: format_fraction(c)
                             for e, c in sorted(curve.coeffs.items())},
            "chart": "affine x,y"}


def jsonable(obj):
    """Recursively convert Fractions and tuples for json.dumps."""
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj
