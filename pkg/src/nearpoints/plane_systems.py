"""Linear systems of plane curves through unions of cluster schemes.

Curves of degree d live in the affine chart as coefficient vectors over the
monomials X^a Y^b, a+b <= d.  Each embedded cluster contributes the rows of
its local condition system composed with the exact translation (and shear)
into its frame; the resulting matrix is the evaluation map whose rank decides
dimensions and maximal-rank verdicts.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .clusters import WeightedCluster, is_consistent, system, us_chain
from .local_algebra import _emit_conditions, embed, track_bounds
from .polyops import monomials, p_mul
from .sampling import DEFAULT_HEIGHT, distinct_points, rng_from
from .unloading import length, unload


@dataclass(frozen=True)
class SchemeUnion:
    """Embedded cluster schemes at pairwise distinct plane points."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        bases = [ec.base for ec in self.components]
        if len(set(bases)) != len(bases):
            raise ValueError("coincident base points in the union")

    @property
    def total_length(self):
        return sum(length(ec.weighted) for ec in self.components)

    def normalized(self):
        """Each component replaced by its consistent (unloaded) system; the
        defining ideals, hence all ranks, are unchanged."""
        return SchemeUnion(tuple(
            ec.with_mults(unload(ec.weighted).final.mults)
            for ec in self.components))


@dataclass(frozen=True)
class GlobalConditionMatrix:
    d: int
    rows: tuple          # sparse integer rows over curve-coefficient columns
    labels: tuple        # (component, point, local monomial) per row
    ncols: int

    def rank(self):
        return linalg.rank(list(self.rows), self.ncols)


def _translated_columns(ec, d, bound):
    """Initial pipeline state for a degree-d curve at this component: local
    monomials of degree < bound -> sparse row over global monomial columns.
    Returns (state, denominator)."""
    x0, y0 = ec.base
    s = ec.shear
    px = {(0, 0): x0, (1, 0): Fraction(1)}
    if s:
        px[(0, 1)] = s
    py = {(0, 0): y0, (0, 1): Fraction(1)}
    powx = [{(0, 0): Fraction(1)}]
    for _ in range(d):
        powx.append(p_mul(powx[-1], px))
    powy = [{(0, 0): Fraction(1)}]
    for _ in range(d):
        powy.append(p_mul(powy[-1], py))
    state_frac = {}
    for col, (a, b) in enumerate(monomials(d)):
        for e, v in p_mul(powx[a], powy[b]).items():
            if e[0] + e[1] >= bound:
                continue
            state_frac.setdefault(e, {})[col] = v
    den = 1
    for vec in state_frac.values():
        for v in vec.values():
            q = Fraction(v).denominator
            den = den * q // gcd(den, q)
    state = {e: {c: int(Fraction(v) * den) for c, v in vec.items()}
             for e, vec in state_frac.items()}
    return state, den


def condition_matrix(Z, d):
    """Evaluation map of degree-d curves on the union, in coordinates."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    ncols = (d + 1) * (d + 2) // 2
    rows = []
    labels = []
    for ci, ec in enumerate(Z.components):
        bound = track_bounds(ec.mults)[0] if ec.r else 0
        state, den = _translated_columns(ec, d, bound)
        for k, e, vec in _emit_conditions(ec, state, den):
            rows.append(vec)
            labels.append((ci, k, e))
    return GlobalConditionMatrix(d, tuple(rows), tuple(labels), ncols)


def ell(Z, d):
    """Projective dimension of the system of degree-d curves through Z;
    -1 means empty."""
    mat = condition_matrix(Z, d)
    return mat.ncols - 1 - mat.rank()


def expected_dimension(Z, d):
    return max(-1, (d + 1) * (d + 2) // 2 - 1 - Z.total_length)


def max_rank_in_degree(Z, d):
    """('ok', 0) when the conditions have the largest possible rank in
    degree d, else ('defect', k) with the shortfall.  Components are
    normalized to their consistent systems first so the row count equals the
    length."""
    Zn = Z.normalized()
    mat = condition_matrix(Zn, d)
    want = min(mat.ncols, Zn.total_length)
    have = mat.rank()
    if have == want:
        return ("ok", 0)
    return ("defect", want - have)


def level_floor(n):
    """Largest d with (d+1)(d+2)/2 <= n (and 0 when no such d exists)."""
    d = 0
    while (d + 2) * (d + 3) // 2 <= n:
        d += 1
    return d if (d + 1) * (d + 2) // 2 <= n else 0


def max_rank(Z, degrees=None):
    """Maximal-rank verdict with per-degree detail.

    The audited degrees default to [d_low, d_low+2], where d_low is the
    level floor of the total length; below the floor the conditions crush
    the whole space once they do at d_low, and independence propagates
    upward degree by degree, so the finite window decides the verdict.
    Pass degrees (an iterable) to audit any explicit set instead.
    """
    Zn = Z.normalized()
    L = Zn.total_length
    if degrees is None:
        d_low = level_floor(L)
        degrees = range(d_low, d_low + 3)
    detail = []
    ok = True
    for d in degrees:
        verdict, defect = max_rank_in_degree(Zn, d)
        detail.append({"degree": d, "verdict": verdict, "defect": defect,
                       "expected": expected_dimension(Zn, d),
                       "actual": ell(Zn, d)})
        if verdict != "ok":
            ok = False
    return {"ok": ok, "length": L, "degrees": list(degrees),
            "detail": detail}


def generic_union(mult_systems, seed, height=DEFAULT_HEIGHT):
    """Union of free-chain components with the given multiplicity tuples at
    seeded random distinct points with random direction parameters."""
    rng = rng_from(seed, "generic-union", *map(tuple, mult_systems))
    bases = distinct_points(rng, len(mult_systems), height)
    comps = []
    for mults, base in zip(mult_systems, bases):
        from .clusters import free_chain
        wc = WeightedCluster(free_chain(len(mults)), tuple(mults))
        comps.append(embed(wc, rng=rng, base=base, height=height))
    return SchemeUnion(tuple(comps))


def max_rank_generic(mult_systems, seed, degrees=None, height=DEFAULT_HEIGHT):
    """max_rank on a seeded general-position realization.

    A defect triggers one independent re-draw: if the two draws disagree the
    report flags the configuration and keeps, per degree, the better rank
    (the worse draw was non-generic).
    """
    Z1 = generic_union(mult_systems, seed, height)
    rep1 = max_rank(Z1, degrees)
    if rep1["ok"]:
        rep1["flagged"] = False
        return rep1
    Z2 = generic_union(mult_systems, seed + 0x9E3779B9, height)
    rep2 = max_rank(Z2, degrees)
    if rep2["detail"] == rep1["detail"]:
        rep1["flagged"] = False
        return rep1
    merged = {"ok": rep2["ok"], "length": rep1["length"],
              "degrees": rep1["degrees"], "flagged": True,
              "detail": [d1 if d1["defect"] < d2["defect"] else d2
                         for d1, d2 in zip(rep1["detail"], rep2["detail"])]}
    merged["ok"] = all(d["verdict"] == "ok" for d in merged["detail"])
    return merged


EXCEPTION_SYSTEMS = (
    # (label, component multiplicity tuples, degree where maximal rank fails)
    ("(3,2)", ((3,), (2,)), 3),
    ("(4,2)", ((4,), (2,)), 4),
    ("(4,2^2)", ((4,), (2,), (2,)), 4),
    ("(5,2)", ((5,), (2,)), 5),
    ("(5,2^2)", ((5,), (2,), (2,)), 5),
    ("(4,2^6)", ((4,),) + ((2,),) * 6, 6),
    ("(2^2)", ((2,), (2,)), 2),
    ("(2^5)", ((2,),) * 5, 4),
)


def exception_catalog(seed=0, height=DEFAULT_HEIGHT):
    """Measure the catalog of superabundant systems at general points.

    Each entry reports the audited degrees, the degree at which maximal rank
    fails, and the measured defect there.
    """
    out = []
    for label, systems, bad_degree in EXCEPTION_SYSTEMS:
        rep = max_rank_generic(systems, rng_from(seed, label).randrange(2**32),
                               height=height)
        failures = {d["degree"]: d["defect"] for d in rep["detail"]
                    if d["verdict"] != "ok"}
        out.append({"system": label, "expected_degree": bad_degree,
                    "failures": failures, "report": rep})
    return out


def _head_system(m, i, j):
    """(m, 2^i, 1^j) as a multiplicity tuple; m = 0 means no multiple point."""
    return system(m if m > 0 else None, i, j)


def us_consistent(s, m, i, j):
    """Is (m, 2^i, 1^j) consistent on the U_s proximity pattern?

    m = 0 means there is no multiple point at all, which only makes sense
    on the free chain (satellites would be proximate to a weight-0 point).
    """
    if m < 0:
        raise ValueError("negative head multiplicity")
    mults = _head_system(m, i, j)
    if not mults:
        return True
    if m == 0:
        return s <= 1
    wc = WeightedCluster(us_chain(len(mults), s), mults)
    return is_consistent(wc)


def level_split(m, i, j, s):
    """Sandwich a consistent (m, 2^i, 1^j) on U_s between systems of exact
    level d and d+1: returns (m_minus, m_plus, d, eps) with
    length(m_minus) = (d+1)(d+2)/2 and length(m_plus) = (d+2)(d+3)/2."""
    if not us_consistent(s, m, i, j):
        raise ValueError("(%d, 2^%d, 1^%d) is not consistent in U_%d"
                         % (m, i, j, s))
    N = m * (m + 1) // 2 + 3 * i + j
    d = level_floor(N)
    eps = N - (d + 1) * (d + 2) // 2
    if not 0 <= eps <= d + 1:
        raise AssertionError("level surplus out of range")
    m_plus = _head_system(m, i, j + d + 2 - eps)
    if i >= eps:
        m_minus = _head_system(m, i - eps, j + 2 * eps)
    else:
        m_minus = _head_system(m, 0, j + 3 * i - eps)
    return m_minus, m_plus, d, eps


def stratum_embedding(s, mults, seed, base=(0, 0), height=DEFAULT_HEIGHT):
    """Seeded generic embedding of a U_s cluster carrying the given system."""
    rng = rng_from(seed, "stratum", s, tuple(mults))
    wc = WeightedCluster(us_chain(len(mults), s), tuple(mults))
    return embed(wc, rng=rng, base=base, height=height)


def stratum_ell(s, mults, d, seed, height=DEFAULT_HEIGHT):
    """ell of degree-d curves through a generic U_s scheme with the system."""
    ec = stratum_embedding(s, mults, seed, height=height)
    return ell(SchemeUnion((ec,)), d)
