"""Exact ideals of cluster schemes, computed by virtual transforms.

The computation walks a single chain point by point.  In the frame at the
current point the latest exceptional divisor is the axis {x = 0} and, when
the current point is a satellite, the older one is {y = 0}.  Moving to the
next point is one of three exact substitutions on truncated polynomials:

  free point with direction parameter t:  f(x, y) -> f(x, x*(y + t)) / x^m
  satellite over the corner with the previous exceptional divisor:
                                          f(x, y) -> f(x*y, x) / x^m
  satellite over the corner with the older divisor (its predecessor being a
  satellite over the same target):        f(x, y) -> f(x, x*y) / x^m

where m is the multiplicity prescribed at the point being left.  Monomials
whose x-exponent would go negative under the division are exactly the
condition coefficients emitted at that point, so dropping them keeps the
transform exact on everything that still matters.

Arithmetic is exact rational throughout; the symbolic pipeline works on
integer numerators against one running denominator.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from . import linalg
from .clusters import WeightedCluster, check_valid, matches_stratum, system
from .polyops import (monomials, monomial_index, p_clean, p_min_deg,
                      p_translate, vector_of)


@dataclass(frozen=True)
class EmbeddedCluster:
    """A weighted single-chain cluster with exact coordinates.

    base locates the first point in the plane; lambdas[k] is the direction
    parameter of free point k in the frame reached after k blowups (None for
    the root and for satellites, whose positions are corners of the frame).
    shear tilts the initial frame: plane coordinates relate to the local ones
    by X = x0 + x + shear*y, Y = y0 + y.
    """

    weighted: WeightedCluster
    lambdas: tuple
    base: tuple = (Fraction(0), Fraction(0))
    shear: Fraction = Fraction(0)

    def __post_init__(self):
        if self.weighted.cluster.root_count != 1:
            raise ValueError("an embedded cluster is a single chain")
        check_valid(self.weighted.cluster)
        lams = tuple(None if v is None else Fraction(v) for v in self.lambdas)
        object.__setattr__(self, "lambdas", lams)
        object.__setattr__(self, "base",
                           (Fraction(self.base[0]), Fraction(self.base[1])))
        object.__setattr__(self, "shear", Fraction(self.shear))
        extras = self.extras
        if len(lams) != self.r:
            raise ValueError("need one lambda slot per point")
        if self.r and lams[0] is not None:
            raise ValueError("the root carries no direction parameter")
        for k in range(1, self.r):
            if extras[k] is None:
                if lams[k] is None:
                    raise ValueError("free point %d needs a lambda" % k)
                if extras[k - 1] is not None and lams[k] == 0:
                    raise ValueError(
                        "lambda 0 at point %d is the satellite position over "
                        "the older divisor; forbidden for a free point" % k)
            elif lams[k] is not None:
                raise ValueError("satellite point %d carries no lambda" % k)

    @property
    def r(self):
        return self.weighted.r

    @property
    def mults(self):
        return self.weighted.mults

    @property
    def extras(self):
        return self.weighted.cluster.chains[0]

    def with_mults(self, mults):
        return EmbeddedCluster(self.weighted.with_mults(mults), self.lambdas,
                               self.base, self.shear)

    def satellite_targets_for_next(self):
        """Extra-proximity targets available to a new point on the last
        exceptional divisor."""
        k = self.r
        targets = []
        if k >= 2:
            targets.append(k - 2)
        if self.extras[k - 1] is not None and self.extras[k - 1] != k - 2:
            targets.append(self.extras[k - 1])
        return targets

    def extend_free(self, lam, mult=1):
        extras = self.extras + (None,)
        wc = WeightedCluster(
            type(self.weighted.cluster)((extras,)), self.mults + (mult,))
        return EmbeddedCluster(wc, self.lambdas + (Fraction(lam),),
                               self.base, self.shear)

    def extend_satellite(self, target, mult=1):
        if target not in self.satellite_targets_for_next():
            raise ValueError("no satellite position over point %d here" % target)
        extras = self.extras + (target,)
        wc = WeightedCluster(
            type(self.weighted.cluster)((extras,)), self.mults + (mult,))
        return EmbeddedCluster(wc, self.lambdas + (None,),
                               self.base, self.shear)


def embed(wc, lambdas=None, base=(0, 0), shear=0, rng=None, height=100):
    """Embed a single-chain weighted cluster; random admissible lambdas are
    drawn from rng where not supplied."""
    extras = wc.cluster.chains[0]
    lams = list(lambdas) if lambdas is not None else [None] * wc.r
    for k in range(1, wc.r):
        if extras[k] is None and lams[k] is None:
            if rng is None:
                raise ValueError("free point %d needs a lambda" % k)
            while True:
                v = Fraction(rng.randint(-height, height),
                             rng.randint(1, height))
                if v == 0 and extras[k - 1] is not None:
                    continue
                lams[k] = v
                break
    return EmbeddedCluster(wc, tuple(lams), base, shear)


def track_bounds(mults, slack=0):
    """Degree bounds for the truncated transforms: at the arrival step of
    point i only monomials of total degree < bound[i] can still influence a
    condition at some later point (a step lowers degrees by at most the
    multiplicity it divides out)."""
    r = len(mults)
    bounds = [0] * r
    cur = 0
    first = True
    for i in range(r - 1, -1, -1):
        cur = mults[i] + (0 if first else max(0, cur))
        first = False
        bounds[i] = max(cur, 0) + slack
    return bounds


def _step_sparse(state, den, kind, lam, m_leave, keep_bound):
    """Advance the symbolic state one blowup.  state maps local monomials to
    integer row dicts; den is the common denominator."""
    new = {}
    if kind == "free":
        p, q = lam.numerator, lam.denominator
        bmax = max((b for (_, b) in state), default=0)
        if q == 1:
            qpow = [1] * (bmax + 1)
            den_new = den
        else:
            qpow = [q ** e for e in range(bmax + 1)]
            den_new = den * qpow[bmax]
        for (a, b), vec in state.items():
            base_a = a + b - m_leave
            for l in range(b + 1):
                if base_a < 0 or base_a + l >= keep_bound:
                    continue
                coef = comb(b, l) * p ** (b - l) * qpow[bmax - (b - l)] \
                    if q != 1 else comb(b, l) * p ** (b - l)
                if not coef:
                    continue
                tgt = new.setdefault((base_a, l), {})
                for col, v in vec.items():
                    tgt[col] = tgt.get(col, 0) + coef * v
        return new, den_new
    # satellite moves carry coefficient 1
    for (a, b), vec in state.items():
        base_a = a + b - m_leave
        yexp = a if kind == "corner_prev" else b
        if base_a < 0 or base_a + yexp >= keep_bound:
            continue
        tgt = new.setdefault((base_a, yexp), {})
        for col, v in vec.items():
            tgt[col] = tgt.get(col, 0) + v
    return new, den


def _step_kinds(ec):
    """For each point k >= 1, which substitution reaches it."""
    extras = ec.extras
    kinds = [None]
    for k in range(1, ec.r):
        if extras[k] is None:
            kinds.append(("free", ec.lambdas[k]))
        elif extras[k] == k - 2:
            kinds.append(("corner_prev", None))
        else:
            kinds.append(("corner_old", None))
    return kinds


def _normalized_row(vec):
    g = 0
    for v in vec.values():
        g = gcd(g, v)
    if g > 1:
        vec = {c: v // g for c, v in vec.items()}
    first = min(vec)
    if vec[first] < 0:
        vec = {c: -v for c, v in vec.items()}
    return vec


def _emit_conditions(ec, init_state, den, slack=0):
    """Run the pipeline and collect one normalized integer row per condition
    (point k, local monomial of degree < m_k), in walk order."""
    mults = ec.mults
    bounds = track_bounds(mults, slack)
    kinds = _step_kinds(ec)
    state = {e: dict(vec) for e, vec in init_state.items()
             if e[0] + e[1] < bounds[0] and vec}
    rows = []
    for k in range(ec.r):
        if mults[k] > 0:
            for e in monomials(mults[k] - 1):
                vec = state.get(e)
                if vec:
                    rows.append((k, e, _normalized_row(vec)))
                else:
                    rows.append((k, e, {}))
        if k + 1 < ec.r:
            kind, lam = kinds[k + 1]
            state, den = _step_sparse(state, den, kind, lam, mults[k],
                                      bounds[k + 1])
    return rows


@dataclass(frozen=True)
class LocalConditionSystem:
    """Linear conditions, one row per (point, local monomial of degree below
    the point's multiplicity), on the coefficients of a germ at the base
    point (columns: monomials of total degree <= max_deg)."""

    max_deg: int
    labels: tuple           # (point index, local monomial) per row
    rows: tuple             # sparse integer rows, col index -> value
    ncols: int

    def rank(self):
        return linalg.rank(list(self.rows), self.ncols)

    def dense(self):
        out = []
        for r in self.rows:
            row = [0] * self.ncols
            for c, v in r.items():
                row[c] = v
            out.append(row)
        return out

    def apply(self, f):
        """Values of every condition functional on a germ (dict polynomial
        in the local frame)."""
        vec = vector_of(f, self.max_deg)
        return [sum(v * vec[c] for c, v in row.items()) for row in self.rows]


def required_truncation(mults):
    """Smallest degree bound covering every condition functional."""
    return max(track_bounds(mults)[0] - 1, 0) if mults else 0


def local_conditions(ec, max_deg=None):
    """Condition system of the embedded cluster.

    max_deg defaults to the minimal sound value; anything smaller than the
    per-step degree audit allows is rejected.
    """
    need = required_truncation(ec.mults)
    if max_deg is None:
        max_deg = need
    if max_deg < need:
        raise ValueError("truncation %d too small: conditions reach degree %d"
                         % (max_deg, need))
    idx = monomial_index(max_deg)
    init = {e: {i: 1} for e, i in idx.items()}
    emitted = _emit_conditions(ec, init, 1)
    labels = tuple((k, e) for k, e, _ in emitted)
    rows = tuple(vec for _, _, vec in emitted)
    return LocalConditionSystem(max_deg, labels, rows, len(idx))


def colength(ec):
    """dim O / H for the embedded cluster: the rank of its condition system.
    Depends only on the proximity structure and multiplicities."""
    return local_conditions(ec).rank()


@dataclass(frozen=True)
class IdealSubspace:
    """The ideal of a cluster scheme, truncated in degree.

    Stored dually: `conditions` is the canonical reduced row echelon form of
    the defining linear functionals on germs of degree <= trunc.  Two
    subspaces are equal iff truncation and conditions agree.  The kernel
    basis (the ideal side) is materialized on demand.
    """

    trunc: int
    conditions: tuple

    @property
    def ncols(self):
        return len(monomials(self.trunc))

    @property
    def codim(self):
        return len(self.conditions)

    @property
    def dim(self):
        return self.ncols - self.codim

    def basis(self):
        """Reduced echelon basis of the truncated ideal, one polynomial per
        vector."""
        from .polyops import poly_of
        vecs = linalg.nullspace(list(self.conditions), self.ncols)
        return [poly_of(v, self.trunc) for v in vecs]

    def contains_subspace(self, other):
        """other <= self as subspaces (needs equal truncations)."""
        if self.trunc != other.trunc:
            raise ValueError("truncation mismatch")
        return linalg.row_space_contains(list(other.conditions),
                                         list(self.conditions), self.ncols)


def _subspace_from_rows(rows, trunc):
    ncols = len(monomials(trunc))
    red, _ = linalg.rref(list(rows), ncols)
    return IdealSubspace(trunc, red)


def default_truncation(mults):
    return sum(m * (m + 1) // 2 for m in mults if m > 0)


def ideal_subspace(ec, trunc=None):
    """Truncated ideal of the embedded cluster scheme.

    trunc must be at least sum m_i(m_i+1)/2 (the ideal contains every
    monomial of that degree, so the truncation determines it).
    """
    need = default_truncation(ec.mults)
    if trunc is None:
        trunc = need
    if trunc < need:
        raise ValueError("truncation %d below the saturation degree %d"
                         % (trunc, need))
    cs = local_conditions(ec)
    idx = monomial_index(trunc)
    rows = []
    for row in cs.rows:
        rows.append(dict(row))  # column order of cs embeds in that of trunc
    if cs.max_deg > trunc:
        raise AssertionError("condition support exceeds the truncation")
    return _subspace_from_rows(rows, trunc)


def contains(H, f):
    """Ideal membership of a germ, degree <= truncation enforced."""
    f = p_clean(f)
    if p_min_deg(f) == -1:
        return True
    vec = vector_of(f, H.trunc)
    for row in H.conditions:
        if sum(row[c] * vec[c] for c in range(len(vec)) if vec[c] and row[c]):
            return False
    return True


def colon_subspace(H, f, e=None):
    """The conductor {g : f*g in H}, truncated at H.trunc.

    Products are formed at the enlarged degree and cut back; condition
    functionals extend by zero beyond the truncation because the ideal
    contains every monomial there.  e, when given, is the multiplicity
    vector of f along the cluster and is only sanity-checked.
    """
    f = p_clean(f)
    if not f:
        raise ValueError("colon by the zero germ")
    if e is not None and any(x < 0 for x in e):
        raise ValueError("negative multiplicities in e")
    mons = monomials(H.trunc)
    idx = monomial_index(H.trunc)
    rows = []
    for cond in H.conditions:
        row = {}
        for j, (a2, b2) in enumerate(mons):
            acc = Fraction(0)
            for (a, b), c in f.items():
                ee = (a + a2, b + b2)
                if ee[0] + ee[1] <= H.trunc:
                    v = cond[idx[ee]]
                    if v:
                        acc += c * v
            if acc:
                row[j] = acc
        rows.append(row)
    return _subspace_from_rows(rows, H.trunc)


def germ_transforms(ec, mults, f, slack=2):
    """Virtual transforms of a concrete germ along the chain, truncated.

    Yields the polynomial arriving at each point.  Raises if f fails a
    prescribed multiplicity (the virtual transform would not be a
    polynomial)."""
    bounds = track_bounds(mults, slack)
    kinds = _step_kinds(ec)
    g = {e: Fraction(c) for e, c in f.items() if e[0] + e[1] < bounds[0]}
    out = []
    for k in range(ec.r):
        out.append(dict(g))
        if k + 1 == ec.r:
            break
        m = mults[k]
        if m > 0:
            low = {e: c for e, c in g.items() if e[0] + e[1] < m and c}
            if low:
                raise ValueError(
                    "germ has multiplicity below %d at point %d" % (m, k))
        kind, lam = kinds[k + 1]
        new = {}
        for (a, b), c in g.items():
            if not c:
                continue
            base_a = a + b - m
            if kind == "free":
                for l in range(b + 1):
                    if base_a < 0 or base_a + l >= bounds[k + 1]:
                        continue
                    coef = comb(b, l) * lam ** (b - l)
                    if coef:
                        e2 = (base_a, l)
                        new[e2] = new.get(e2, Fraction(0)) + coef * c
            else:
                yexp = a if kind == "corner_prev" else b
                if base_a < 0 or base_a + yexp >= bounds[k + 1]:
                    continue
                e2 = (base_a, yexp)
                new[e2] = new.get(e2, Fraction(0)) + c
        g = p_clean(new)
    return out


def strict_transforms(ec, f, slack=2, bound_base=None):
    """Actual (non-virtual) transforms: at each point the attained
    multiplicity is divided out.  Returns (per-point polynomial, attained
    multiplicities).  Multiplicities beyond the audit bound come back as
    None together with a zero polynomial.

    The default audit bound tracks the prescribed multiplicities; pass
    bound_base to audit germs whose multiplicities may exceed them.
    """
    mults = ec.mults
    if bound_base is None:
        bound_base = [max(m, 1) for m in mults]
    bounds = track_bounds(bound_base, slack)
    kinds = _step_kinds(ec)
    g = {e: Fraction(c) for e, c in f.items() if e[0] + e[1] < bounds[0]}
    polys = []
    attained = []
    for k in range(ec.r):
        g = p_clean(g)
        polys.append(dict(g))
        e_k = p_min_deg(g)
        attained.append(e_k if e_k >= 0 else None)
        if k + 1 == ec.r:
            break
        if e_k < 0:
            polys.extend({} for _ in range(ec.r - k - 1))
            attained.extend(None for _ in range(ec.r - k - 1))
            break
        kind, lam = kinds[k + 1]
        new = {}
        for (a, b), c in g.items():
            base_a = a + b - e_k
            if kind == "free":
                for l in range(b + 1):
                    if base_a + l >= bounds[k + 1]:
                        continue
                    coef = comb(b, l) * lam ** (b - l)
                    if coef:
                        e2 = (base_a, l)
                        new[e2] = new.get(e2, Fraction(0)) + coef * c
            else:
                yexp = a if kind == "corner_prev" else b
                if base_a + yexp >= bounds[k + 1]:
                    continue
                e2 = (base_a, yexp)
                new[e2] = new.get(e2, Fraction(0)) + c
        g = new
    return polys, attained


def multiplicities_along(ec, f):
    """Attained multiplicity of the strict transforms of f at every cluster
    point (the e-vector of the germ along the cluster).

    Multiplicities only drop along a chain, so the starting one bounds the
    whole sequence and fixes a sound truncation even when the germ is fatter
    than the prescribed system."""
    e1 = p_min_deg(f)
    if e1 < 0:
        raise ValueError("zero germ has no multiplicities")
    base = [max(m, e1, 1) for m in ec.mults]
    _, es = strict_transforms(ec, f, slack=2, bound_base=base)
    if any(e is None for e in es):
        raise ValueError("germ multiplicity exceeds the audit bound")
    return es


def to_local(F, ec):
    """Plane polynomial -> germ in the embedded cluster's local frame."""
    return p_translate(F, ec.base[0], ec.base[1], ec.shear)


def sandwiched_ideal_point(ec, m1, i, j, I):
    """Locate the point on the last exceptional divisor whose one-more-point
    scheme cuts out a given ideal sandwiched between the (m1, 2^i, 1^j) and
    (m1, 2^{i+1}, 1^{j-1}) ideals of a stratum cluster.

    Returns ("free", lambda) or ("satellite", target); the claimed equality
    of subspaces is verified before returning.
    """
    r = i + j + 1
    if ec.r != r:
        raise ValueError("cluster has %d points, need i+j+1 = %d" % (ec.r, r))
    s = 2
    while matches_stratum(ec.weighted.cluster, s + 1):
        s += 1
    if not matches_stratum(ec.weighted.cluster, s):
        raise ValueError("cluster is not in a U_s pattern")
    if j < 1:
        raise ValueError("need j >= 1")
    m_minus = system(m1, i, j)
    m_plus = system(m1, i + 1, j - 1)
    H_minus = ideal_subspace(ec.with_mults(m_minus), I.trunc)
    H_plus = ideal_subspace(ec.with_mults(m_plus), I.trunc)
    if not (H_minus.contains_subspace(I) and I.contains_subspace(H_plus)):
        raise ValueError("ideal is not sandwiched between the two schemes")
    if not (H_plus.dim < I.dim < H_minus.dim):
        raise ValueError("sandwich is not strict")
    if H_minus.dim - H_plus.dim > 2:
        raise RuntimeError("dimension gap exceeds 2; should be impossible")
    f = next(g for g in I.basis() if not contains(H_plus, g))
    v = germ_transforms(ec, m_minus, f, slack=2)[-1]
    cx = v.get((1, 0), Fraction(0))
    cy = v.get((0, 1), Fraction(0))
    if v.get((0, 0), 0) or (cx == 0 and cy == 0):
        raise RuntimeError("virtual transform at the last point is not smooth")
    if cy == 0:
        q = ("satellite", r - 2)
        ext = ec.extend_satellite(r - 2)
    else:
        lam = -cx / cy
        if lam == 0 and ec.extras[r - 1] is not None:
            q = ("satellite", ec.extras[r - 1])
            ext = ec.extend_satellite(ec.extras[r - 1])
        else:
            q = ("free", lam)
            ext = ec.extend_free(lam)
    m0 = system(m1, i, j + 1)
    H_q = ideal_subspace(ext.with_mults(m0), I.trunc)
    if H_q != I:
        raise RuntimeError("witness verification failed: the one-more-point "
                           "scheme does not cut out the given ideal")
    return q
