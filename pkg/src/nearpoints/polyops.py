"""Bivariate polynomials as {(a, b): coefficient} dictionaries.

Coefficients are exact (int or Fraction).  These are plain helpers; heavier
elimination work (resultants, factorization over Q) goes through sympy in the
modules that need it.
"""

from fractions import Fraction
from math import gcd


def p_clean(p):
    return {e: c for e, c in p.items() if c}

def p_add(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return p_clean(out)

def p_scale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}

def p_mul(p, q):
    out = {}
    for (a, b), c in p.items():
        for (a2, b2), c2 in q.items():
            e = (a + a2, b + b2)
            out[e] = out.get(e, 0) + c * c2
    return p_clean(out)

def p_pow(p, n):
    out = {(0, 0): 1}
    for _ in range(n):
        out = p_mul(out, p)
    return out

def p_eval(p, x, y):
    return sum(c * x ** a * y ** b for (a, b), c in p.items())

def p_deg(p):
    return max((a + b for (a, b) in p), default=-1)

def p_min_deg(p):
    """Order of vanishing at the origin (multiplicity); -1 for the zero
    polynomial."""
    return min((a + b for (a, b), c in p.items() if c), default=-1)

def p_form(p, d):
    """Homogeneous part of degree d."""
    return {e: c for e, c in p.items() if e[0] + e[1] == d}

def p_truncate(p, bound):
    """Drop monomials of total degree >= bound."""
    return {e: c for e, c in p.items() if e[0] + e[1] < bound}

def p_diff_x(p):
    return {(a - 1, b): a * c for (a, b), c in p.items() if a}

def p_diff_y(p):
    return {(a, b - 1): b * c for (a, b), c in p.items() if b}

def p_translate(p, x0, y0, shear=0):
    """Rewrite p in coordinates centered at (x0, y0) with an optional shear:
    substitutes X = x0 + x + shear*y, Y = y0 + y."""
    px = {(0, 0): x0, (1, 0): 1}
    if shear:
        px[(0, 1)] = shear
    py = {(0, 0): y0, (0, 1): 1}
    dmax = max((a for (a, b) in p), default=0)
    emax = max((b for (a, b) in p), default=0)
    powx = [{(0, 0): 1}]
    for _ in range(dmax):
        powx.append(p_mul(powx[-1], px))
    powy = [{(0, 0): 1}]
    for _ in range(emax):
        powy.append(p_mul(powy[-1], py))
    out = {}
    for (a, b), c in p.items():
        term = p_scale(p_mul(powx[a], powy[b]), c)
        for e, v in term.items():
            out[e] = out.get(e, 0) + v
    return p_clean(out)

def p_primitive(p):
    """Scale to coprime integer coefficients with positive leading value
    (graded-lex leading)."""
    if not p:
        return {}
    den = 1
    for c in p.values():
        f = Fraction(c)
        den = den * f.denominator // gcd(den, f.denominator)
    ints = {e: int(Fraction(c) * den) for e, c in p.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g:
        ints = {e: v // g for e, v in ints.items()}
    lead = max(ints, key=lambda e: (e[0] + e[1], e[0]))
    if ints[lead] < 0:
        ints = {e: -v for e, v in ints.items()}
    return ints


def monomials(max_deg):
    """Monomial order used throughout: graded, then by x-exponent descending;
    (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ..."""
    out = []
    for d in range(max_deg + 1):
        for a in range(d, -1, -1):
            out.append((a, d - a))
    return out


def monomial_index(max_deg):
    return {e: i for i, e in enumerate(monomials(max_deg))}


def vector_of(p, max_deg):
    idx = monomial_index(max_deg)
    vec = [0] * len(idx)
    for e, c in p.items():
        if e[0] + e[1] > max_deg:
            raise ValueError("degree overflow: monomial %r beyond %d" % (e, max_deg))
        vec[idx[e]] = c
    return vec


def poly_of(vec, max_deg):
    mons = monomials(max_deg)
    return p_clean({mons[i]: c for i, c in enumerate(vec)})


# univariate helpers (lists of Fractions, index = degree)

def u_clean(u):
    while u and not u[-1]:
        u.pop()
    return u

def u_gcd(u, v):
    """Monic gcd over Q."""
    a = u_clean([Fraction(c) for c in u])
    b = u_clean([Fraction(c) for c in v])
    while b:
        a, b = b, u_mod(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a

def u_mod(a, b):
    a = [Fraction(c) for c in a]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        f = a[-1] / lb
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] -= f * b[i]
        a = u_clean(a)
        if not a:
            break
    return a

def u_diff(u):
    return [i * c for i, c in enumerate(u)][1:]

def u_order_at(u, root):
    """Multiplicity of `root` as a zero of the univariate polynomial."""
    u = u_clean([Fraction(c) for c in u])
    k = 0
    while u:
        # synthetic division by (t - root), highest degree first
        res = []
        acc = Fraction(0)
        for c in reversed(u):
            acc = acc * root + c
            res.append(acc)
        if res[-1]:
            break
        u = u_clean(list(reversed(res[:-1])))
        k += 1
    return k

def u_is_squarefree(u):
    g = u_gcd(u, u_diff(list(u)))
    return len(g) <= 1
