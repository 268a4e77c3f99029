"""Exact linear algebra over the rationals.

Everything here is exact: matrices carry Python ints or Fractions, ranks are
computed by fraction-free (Bareiss) elimination, and reduced row echelon forms
over Q are canonical so that row spaces can be compared by equality.

A single modular elimination is used as a fast certificate for the common
full-row-rank case: a nonzero minor mod p is nonzero over Q, so a full-rank
verdict mod p is exact.  Rank-deficient matrices always fall back to the
fraction-free integer elimination.
"""

from fractions import Fraction
from math import gcd

_P61 = (1 << 61) - 1  # Mersenne prime


def _to_sparse_int_rows(rows, ncols):
    """Normalize input rows (dicts or sequences, int or Fraction entries) to
    sparse integer dicts, scaling each row by the lcm of its denominators."""
    out = []
    for row in rows:
        if isinstance(row, dict):
            items = row.items()
        else:
            items = ((j, v) for j, v in enumerate(row))
        entries = {}
        den = 1
        for j, v in items:
            if not v:
                continue
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
            entries[j] = v
        if not entries:
            continue
        if den == 1:
            out.append({j: int(v) for j, v in entries.items()})
        else:
            out.append({j: int(v * den) for j, v in entries.items()})
    return out


def _structural_eliminate(sparse_rows):
    """Peel off singleton rows: a row with a single nonzero entry pins its
    column, and clearing that column in other rows is a pure entry deletion.
    Returns (rank_gained, remaining_rows)."""
    rank = 0
    rows = [dict(r) for r in sparse_rows]
    changed = True
    while changed:
        changed = False
        keep = []
        dead_cols = set()
        for r in rows:
            for c in dead_cols:
                r.pop(c, None)
            if not r:
                continue
            if len(r) == 1:
                col = next(iter(r))
                if col in dead_cols:
                    continue
                dead_cols.add(col)
                rank += 1
                changed = True
            else:
                keep.append(r)
        if dead_cols:
            for r in keep:
                for c in dead_cols:
                    r.pop(c, None)
            keep = [r for r in keep if r]
        rows = keep
    return rank, rows


def _densify(sparse_rows):
    cols = sorted({c for r in sparse_rows for c in r})
    colmap = {c: i for i, c in enumerate(cols)}
    dense = []
    for r in sparse_rows:
        row = [0] * len(cols)
        for c, v in r.items():
            row[colmap[c]] = v
        dense.append(row)
    return dense, len(cols)


def _rank_mod(dense, ncols, p=_P61):
    rows = [[v % p for v in r] for r in dense]
    rank = 0
    col = 0
    nrows = len(rows)
    while rank < nrows and col < ncols:
        piv = None
        for i in range(rank, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        prow = rows[rank]
        for i in range(rank + 1, nrows):
            f = rows[i][col]
            if f:
                f = f * inv % p
                ri = rows[i]
                for j in range(col, ncols):
                    ri[j] = (ri[j] - f * prow[j]) % p
        rank += 1
        col += 1
    return rank


def _rank_bareiss(dense, ncols):
    """Fraction-free Gaussian elimination; exact integer divisions only."""
    rows = [list(r) for r in dense]
    nrows = len(rows)
    rank = 0
    col = 0
    prev = 1
    while rank < nrows and col < ncols:
        piv = None
        best = None
        for i in range(rank, nrows):
            if rows[i][col]:
                nz = sum(1 for v in rows[i] if v)
                if best is None or nz < best:
                    best = nz
                    piv = i
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pv = prow[col]
        for i in range(rank + 1, nrows):
            ri = rows[i]
            f = ri[col]
            # the two-step Sylvester identity needs the update on every row,
            # zero pivot-column entry or not, for the divisions to stay exact
            if f:
                for j in range(col + 1, ncols):
                    ri[j] = (ri[j] * pv - f * prow[j]) // prev
                ri[col] = 0
            else:
                for j in range(col + 1, ncols):
                    if ri[j]:
                        ri[j] = ri[j] * pv // prev
        prev = pv
        rank += 1
        col += 1
    return rank


def rank(rows, ncols=None):
    """Exact rank of a matrix with int or Fraction entries.

    rows may be dicts (sparse, col -> value) or dense sequences.
    """
    if ncols is None:
        ncols = 0
        for row in rows:
            if isinstance(row, dict):
                ncols = max([ncols] + [c + 1 for c in row])
            else:
                ncols = max(ncols, len(row))
    sparse = _to_sparse_int_rows(rows, ncols)
    base, rest = _structural_eliminate(sparse)
    if not rest:
        return base
    dense, m = _densify(rest)
    rm = _rank_mod(dense, m)
    if rm == len(dense):
        return base + rm
    return base + _rank_bareiss(dense, m)


def rref(rows, ncols):
    """Canonical reduced row echelon form over Q.

    Returns (rref_rows, pivot_cols); rref_rows is a tuple of tuples of
    Fractions with leading ones, zero rows dropped.  Two matrices have the
    same row space iff their rref outputs are equal.
    """
    work = []
    for row in rows:
        if isinstance(row, dict):
            r = [Fraction(0)] * ncols
            for c, v in row.items():
                r[c] = Fraction(v)
        else:
            r = [Fraction(v) for v in row]
            if len(r) < ncols:
                r += [Fraction(0)] * (ncols - len(r))
        work.append(r)
    pivots = []
    rank_ = 0
    for col in range(ncols):
        piv = None
        for i in range(rank_, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[rank_], work[piv] = work[piv], work[rank_]
        prow = work[rank_]
        inv = 1 / prow[col]
        for j in range(col, ncols):
            prow[j] *= inv
        for i in range(len(work)):
            if i != rank_ and work[i][col]:
                f = work[i][col]
                ri = work[i]
                for j in range(col, ncols):
                    ri[j] -= f * prow[j]
        pivots.append(col)
        rank_ += 1
    return tuple(tuple(r) for r in work[:rank_]), pivots


def nullspace(rows, ncols):
    """Basis of the right kernel, read off a reduced echelon form.

    Returns a list of length-ncols tuples of Fractions; each vector has a 1
    in its own free column, so the list is itself in echelon form.
    """
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -red[i][fc]
        basis.append(tuple(vec))
    return basis


def row_space_contains(outer_rows, inner_rows, ncols):
    """True iff the row space of outer contains every row of inner."""
    r_outer = rank(list(outer_rows), ncols)
    r_join = rank(list(outer_rows) + list(inner_rows), ncols)
    return r_outer == r_join


def solve_dense(rows, rhs, ncols):
    """One exact solution x of rows @ x = rhs, or None if inconsistent."""
    aug = []
    for row, b in zip(rows, rhs):
        if isinstance(row, dict):
            r = [Fraction(0)] * ncols
            for c, v in row.items():
                r[c] = Fraction(v)
        else:
            r = [Fraction(v) for v in row] + [Fraction(0)] * (ncols - len(row))
        r.append(Fraction(b))
        aug.append(r)
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return x
