"""Exact Gaussian elimination over the prime field F_p.

Matrices are plain lists of equal-length int rows (entries reduced mod p).
Everything here is deterministic and exact; numpy is used only as a
container when convenient by callers, never for the arithmetic.
"""

from __future__ import annotations


def rref(rows, p):
    """Reduced row-echelon form.  Returns (rref_rows, pivot_columns).

    Zero rows are dropped; the result is the canonical form of the row
    space, so two spans are equal iff their rrefs are equal.
    """
    mat = [[v % p for v in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(v * inv) % p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows, p):
    return len(rref(rows, p)[0])


def nullspace(rows, p):
    """Basis of {x : M x = 0} for M with the given rows (x is a column)."""
    mat, pivots = rref(rows, p)
    ncols = len(rows[0]) if rows else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-mat[r][fc]) % p
        basis.append(vec)
    return basis


def in_rowspace(rows, vec, p):
    base, _ = rref(rows, p)
    aug, _ = rref(base + [list(vec)], p)
    return len(aug) == len(base)


def rowspace_key(rows, p):
    """Hashable canonical identifier of a row space."""
    mat, _ = rref(rows, p)
    return tuple(tuple(r) for r in mat)


def intersect_rowspaces(rows_a, rows_b, p):
    """Basis of the intersection of two row spaces."""
    a, _ = rref(rows_a, p)
    b, _ = rref(rows_b, p)
    if not a or not b:
        return []
    # v = x.A = y.B  <=>  (x | y) kernel of [A ; -B]^T
    stacked = a + [[(-v) % p for v in row] for row in b]
    ncols = len(a[0])
    transposed = [[stacked[r][c] for r in range(len(stacked))] for c in range(ncols)]
    out = []
    for kv in nullspace(transposed, p):
        x = kv[: len(a)]
        vec = [0] * ncols
        for xi, row in zip(x, a):
            if xi:
                vec = [(v + xi * w) % p for v, w in zip(vec, row)]
        if any(vec):
            out.append(vec)
    mat, _ = rref(out, p)
    return mat


def solve(rows, target, p):
    """One solution x of x.M = target over F_p, or None."""
    if not rows:
        return None
    aug = [list(row) + [0] * len(rows) for row in rows]
    for i in range(len(rows)):
        aug[i][len(rows[0]) + i] = 1
    mat, pivots = rref(aug, p)
    n = len(rows[0])
    x = [0] * len(rows)
    t = [v % p for v in target]
    for r, row in enumerate(mat):
        lead = next((c for c in range(n) if row[c] != 0), None)
        if lead is None:
            continue
        f = t[lead]
        if f:
            t = [(a - f * b) % p for a, b in zip(t, row[:n])]
            x = [(a + f * b) % p for a, b in zip(x, row[n:])]
    if any(t):
        return None
    return x
