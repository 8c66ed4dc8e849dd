"""Rank-metric codes and the systems correspondence.

A code is stored by its generator matrix; the associated system is the
F_q-span of the columns.  Weights come from the geometric identity
w(xG) = n - dim(U /\\ x^perp), cross-checked against direct codeword
enumeration at small sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import plinalg
from .gfcore import MAX_FIELD_SIZE, FieldCtx, FieldError
from .subspaces import (
    ClassificationError,
    QSubspace,
    linear_set,
    projective_points,
)


@dataclass
class RankCode:
    """A k-row generator matrix over F_{q^n}; length = column count."""

    ctx: FieldCtx
    rows: tuple  # k tuples of length-n entries

    def __post_init__(self):
        ks = {len(r) for r in self.rows}
        assert len(ks) == 1
        assert _fqn_row_rank(self.ctx, self.rows) == len(self.rows), "rows dependent over F_{q^n}"

    @property
    def k(self):
        return len(self.rows)

    @property
    def length(self):
        return len(self.rows[0])

    def column_system(self) -> QSubspace:
        """The F_q-span of the columns, a subspace of F_{q^n}^k."""
        cols = list(zip(*self.rows))
        return QSubspace.span(self.ctx, self.k, cols)

    def is_nondegenerate(self):
        """Columns F_q-independent."""
        ctx = self.ctx
        rows = []
        for col in zip(*self.rows):
            flat = []
            for x in col:
                flat.extend(ctx.to_vector(x))
            rows.append(flat)
        return plinalg.rank(rows, ctx.p) == self.length

    def encode(self, x):
        """The codeword x G for a message x in F_{q^n}^k."""
        ctx = self.ctx
        out = []
        for j in range(self.length):
            acc = 0
            for i in range(self.k):
                acc = ctx.add(acc, ctx.mul(x[i], self.rows[i][j]))
            out.append(acc)
        return tuple(out)


def _fqn_row_rank(ctx, rows):
    """Rank over F_{q^n}: Gaussian elimination with field arithmetic."""
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = ctx.inv(mat[rank][col])
        mat[rank] = [ctx.mul(inv, x) for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


@dataclass
class WeightDistribution:
    """weight -> codeword count over the q^(nk) - 1 nonzero words."""

    counts: dict
    minimum_distance: int

    def total(self):
        return sum(self.counts.values())


def code_from_system(u: QSubspace, basis=None) -> RankCode:
    """Generator matrix whose columns are an F_q-basis of U.

    The code length is dim_Fq(U); U must span the ambient F_{q^n}^k.
    """
    ctx = u.ctx
    if u.spanned_fqn_dim() != u.k:
        raise FieldError("degenerate system: F_{q^n}-span is not the full space")
    if basis is None:
        basis = u.fq_basis()
    else:
        span = QSubspace.span(ctx, u.k, basis)
        if span.basis != u.basis or len(basis) != u.dim():
            raise FieldError("given vectors are not an F_q-basis of U")
    rows = tuple(tuple(b[i] for b in basis) for i in range(u.k))
    code = RankCode(ctx, rows)
    assert code.column_system().basis == u.basis
    assert code.is_nondegenerate()
    return code


def codeword_weight(ctx, c) -> int:
    """F_q-dimension of the span of the entries (direct oracle)."""
    rows = []
    g = ctx.q_generator
    for x in c:
        scal = 1
        for _ in range(ctx.h):
            rows.append(ctx.to_vector(ctx.mul(scal, x)))
            scal = ctx.mul(scal, g)
    return plinalg.rank(rows, ctx.p) // ctx.h if rows else 0


def _point_weight_geometric(ctx, u: QSubspace, x):
    """n - dim(U /\\ x^perp) via the F_q-linear map v -> v . x."""
    rows = []
    for row in u.basis:
        from .subspaces import unflatten

        v = unflatten(ctx, row, u.k)
        img = 0
        for a, b in zip(v, x):
            img = ctx.add(img, ctx.mul(a, b))
        rows.append(ctx.to_vector(img))
    rank = plinalg.rank(rows, ctx.p)
    assert rank % ctx.h == 0
    return rank // ctx.h


def weight_distribution(code: RankCode) -> WeightDistribution:
    """Geometric distribution, cross-checked by direct enumeration.

    Each projective message point contributes q^n - 1 words of weight
    n - dim(U /\\ x^perp); the direct check runs whenever
    q^(nk) <= 2^20.
    """
    ctx = code.ctx
    if not code.is_nondegenerate():
        raise FieldError("degenerate code")
    u = code.column_system()
    counts = {}
    mult = ctx.size - 1
    for x in projective_points(ctx, code.k):
        w = _point_weight_geometric(ctx, u, x)
        counts[w] = counts.get(w, 0) + mult
    assert sum(counts.values()) == ctx.size ** code.k - 1
    if ctx.size ** code.k <= MAX_FIELD_SIZE:
        direct = {}
        for x in itertools.product(range(ctx.size), repeat=code.k):
            if any(x):
                w = codeword_weight(ctx, code.encode(x))
                direct[w] = direct.get(w, 0) + 1
        assert direct == counts, "geometric and direct distributions differ"
    return WeightDistribution(counts, min(w for w in counts if w > 0))


def iclub_code(recipe) -> RankCode:
    """The three-weight code of an i-club recipe; counts are asserted.

    Weights are n - i, n - 1 and n with q^n - 1, (q^n - 1)(q^(n-1) +
    ... + q^i) and (q^n - 1)(q^n - q^(n-1) - ... - q^i) words.
    """
    rep = recipe.verify()
    if rep.rank != recipe.ctx.n:
        raise ClassificationError("recipe does not have rank n")
    code = code_from_system(recipe.subspace)
    dist = weight_distribution(code)
    ctx = recipe.ctx
    q, n, i = ctx.q, ctx.n, recipe.index
    mid = sum(q ** j for j in range(i, n))
    expect = {n - i: q ** n - 1, n - 1: (q ** n - 1) * mid, n: (q ** n - 1) * (q ** n - mid)}
    expect = {w: c for w, c in expect.items() if c}
    assert dist.counts == expect, (dist.counts, expect)
    return code


def club_index_from_distribution(ctx, dist: WeightDistribution):
    """The converse reading: i with weights {n-i, n-1, n} and q^n - 1
    words at weight n - i; None when the distribution does not match."""
    n = ctx.n
    q = ctx.q
    low = [w for w in dist.counts if w < n - 1]
    if len(low) != 1:
        return None
    i = n - low[0]
    if dist.counts[low[0]] != q ** n - 1:
        return None
    if set(dist.counts) - {n - i, n - 1, n}:
        return None
    return i


def blocking_code(w: QSubspace) -> RankCode:
    """The [n+1, 3, 1] code of a blocking-set system W of rank n + 1.

    The basis is ordered so the last column is (0, 0, 1), matching the
    generator matrix shape with third row (0, ..., 0, 1).  Reports the
    q-non-degeneracy flag and the weight-1/weight-2 counts.
    """
    ctx = w.ctx
    if w.k != 3 or w.dim() != ctx.n + 1:
        raise FieldError("need an arity-3 system of rank n + 1")
    basis = w.fq_basis()
    if (0, 0, 1) in basis:
        basis = [b for b in basis if b != (0, 0, 1)] + [(0, 0, 1)]
    elif w.contains((0, 0, 1)):
        head = [b for b in basis if b[2] == 0]
        if len(head) == ctx.n:
            basis = head + [(0, 0, 1)]
    code = code_from_system(w, basis)
    dist = weight_distribution(code)
    assert dist.minimum_distance == 1
    code.distribution = dist
    code.q_nondegenerate = _q_nondegenerate(ctx, w)
    code.weight1_count = dist.counts.get(1, 0)
    code.weight2_count = dist.counts.get(2, 0)
    return code


def _q_nondegenerate(ctx, w: QSubspace):
    """True iff some hyperplane W0 has <U /\\ W0> of F_{q^n}-dimension 2."""
    for x in projective_points(ctx, 3):
        inter = _hyperplane_intersection(ctx, w, x)
        if inter.dim() >= 2 and inter.spanned_fqn_dim() == 2:
            return True
    return False


def _hyperplane_intersection(ctx, w: QSubspace, x):
    from .subspaces import flatten, unflatten

    rows = []
    for row in w.basis:
        rows.append(row)
    # kernel of v -> v . x inside W
    mat = []
    for row in rows:
        v = unflatten(ctx, row, 3)
        img = 0
        for a, b in zip(v, x):
            img = ctx.add(img, ctx.mul(a, b))
        mat.append(ctx.to_vector(img))
    kern = plinalg.nullspace(_transpose(mat), ctx.p)
    out_rows = []
    for coeffs in kern:
        acc = [0] * len(rows[0])
        for cf, row in zip(coeffs, rows):
            if cf:
                acc = [(a + cf * b) % ctx.p for a, b in zip(acc, row)]
        out_rows.append(acc)
    return QSubspace(ctx, 3, out_rows, already_closed=True)


def _transpose(mat):
    return [list(col) for col in zip(*mat)]
