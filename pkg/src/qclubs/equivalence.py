"""Semilinear equivalence of club subspaces.

Any equivalence between clubs must send the unique heavy point to the
unique heavy point, so after moving both heavy points to <(1,0)> the
search reduces to upper-triangular matrices combined with a field
automorphism.  Candidate entries are generated from necessary
conditions (ratio tests on the heavy intersection and on the second
coordinate projection) and then fully verified, so a NotFound verdict
is an exhaustive-search certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gfcore import MAX_FIELD_SIZE, FieldCtx, FieldError
from .subspaces import (
    ClassificationError,
    QSubspace,
    flatten,
    linear_set,
    normalize_club,
    scale_subspace,
    subspace_from_elements,
    theorem35_case,
    unflatten,
)


@dataclass(frozen=True)
class SemilinearMap:
    """v -> M . v^(p^e) with M an invertible 2x2 matrix."""

    matrix: tuple  # ((A, B), (C, D))
    e: int

    def validate(self, ctx):
        (a, b), (c, d) = self.matrix
        det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
        if det == 0:
            raise FieldError("singular matrix")
        if not 0 <= self.e < ctx.deg:
            raise FieldError("automorphism exponent out of range")


def apply_semilinear(u: QSubspace, g: SemilinearMap) -> QSubspace:
    """Image subspace; dimension and weight spectrum are preserved."""
    ctx = u.ctx
    g.validate(ctx)
    (a, b), (c, d) = g.matrix
    rows = []
    for row in u.basis:
        x, y = unflatten(ctx, row, 2)
        x = ctx.frobenius_p(x, g.e)
        y = ctx.frobenius_p(y, g.e)
        img = (
            ctx.add(ctx.mul(a, x), ctx.mul(b, y)),
            ctx.add(ctx.mul(c, x), ctx.mul(d, y)),
        )
        rows.append(flatten(ctx, img))
    out = QSubspace(ctx, 2, rows, already_closed=True)
    assert out.dim() == u.dim()
    return out


def compose(ctx, g1: SemilinearMap, g2: SemilinearMap) -> SemilinearMap:
    """g1 after g2: v -> M1 (M2 v^(rho2))^(rho1)."""
    m2r = tuple(tuple(ctx.frobenius_p(x, g1.e) for x in row) for row in g2.matrix)
    m = _mat_mul(ctx, g1.matrix, m2r)
    return SemilinearMap(m, (g1.e + g2.e) % ctx.deg)


def _mat_mul(ctx, m1, m2):
    return tuple(
        tuple(
            ctx.add(ctx.mul(m1[i][0], m2[0][j]), ctx.mul(m1[i][1], m2[1][j]))
            for j in range(2)
        )
        for i in range(2)
    )


def _mat_inv(ctx, m):
    det = ctx.sub(ctx.mul(m[0][0], m[1][1]), ctx.mul(m[0][1], m[1][0]))
    dinv = ctx.inv(det)
    return (
        (ctx.mul(dinv, m[1][1]), ctx.mul(dinv, ctx.neg(m[0][1]))),
        (ctx.mul(dinv, ctx.neg(m[1][0])), ctx.mul(dinv, m[0][0])),
    )


# -- restricted search ---------------------------------------------------------


@dataclass
class EquivResult:
    """Outcome of the restricted search.

    status: "equivalent" (witness set), "inequivalent" (exhaustive
    NotFound with the heavy-point restriction provably WLOG) or
    "inconclusive".
    """

    status: str
    witness: SemilinearMap | None = None

    def __bool__(self):
        return self.status == "equivalent"


def _heavy_normalizer(u: QSubspace):
    """A matrix sending the heavy point to <(1,0)>; returns (report, M)."""
    report = linear_set(u)
    if report.club_index is None:
        raise ClassificationError("input is not a club")
    ctx = u.ctx
    heavy = next(pt for pt, w in report.points if w == report.club_index)
    v1 = next(v for v in u.vectors() if any(v) and _normalize(ctx, v) == heavy)
    v2 = next(
        v
        for v in u.vectors()
        if ctx.sub(ctx.mul(v1[0], v[1]), ctx.mul(v1[1], v[0])) != 0
    )
    # inverse of the column matrix [v1 v2] sends v1 -> (1,0), v2 -> (0,1)
    m = _mat_inv(ctx, ((v1[0], v2[0]), (v1[1], v2[1])))
    return report, m


def _normalize(ctx, v):
    lead = next(x for x in v if x)
    inv = ctx.inv(lead)
    return tuple(ctx.mul(inv, x) for x in v)


def _heavy_intersection(u: QSubspace):
    return frozenset(v[0] for v in u.vectors() if v[1] == 0)


def _projection(u: QSubspace):
    return frozenset(v[1] for v in u.vectors())


def restricted_equiv_search(u1: QSubspace, u2: QSubspace) -> EquivResult:
    """Decide whether g(U1) = U2 for some g in the semilinear group.

    Both inputs must classify as clubs.  A same-index pair is searched
    exhaustively over heavy-point-stabilizing maps x automorphisms;
    differing indices (or spectra) are immediately inequivalent.
    """
    ctx = u1.ctx
    if ctx is not u2.ctx:
        raise FieldError("context mismatch")
    if ctx.size ** 2 > MAX_FIELD_SIZE:
        raise FieldError("exhaustive search gated to q^(2n) <= 2^20")
    rep1, m1 = _heavy_normalizer(u1)
    rep2, m2 = _heavy_normalizer(u2)
    if rep1.spectrum != rep2.spectrum:
        return EquivResult("inequivalent")
    w1 = apply_semilinear(u1, SemilinearMap(m1, 0))
    w2 = apply_semilinear(u2, SemilinearMap(m2, 0))
    core = _triangular_search(w1, w2)
    if core is None:
        # WLOG needs the heavy point to be the unique point of its weight
        unique = rep1.spectrum.get(rep1.club_index, 0) == 1 and rep1.club_index >= 2
        return EquivResult("inequivalent" if unique else "inconclusive")
    g = compose(ctx, compose(ctx, SemilinearMap(_mat_inv(ctx, m2), 0), core), SemilinearMap(m1, 0))
    assert apply_semilinear(u1, g).basis == u2.basis
    return EquivResult("equivalent", g)


def _triangular_search(w1: QSubspace, w2: QSubspace) -> SemilinearMap | None:
    """First witness (A B; 0 D), e with the map sending W1 to W2.

    Candidates for A and D come from the necessary conditions
    A . S1^rho = S2 and D . Y1^rho = Y2 (heavy intersections and second
    coordinate projections); B from forcing one vector into W2.  Every
    candidate triple is verified in full, and all triples satisfying
    the necessary conditions are enumerated, so None is exhaustive.
    """
    ctx = w1.ctx
    s2 = _heavy_intersection(w2)
    y2 = _projection(w2)
    vecs2 = frozenset(w2.vectors())
    basis_rows1 = [unflatten(ctx, r, 2) for r in w1.basis]
    s1 = _heavy_intersection(w1)
    y1 = _projection(w1)
    v0 = next(v for v in w1.vectors() if v[1] != 0)
    by_second = {}
    for v in vecs2:
        by_second.setdefault(v[1], []).append(v[0])
    for e in range(ctx.deg):
        s1r = frozenset(ctx.frobenius_p(x, e) for x in s1)
        y1r = frozenset(ctx.frobenius_p(x, e) for x in y1)
        s1_pick = next(x for x in s1r if x)
        y1_pick = next(y for y in y1r if y)
        a_cands = []
        for x2 in s2:
            if x2 == 0:
                continue
            a = ctx.div(x2, s1_pick)
            if frozenset(ctx.mul(a, x) for x in s1r) == s2:
                a_cands.append(a)
        if not a_cands:
            continue
        d_cands = []
        for y in y2:
            if y == 0:
                continue
            d = ctx.div(y, y1_pick)
            if frozenset(ctx.mul(d, x) for x in y1r) == y2:
                d_cands.append(d)
        x0 = ctx.frobenius_p(v0[0], e)
        y0 = ctx.frobenius_p(v0[1], e)
        y0_inv = ctx.inv(y0)
        for a in a_cands:
            ax0 = ctx.mul(a, x0)
            for d in d_cands:
                for u in by_second.get(ctx.mul(d, y0), ()):
                    b = ctx.mul(ctx.sub(u, ax0), y0_inv)
                    if _check_map(ctx, basis_rows1, a, b, d, e, vecs2):
                        return SemilinearMap(((a, b), (0, d)), e)
    return None


def _check_map(ctx, basis_rows, a, b, d, e, vecs2):
    for x, y in basis_rows:
        x = ctx.frobenius_p(x, e)
        y = ctx.frobenius_p(y, e)
        img = (ctx.add(ctx.mul(a, x), ctx.mul(b, y)), ctx.mul(d, y))
        if img not in vecs2:
            return False
    return True


# -- invariants ---------------------------------------------------------------


@dataclass(frozen=True)
class ClubInvariants:
    """Orbit fingerprint; unequal fingerprints certify inequivalence."""

    spectrum: tuple  # sorted (weight, count) pairs
    index: int
    rank: int
    case: str | None = None  # trichotomy tag for (n-2)-clubs of rank n
    d: int | None = None  # dim of the product span <S . <1, b>>
    t: int | None = None  # degree of b over F_q
    dim_s_cap_bs: int | None = None

    def key(self):
        return (self.spectrum, self.index, self.rank, self.case, self.d, self.t, self.dim_s_cap_bs)


def invariants(u: QSubspace) -> ClubInvariants:
    rep = linear_set(u)
    if rep.club_index is None:
        raise ClassificationError("input is not a club")
    spectrum = tuple(sorted(rep.spectrum.items()))
    ctx = u.ctx
    n = ctx.n
    if rep.club_index == n - 2 and rep.rank == n:
        s, a, b, _ = normalize_club(u)
        case, d = theorem35_case(s, b)
        t = ctx.degree_over_base(b)
        cap = s.intersect(scale_subspace(s, b)).dim()
        return ClubInvariants(spectrum, rep.club_index, rep.rank, case, d, t, cap)
    return ClubInvariants(spectrum, rep.club_index, rep.rank)


# -- the subfield reduction ----------------------------------------------------


@dataclass
class ReductionCheck:
    ambient: bool
    reduced: bool

    @property
    def agree(self):
        return self.ambient == self.reduced

    def __bool__(self):
        return self.agree


def thm41_reduction_check(ctx: FieldCtx, f1, f2, a1, a2, b1, b2, omega1, omega2, r) -> ReductionCheck:
    """Check the ambient/subfield equivalence reduction on one pair.

    Ambient side: the two constructed rank-n subspaces are searched for
    semilinear equivalence.  Reduced side: the dimension-t slices
    {(f_i(x) - a_i x, b_i x) : x in F_{q^t}} are searched over maps
    (A 0; C D) with entries in F_{q^t} fixing <(0,1)>, combined with
    automorphisms of F_{q^t}.  Returns both verdicts.
    """
    from .constructions import club_scattered_trace

    rec1 = club_scattered_trace(ctx, f1, a1, b1, omega1, r)
    rec2 = club_scattered_trace(ctx, f2, a2, b2, omega2, r)
    ambient = bool(restricted_equiv_search(rec1.subspace, rec2.subspace))
    t = ctx.n // r
    slice1 = _slice_pairs(ctx, f1, a1, b1, t)
    slice2 = _slice_pairs(ctx, f2, a2, b2, t)
    reduced = _stabilizer_slice_search(ctx, slice1, slice2, t)
    return ReductionCheck(ambient, reduced)


def _slice_pairs(ctx, f_coeffs, a, b, t):
    from .linpoly import eval_subfield_poly

    pairs = set()
    for x in ctx.subfield_elements(t):
        fx = eval_subfield_poly(ctx, f_coeffs, x)
        pairs.add((ctx.sub(fx, ctx.mul(a, x)), ctx.mul(b, x)))
    return frozenset(pairs)


def _stabilizer_slice_search(ctx, slice1, slice2, t):
    """Exhaust (A 0; C D) over F_{q^t} with automorphisms x -> x^(p^j)."""
    sub = [x for x in ctx.subfield_elements(t)]
    nonzero = [x for x in sub if x]
    for j in range(ctx.h * t):
        s1r = frozenset(
            (ctx.frobenius_p(u, j), ctx.frobenius_p(v, j)) for u, v in slice1
        )
        for a0 in nonzero:
            for d0 in nonzero:
                for c0 in sub:
                    image = frozenset(
                        (ctx.mul(a0, u), ctx.add(ctx.mul(c0, u), ctx.mul(d0, v)))
                        for u, v in s1r
                    )
                    if image == slice2:
                        return True
    return False
