"""F_q-subspaces of F_{q^n}^k and their linear sets on PG(k-1, q^n).

A QSubspace stores an F_p-basis (reduced row-echelon form, rows are the
k field coordinates flattened to F_p digits).  F_q-closure is imposed by
also spanning the multiples by a fixed generator of F_q, and checked as
an invariant, so dim over F_q is always the F_p-rank divided by h.

Linear sets are enumerated by walking the q^rank vectors of U and
grouping them by normalized projective point: a point of weight w
collects exactly q^w - 1 nonzero vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import plinalg
from .gfcore import FieldCtx, FieldError, divisors


class ClassificationError(ValueError):
    """Input does not have the structure the operation requires."""


# -- projective points ----------------------------------------------------

def normalize_point(ctx, vec):
    """Normal form of a projective point: first nonzero coordinate 1."""
    lead = next((v for v in vec if v != 0), None)
    if lead is None:
        raise FieldError("zero vector has no projective point")
    inv = ctx.inv(lead)
    return tuple(ctx.mul(inv, v) for v in vec)


def projective_points(ctx, k):
    """All points of PG(k-1, q^n) in deterministic order."""
    size = ctx.size
    if k == 1:
        return [(1,)]
    if k == 2:
        return [(0, 1)] + [(1, y) for y in range(size)]
    if k == 3:
        pts = [(0, 0, 1)]
        pts += [(0, 1, z) for z in range(size)]
        pts += [(1, y, z) for y in range(size) for z in range(size)]
        return pts
    raise FieldError("arity must be 1, 2 or 3")


def point_hyperplane_incidence(ctx, point, hyperplane):
    """True iff the point lies on the hyperplane (dual coordinates)."""
    acc = 0
    for a, b in zip(point, hyperplane):
        acc = ctx.add(acc, ctx.mul(a, b))
    return acc == 0


# -- subspaces -------------------------------------------------------------

class QSubspace:
    """An F_q-subspace of F_{q^n}^k held as a canonical F_p basis."""

    __slots__ = ("ctx", "k", "basis", "_vectors")

    def __init__(self, ctx: FieldCtx, k: int, rows, already_closed=False):
        if k not in (1, 2, 3):
            raise FieldError("arity must be 1, 2 or 3")
        self.ctx = ctx
        self.k = k
        mat, _ = plinalg.rref(rows, ctx.p)
        self.basis = tuple(tuple(r) for r in mat)
        self._vectors = None
        if not already_closed and not self._is_fq_closed():
            raise FieldError("row space is not closed under F_q-multiplication")

    # construction helpers

    @classmethod
    def span(cls, ctx, k, vectors):
        """F_q-span of the given vectors (tuples of k field elements)."""
        rows = []
        for v in vectors:
            if len(v) != k:
                raise FieldError(f"vector arity {len(v)} != {k}")
            g = ctx.q_generator
            scal = 1
            for _ in range(ctx.h):
                rows.append(flatten(ctx, scalar_mul(ctx, scal, v)))
                scal = ctx.mul(scal, g)
        return cls(ctx, k, rows, already_closed=True)

    @classmethod
    def zero(cls, ctx, k):
        return cls(ctx, k, [], already_closed=True)

    def _is_fq_closed(self):
        g = self.ctx.q_generator
        for row in self.basis:
            v = unflatten(self.ctx, row, self.k)
            gv = flatten(self.ctx, scalar_mul(self.ctx, g, v))
            if not plinalg.in_rowspace(list(self.basis), gv, self.ctx.p):
                return False
        return True

    # basic facts

    def dim_p(self):
        return len(self.basis)

    def dim(self):
        """Dimension over F_q."""
        assert len(self.basis) % self.ctx.h == 0
        return len(self.basis) // self.ctx.h

    def key(self):
        return self.basis

    def __eq__(self, other):
        return (
            isinstance(other, QSubspace)
            and self.ctx is other.ctx
            and self.k == other.k
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.k, self.basis))

    def __repr__(self):
        return f"QSubspace(k={self.k}, dim_q={self.dim()})"

    def vectors(self):
        """All q^dim vectors, cached; deterministic order."""
        if self._vectors is None:
            ctx = self.ctx
            vecs = [tuple([0] * self.k)]
            for row in self.basis:
                v = unflatten(ctx, row, self.k)
                new = []
                for w in vecs:
                    for c in range(1, ctx.p):
                        new.append(vec_add(ctx, w, scalar_mul(ctx, c, v)))
                vecs += new
            self._vectors = tuple(sorted(vecs))
        return self._vectors

    def contains(self, vec):
        return plinalg.in_rowspace(list(self.basis), flatten(self.ctx, vec), self.ctx.p)

    def _same_space(self, other):
        if self.ctx is not other.ctx or self.k != other.k:
            raise FieldError("context or arity mismatch")

    def sum(self, other):
        self._same_space(other)
        return QSubspace(self.ctx, self.k, list(self.basis) + list(other.basis), already_closed=True)

    def intersect(self, other):
        self._same_space(other)
        rows = plinalg.intersect_rowspaces(list(self.basis), list(other.basis), self.ctx.p)
        return QSubspace(self.ctx, self.k, rows, already_closed=True)

    def elements(self):
        """For k = 1: the subspace as a set of field elements."""
        if self.k != 1:
            raise FieldError("elements() is for arity 1")
        return [v[0] for v in self.vectors()]

    def fq_basis(self):
        """Greedy F_q-basis extracted from the F_p basis rows."""
        ctx = self.ctx
        chosen = []
        rows_acc = []
        for row in self.basis:
            v = unflatten(ctx, row, self.k)
            candidate = rows_acc + [flatten(ctx, scalar_mul(ctx, s, v)) for s in _fq_scalars(ctx)]
            if plinalg.rank(candidate, ctx.p) > plinalg.rank(rows_acc, ctx.p):
                chosen.append(v)
                rows_acc = candidate
        assert len(chosen) == self.dim()
        return chosen

    def spanned_fqn_dim(self):
        """Dimension over F_{q^n} of the F_{q^n}-span of the subspace."""
        ctx = self.ctx
        rows = []
        for u in self.fq_basis():
            acc = u
            for _ in range(ctx.deg):
                rows.append(flatten(ctx, acc))
                acc = scalar_mul(ctx, ctx.primitive, acc)
        r = plinalg.rank(rows, ctx.p)
        assert r % ctx.deg == 0
        return r // ctx.deg

    def to_text(self):
        """Semicolon-separated vectors, each a comma-separated int tuple."""
        return ";".join(",".join(str(x) for x in unflatten(self.ctx, row, self.k)) for row in self.basis)

    @classmethod
    def from_text(cls, ctx, k, text):
        vectors = []
        for part in text.split(";"):
            vectors.append(tuple(int(x) for x in part.split(",")))
        return cls.span(ctx, k, vectors)


def _fq_scalars(ctx):
    g = ctx.q_generator
    out = []
    acc = 1
    for _ in range(ctx.h):
        out.append(acc)
        acc = ctx.mul(acc, g)
    return out


def flatten(ctx, vec):
    out = []
    for coord in vec:
        out.extend(ctx.to_vector(coord))
    return out


def unflatten(ctx, row, k):
    d = ctx.deg
    return tuple(ctx.from_vector(row[i * d : (i + 1) * d]) for i in range(k))


def scalar_mul(ctx, c, vec):
    return tuple(ctx.mul(c, v) for v in vec)


def vec_add(ctx, u, v):
    return tuple(ctx.add(a, b) for a, b in zip(u, v))


def subspace_from_elements(ctx, elems):
    """Arity-1 subspace spanned over F_q by the given field elements."""
    return QSubspace.span(ctx, 1, [(e,) for e in elems])


def product_span(s: QSubspace, t: QSubspace) -> QSubspace:
    """<S.T>: the F_q-span of all pairwise products (arity 1 only)."""
    if s.k != 1 or t.k != 1:
        raise FieldError("product span needs arity-1 subspaces")
    s._same_space(t)
    ctx = s.ctx
    prods = [(ctx.mul(a[0], b[0]),) for a in s.fq_basis() for b in t.fq_basis()]
    return QSubspace.span(ctx, 1, prods)


def scale_subspace(s: QSubspace, c) -> QSubspace:
    ctx = s.ctx
    rows = [flatten(ctx, scalar_mul(ctx, c, unflatten(ctx, row, s.k))) for row in s.basis]
    return QSubspace(ctx, s.k, rows, already_closed=True)


def is_subfield_closed(s: QSubspace, t) -> bool:
    """True iff the arity-1 subspace is closed under F_{q^t}-multiplication."""
    ctx = s.ctx
    g = ctx.primitive_in_subfield(t)
    for row in s.basis:
        v = unflatten(ctx, row, s.k)
        if not plinalg.in_rowspace(list(s.basis), flatten(ctx, scalar_mul(ctx, g, v)), ctx.p):
            return False
    return True


def subfield_core(s: QSubspace, t) -> QSubspace:
    """Largest F_{q^t}-closed subspace contained in the arity-1 subspace."""
    ctx = s.ctx
    g = ctx.primitive_in_subfield(t)
    ginv = ctx.inv(g)
    current = s
    while True:
        scaled = scale_subspace(current, ginv)
        nxt = current.intersect(scaled)
        if nxt.dim_p() == current.dim_p():
            return current
        current = nxt


# -- linear sets ------------------------------------------------------------

@dataclass
class LinearSetReport:
    """Points with weights, the weight spectrum N_i, and a classification."""

    rank: int
    points: list = field(default_factory=list)  # (normalized point, weight)
    spectrum: dict = field(default_factory=dict)  # weight -> count
    tag: str = "Other"  # "Scattered" | "IClub(i)" | "Other"
    club_index: int | None = None

    @property
    def size(self):
        return len(self.points)

    def weight_of(self, point):
        for pt, w in self.points:
            if pt == point:
                return w
        return 0


def _exact_log(value, base):
    e = 0
    acc = 1
    while acc < value:
        acc *= base
        e += 1
    return e if acc == value else None


def linear_set(u: QSubspace) -> LinearSetReport:
    """Enumerate L_U with point weights; verifies the counting identities."""
    if u.k not in (2, 3):
        raise FieldError("linear sets live in arity 2 or 3")
    if u.dim() == 0:
        raise FieldError("the zero subspace defines no linear set")
    ctx = u.ctx
    q = ctx.q
    counts = {}
    for v in u.vectors():
        if any(v):
            pt = normalize_point(ctx, v)
            counts[pt] = counts.get(pt, 0) + 1
    points = []
    spectrum = {}
    for pt in sorted(counts):
        w = _exact_log(counts[pt] + 1, q)
        assert w is not None, "vector count per point must be q^w - 1"
        points.append((pt, w))
        spectrum[w] = spectrum.get(w, 0) + 1
    rank = u.dim()
    _check_counting_identities(q, rank, points, spectrum)
    tag, club_index = _classify(points, spectrum)
    return LinearSetReport(rank=rank, points=points, spectrum=spectrum, tag=tag, club_index=club_index)


def _check_counting_identities(q, rank, points, spectrum):
    size = len(points)
    assert size <= (q ** rank - 1) // (q - 1), "size bound violated"
    assert sum(spectrum.values()) == size
    total = sum(n * ((q ** i - 1) // (q - 1)) for i, n in spectrum.items())
    assert total == (q ** rank - 1) // (q - 1), "weight-sum identity violated"
    weights = sorted((w for _, w in points), reverse=True)
    if len(weights) >= 2:
        assert weights[0] + weights[1] <= rank, "two point weights exceed the rank"


def _classify(points, spectrum):
    heavy = [(pt, w) for pt, w in points if w >= 2]
    if not heavy:
        return "Scattered", None
    if len(heavy) == 1 and spectrum.get(1, 0) == len(points) - 1:
        return f"IClub({heavy[0][1]})", heavy[0][1]
    return "Other", None


def point_weight(u: QSubspace, point) -> int:
    """Weight of one projective point: dim_Fq(U /\\ W_P)."""
    ctx = u.ctx
    pt = normalize_point(ctx, point)
    rows = []
    for c in range(ctx.size):
        if c:
            rows.append(flatten(ctx, scalar_mul(ctx, c, pt)))
    line = QSubspace(ctx, u.k, rows, already_closed=True)
    return u.intersect(line).dim()


# -- the (S, a, b) club machinery -------------------------------------------

def sab_subspace(s: QSubspace, a, b) -> QSubspace:
    """U = (S x {0}) + <(1,1)> + <(a,b)> in F_{q^n}^2, b outside F_q."""
    ctx = s.ctx
    if s.k != 1:
        raise FieldError("S must be an arity-1 subspace")
    if ctx.is_in_subfield(b, 1):
        raise ClassificationError("b in F_q")
    gens = [(v[0], 0) for v in s.fq_basis()]
    gens += [(1, 1), (a, b)]
    u = QSubspace.span(ctx, 2, gens)
    assert u.dim() == s.dim() + 2
    return u


def club_from_SAB(s: QSubspace, a, b) -> QSubspace:
    """U = (S x {0}) + <(1,1)> + <(a,b)> in F_{q^n}^2.

    Requires 1 in S, a not in S, b not in F_q and dim S <= n - 2; the
    heavy/light weights of <(1,0)> and <(0,1)> are verified.
    """
    ctx = s.ctx
    if s.k != 1:
        raise FieldError("S must be an arity-1 subspace")
    problems = []
    if not s.contains((1,)):
        problems.append("1 not in S")
    if s.contains((a,)):
        problems.append("a in S")
    if ctx.is_in_subfield(b, 1):
        problems.append("b in F_q")
    if s.dim() > ctx.n - 2:
        problems.append("dim S > n - 2")
    if problems:
        raise ClassificationError("; ".join(problems))
    u = sab_subspace(s, a, b)
    h = s.dim()
    assert point_weight(u, (1, 0)) == h
    assert point_weight(u, (0, 1)) == 1
    return u


def weight2_points_bijection(s: QSubspace, a, b):
    """{<(-t + a, b)> : t in S /\\ (a + bS)}, the predicted weight-2 points."""
    ctx = s.ctx
    selems = set(s.elements())
    pts = []
    for sp in sorted(selems):
        t = ctx.add(a, ctx.mul(b, sp))
        if t in selems:
            pts.append(normalize_point(ctx, (ctx.add(ctx.neg(t), a), b)))
    return sorted(set(pts))


def theorem35_case(s: QSubspace, b):
    """Trichotomy tag by d = dim <S . <1, b>> for dim S = n - 2, 1 in S.

    Returns (tag, d) with tag in {"Case1", "Case2", "Case3"}.  Case3
    asserts n even, F_q(b) = F_{q^2} and S an F_{q^2}-subspace of the
    form c<1, g, ..., g^(n/2-2)>.
    """
    ctx = s.ctx
    n = ctx.n
    if s.dim() != n - 2 or not s.contains((1,)) or ctx.is_in_subfield(b, 1):
        raise ClassificationError("need dim S = n - 2, 1 in S, b outside F_q")
    d = product_span(s, subspace_from_elements(ctx, [1, b])).dim()
    if d == n:
        return "Case1", d
    if d == n - 1:
        return "Case2", d
    if d == n - 2:
        assert n % 2 == 0, "degenerate product span forces even n"
        assert ctx.degree_over_base(b) == 2
        assert is_subfield_closed(s, 2)
        assert _hyperplane_form_witness(s, 2) is not None
        return "Case3", d
    raise AssertionError(f"impossible product-span dimension {d}")


def theorem35_analysis(s: QSubspace, a, b):
    """Trichotomy for U = (S x {0}) + <(1,1)> + <(a,b)>, dim S = n - 2.

    Cases by d = dim <S . <1, b>> and the position of a:
      d = n     -> case "1": never a club; q^(n-4) weight-2 points.
      d = n - 1 -> club iff a outside <S . T>; non-club has q^(n-3)
                   weight-2 points; club splits into "2.1" (t = n,
                   S = c<1, b, ..., b^(n-3)>) and "2.2" (3 <= t <= n-3,
                   S = core + c<1, ..., b^(t-3)> with an F_{q^t} core).
      d = n - 2 -> case "3": t = 2, n even, S an F_{q^2}-subspace of
                   the form c<1, g, ..., g^(n/2-2)>; club iff a not in S.

    Returns a dict with keys case, d, t, is_club, wt2_points, size and
    case-specific witnesses.  Structural claims are asserted.
    """
    ctx = s.ctx
    n = ctx.n
    q = ctx.q
    if s.dim() != n - 2 or not s.contains((1,)) or ctx.is_in_subfield(b, 1):
        raise ClassificationError("need dim S = n - 2, 1 in S, b outside F_q")
    if s.contains((a,)):
        a_position = "in S"
    else:
        a_position = "outside S"
    t = ctx.degree_over_base(b)
    t_space = subspace_from_elements(ctx, [1, b])
    st = product_span(s, t_space)
    d = st.dim()
    out = {"d": d, "t": t, "a_position": a_position}
    if d == n:
        out.update(
            case="1",
            is_club=False,
            wt2_points=q ** (n - 4),
            size=q ** (n - 1) + q ** (n - 2) - q ** (n - 3) + 1,
        )
        return out
    if d == n - 1:
        if st.contains((a,)):
            out.update(case="2", is_club=False, wt2_points=q ** (n - 3), size=q ** (n - 1) + 1)
            return out
        out.update(is_club=True, wt2_points=0, size=q ** (n - 1) + q ** (n - 2) + 1)
        if t >= n - 2:
            assert t == n or n <= 4, "t > n - 2 forces t = n when n > 4"
            c = _cyclic_form_witness(s, b, 1, n - 2)
            assert c is not None, "case 2.1 must have S = c<1, b, ..., b^(n-3)>"
            out.update(case="2.1", c=c)
        else:
            assert t >= 3 and n % t == 0
            ell = n // t - 1
            core = subfield_core(s, t)
            assert core.dim_p() == ctx.h * t * ell, "case 2.2 core dimension"
            c = _complement_cyclic_witness(s, core, b, t)
            assert c is not None, "case 2.2 decomposition witness"
            out.update(case="2.2", core=core, c=c, ell=ell)
        return out
    if d == n - 2:
        assert n % 2 == 0, "degenerate product span forces even n"
        assert t == 2
        assert is_subfield_closed(s, 2)
        witness = _hyperplane_form_witness(s, 2)
        assert witness is not None, "case 3 hyperplane form"
        is_club = not s.contains((a,))
        out.update(case="3", is_club=is_club, witness=witness)
        if is_club:
            out.update(wt2_points=0, size=q ** (n - 1) + q ** (n - 2) + 1)
        else:
            out.update(wt2_points=q ** (n - 2), size=q ** (n - 2) + 1)
        return out
    raise AssertionError(f"impossible product-span dimension {d}")


def _cyclic_form_witness(s: QSubspace, b, t, m):
    """c with S = c <1, b, ..., b^(m-1)>_{F_{q^t}}, scanning c in S."""
    ctx = s.ctx
    for c in sorted(set(s.elements()) - {0}):
        gens = [ctx.mul(c, ctx.pow(b, i)) for i in range(m)]
        rows = []
        for g in gens:
            for sc in ctx.subfield_elements(t):
                if sc:
                    rows.append(flatten(ctx, ((ctx.mul(sc, g)),)))
        cand = QSubspace(ctx, 1, rows, already_closed=True)
        if cand.basis == s.basis:
            return c
    return None


def _complement_cyclic_witness(s: QSubspace, core: QSubspace, b, t):
    """c with S = core + c<1, b, ..., b^(t-3)> and c F_{q^t} meeting core
    trivially; scanning c in S."""
    ctx = s.ctx
    for c in sorted(set(s.elements()) - {0}):
        part = subspace_from_elements(ctx, [ctx.mul(c, ctx.pow(b, i)) for i in range(t - 2)])
        if part.intersect(core).dim() != 0:
            continue
        if core.sum(part).basis != s.basis:
            continue
        cline = subspace_from_elements(ctx, [ctx.mul(c, e) for e in ctx.subfield_elements(t) if e])
        if cline.intersect(core).dim() == 0:
            return c
    return None


def _hyperplane_form_witness(s: QSubspace, t):
    """Find (c, gamma) with S = c <1, gamma, ..., gamma^(m-1)>_{F_{q^t}},
    m = dim_{F_{q^t}}(S); deterministic scan, None when no witness."""
    ctx = s.ctx
    assert s.dim_p() % (ctx.h * t) == 0
    m = s.dim_p() // (ctx.h * t)
    for gamma in ctx.elements():
        # gamma must generate F_{q^n} over F_{q^t}
        if gamma == 0 or math.lcm(t, ctx.degree_over_base(gamma)) != ctx.n:
            continue
        for c in sorted(set(s.elements()) - {0}):
            gens = [(ctx.mul(c, ctx.pow(gamma, i)),) for i in range(m)]
            rows = []
            for g in gens:
                for sc in ctx.subfield_elements(t):
                    if sc:
                        rows.append(flatten(ctx, scalar_mul(ctx, sc, g)))
            cand = QSubspace(ctx, 1, rows, already_closed=True)
            if cand.basis == s.basis:
                return c, gamma
        return None  # c must lie in S itself; only gamma varies
    return None


def normalize_club(w: QSubspace):
    """Bring an h-club of rank h+2 to the (S, a, b) form.

    Returns (s, a, b, matrix) where matrix is the 2x2 change of
    coordinates with matrix . w = club_from_SAB(s, a, b) as subspaces.
    """
    ctx = w.ctx
    if w.k != 2:
        raise FieldError("normalization needs arity 2")
    report = linear_set(w)
    if report.club_index is None or report.rank != report.club_index + 2:
        raise ClassificationError("input is not an h-club of rank h + 2")
    heavy_pt = next(pt for pt, wt in report.points if wt == report.club_index)
    light_pt = next(pt for pt, wt in sorted(report.points) if wt == 1)
    v1 = _vector_on_point(w, heavy_pt)
    v2 = _vector_on_point(w, light_pt)
    m = _matrix_sending(ctx, v1, v2)
    u = apply_matrix(w, m)
    # S x {0} = U /\ <(1,0)>
    s_elems = [v[0] for v in u.vectors() if v[1] == 0]
    s = subspace_from_elements(ctx, s_elems)
    ab = next(
        v for v in u.vectors() if not ctx.is_in_subfield(v[1], 1)
    )
    a, b = ab
    # reduce a modulo S so the reported triple is small and a not in S
    assert not s.contains((a,))
    assert s.contains((1,))
    return s, a, b, m


def _vector_on_point(u: QSubspace, point):
    for v in u.vectors():
        if any(v) and normalize_point(u.ctx, v) == point:
            return v
    raise ClassificationError("point not on the linear set")


def _matrix_sending(ctx, v1, v2):
    """The 2x2 matrix with M v1 = (1,0) and M v2 = (1,1)."""
    det = ctx.sub(ctx.mul(v1[0], v2[1]), ctx.mul(v1[1], v2[0]))
    if det == 0:
        raise ClassificationError("chosen points coincide")
    dinv = ctx.inv(det)
    # inverse of the column matrix [v1 v2], then target columns (1,0),(1,1)
    inv = (
        (ctx.mul(dinv, v2[1]), ctx.mul(dinv, ctx.neg(v2[0]))),
        (ctx.mul(dinv, ctx.neg(v1[1])), ctx.mul(dinv, v1[0])),
    )
    # M = [[1,1],[0,1]]' ... columns (1,0) and (1,1): M = T . inv with T = [[1,1],[0,1]]
    t = ((1, 1), (0, 1))
    return mat_mul(ctx, t, inv)


def mat_mul(ctx, m1, m2):
    return tuple(
        tuple(
            ctx.add(ctx.mul(m1[i][0], m2[0][j]), ctx.mul(m1[i][1], m2[1][j]))
            for j in range(2)
        )
        for i in range(2)
    )


def apply_matrix(u: QSubspace, m) -> QSubspace:
    """Image of the subspace under an invertible k x k matrix (k = 2)."""
    ctx = u.ctx
    det = ctx.sub(ctx.mul(m[0][0], m[1][1]), ctx.mul(m[0][1], m[1][0]))
    if det == 0:
        raise FieldError("singular matrix")
    rows = []
    for row in u.basis:
        x, y = unflatten(ctx, row, 2)
        img = (
            ctx.add(ctx.mul(m[0][0], x), ctx.mul(m[0][1], y)),
            ctx.add(ctx.mul(m[1][0], x), ctx.mul(m[1][1], y)),
        )
        rows.append(flatten(ctx, img))
    return QSubspace(ctx, 2, rows, already_closed=True)


def lemma213_decompose(s: QSubspace, mu):
    """Case analysis of dim(S /\\ mu S) in {k, k-1} for dim S = k >= 2.

    Returns a dict with a "case" key: "a" (S is F_q(mu)-closed), "b1"
    (S = b <1, mu, ..., mu^(k-1)>), "b2" (S = core + b <1, ..., mu^(m-1)>)
    or "none".
    """
    ctx = s.ctx
    k = s.dim()
    if k < 2 or ctx.is_in_subfield(mu, 1):
        raise ClassificationError("need dim S >= 2 and mu outside F_q")
    t = ctx.degree_over_base(mu)
    inter = s.intersect(scale_subspace(s, mu)).dim()
    if inter == k:
        assert is_subfield_closed(s, t), "full intersection must give F_q(mu)-closure"
        return {"case": "a", "t": t, "intersection": inter}
    if inter == k - 1:
        if t >= k:
            for b in sorted(set(s.elements()) - {0}):
                cand = subspace_from_elements(ctx, [ctx.mul(b, ctx.pow(mu, i)) for i in range(k)])
                if cand.basis == s.basis:
                    return {"case": "b1", "t": t, "b": b, "intersection": inter}
            return {"case": "none", "t": t, "intersection": inter}
        ell, m = divmod(k, t)
        assert m > 0, "k - 1 intersection with t | k is impossible here"
        core = subfield_core(s, t)
        if core.dim_p() != ctx.h * t * ell:
            return {"case": "none", "t": t, "intersection": inter}
        for b in sorted(set(s.elements()) - {0}):
            part = subspace_from_elements(ctx, [ctx.mul(b, ctx.pow(mu, i)) for i in range(m)])
            if part.intersect(core).dim() == 0 and core.sum(part).basis == s.basis:
                bline = subspace_from_elements(ctx, [ctx.mul(b, e) for e in ctx.subfield_elements(t)])
                if bline.intersect(core).dim() == 0:
                    return {
                        "case": "b2",
                        "t": t,
                        "b": b,
                        "core": core,
                        "m": m,
                        "ell": ell,
                        "intersection": inter,
                    }
        return {"case": "none", "t": t, "intersection": inter}
    return {"case": "none", "t": t, "intersection": inter}
