"""Redei-type blocking sets and translation KM-arcs in PG(2, q^n).

A club on the line X2 = 0, extended by one extra base-field vector,
yields a blocking set whose line weights live in {1, 2, i+1, n}; in
even characteristic the symmetric-difference construction turns the
same data into a KM-arc whose lines meet it in 0, 2 or 2^i points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gfcore import FieldError
from .subspaces import (
    ClassificationError,
    QSubspace,
    flatten,
    linear_set,
    normalize_point,
    projective_points,
    unflatten,
)

MAX_LINE_ENUM = 256  # full line scans only while q^n stays at most this


@dataclass
class PointSet2D:
    """A set of normalized points of PG(2, q^n)."""

    ctx: object
    points: tuple
    tag: str = "Raw"

    def __post_init__(self):
        pts = sorted(set(self.points))
        assert len(pts) == len(self.points), "duplicate points"
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self):
        return len(self.points)


@dataclass
class LineProfile:
    """Per-line statistics for a rank-(n+1) subspace of F_{q^n}^3."""

    weight_hist: dict  # dim(W /\ H) -> line count
    size_hist: dict  # |L_W /\ line| -> line count
    sampled: bool = False

    @property
    def total_lines(self):
        return sum(self.weight_hist.values())


def redei_blocking_set(u: QSubspace, i: int) -> QSubspace:
    """W = (U at third coordinate 0) + <(0,0,1)>, a blocking set system.

    U must classify as an i-club with i <= n - 2; the resulting linear
    set has size q^n + q^(n-1) + ... + q^i + 1, verified by enumeration.
    """
    ctx = u.ctx
    rep = linear_set(u)
    if rep.club_index != i:
        raise ClassificationError(f"input classifies as {rep.tag}, not IClub({i})")
    # i = n - 1 (the full-trace club) is allowed: the size formula
    # still holds, only the Redei line stops being unique
    rows = []
    for row in u.basis:
        x, y = unflatten(ctx, row, 2)
        rows.append(flatten(ctx, (x, y, 0)))
    w = QSubspace(ctx, 3, rows, already_closed=True).sum(QSubspace.span(ctx, 3, [(0, 0, 1)]))
    assert w.dim() == ctx.n + 1
    rep3 = linear_set(w)
    q = ctx.q
    expect = q ** ctx.n + sum(q ** j for j in range(i, ctx.n)) + 1
    assert rep3.size == expect, (rep3.size, expect)
    return w


def blocking_set_points(w: QSubspace) -> PointSet2D:
    rep = linear_set(w)
    return PointSet2D(w.ctx, tuple(pt for pt, _ in rep.points), tag="BlockingSet")


def line_profile(w: QSubspace, club_index: int | None = None, seed: int = 0, samples: int = 2000) -> LineProfile:
    """Weight and point-count histograms over the lines of PG(2, q^n).

    Lines are hyperplanes given in dual coordinates.  Above the full
    enumeration gate the profile covers the pencil through the heavy
    point plus a seeded random sample and is flagged as sampled.  With
    club_index given, the club-derived identities are asserted: weights
    within {1, 2, i, i+1, n}, a unique weight-n line carrying
    q^(n-1) + ... + q^i + 1 points, exactly q^(n-i) weight-(i+1) lines
    and at least one (q+1)-secant.
    """
    ctx = w.ctx
    if w.k != 3:
        raise FieldError("line profiles need arity 3")
    n = ctx.n
    q = ctx.q
    rep = linear_set(w)
    sampled = ctx.size > MAX_LINE_ENUM
    lines = projective_points(ctx, 3)
    if sampled:
        import random

        rng = random.Random(seed)
        heavy = max(rep.points, key=lambda pw: pw[1])[0]
        pencil = [ln for ln in lines if _incident(ctx, heavy, ln)]
        rest = rng.sample(lines, min(samples, len(lines)))
        lines = list(dict.fromkeys(pencil + rest))
    weight_hist = {}
    size_hist = {}
    pts = [pt for pt, _ in rep.points]
    for ln in lines:
        wt = _line_weight(ctx, w, ln)
        weight_hist[wt] = weight_hist.get(wt, 0) + 1
        cnt = sum(1 for pt in pts if _incident(ctx, pt, ln))
        size_hist[cnt] = size_hist.get(cnt, 0) + 1
    profile = LineProfile(weight_hist, size_hist, sampled)
    if not sampled:
        assert profile.total_lines == ctx.size ** 2 + ctx.size + 1
    if club_index is not None:
        i = club_index
        # weight-i lines arise through the heavy point when i > 2
        allowed = {1, 2, i, i + 1, n}
        assert set(weight_hist) <= allowed, weight_hist
        if i <= n - 2:
            assert weight_hist.get(n, 0) == 1, "the long line must be unique"
            if not sampled:
                assert weight_hist.get(i + 1, 0) == q ** (n - i)
        elif not sampled:
            # i + 1 = n: the q^(n-i) short lines merge with the long one
            assert weight_hist.get(n, 0) == 1 + q ** (n - i)
        redei_size = sum(q ** j for j in range(i, n)) + 1
        assert size_hist.get(redei_size, 0) >= 1, "long line point count"
        assert size_hist.get(q + 1, 0) >= 1, "a (q+1)-secant must exist"
    return profile


def _incident(ctx, pt, ln):
    acc = 0
    for a, b in zip(pt, ln):
        acc = ctx.add(acc, ctx.mul(a, b))
    return acc == 0


def _line_weight(ctx, w: QSubspace, ln):
    """dim over F_q of W /\\ (the hyperplane with dual coordinates ln)."""
    from . import plinalg

    rows = []
    for row in w.basis:
        v = unflatten(ctx, row, 3)
        img = 0
        for a, b in zip(v, ln):
            img = ctx.add(img, ctx.mul(a, b))
        rows.append(ctx.to_vector(img))
    rank = plinalg.rank(rows, ctx.p)
    assert (w.dim_p() - rank) % ctx.h == 0
    return (w.dim_p() - rank) // ctx.h


# -- KM-arcs --------------------------------------------------------------------

def km_arc(u: QSubspace, v=(0, 0, 1)) -> PointSet2D:
    """A(U, v) = (L_{U'} minus the line X2=0) plus (that line minus L_U).

    Even characteristic only; U an i-club on the line X2 = 0 and v a
    vector outside the F_{q^n}-span of the embedded U.  The arc has
    2^n + 2^i points.
    """
    ctx = u.ctx
    if ctx.p != 2:
        raise FieldError("KM-arcs require characteristic 2")
    rep = linear_set(u)
    if rep.club_index is None:
        raise ClassificationError("input is not a club")
    i = rep.club_index
    if v[2] == 0:
        raise FieldError("v lies in the span of the embedded U")
    rows = []
    for row in u.basis:
        x, y = unflatten(ctx, row, 2)
        rows.append(flatten(ctx, (x, y, 0)))
    uprime = QSubspace(ctx, 3, rows, already_closed=True).sum(QSubspace.span(ctx, 3, [tuple(v)]))
    rep3 = linear_set(uprime)
    ell = set()
    for pt in projective_points(ctx, 3):
        if pt[2] == 0:
            ell.add(pt)
    lu = {(pt[0], pt[1], 0) for pt, _ in rep.points}
    luprime = {pt for pt, _ in rep3.points}
    arc = sorted((luprime - ell) | (ell - lu))
    out = PointSet2D(ctx, tuple(arc), tag="KMArc")
    assert len(out) == 2 ** ctx.n + 2 ** i, (len(out), ctx.n, i)
    return out


def verify_km_arc(a: PointSet2D, t: int):
    """Exhaustive line scan: every line must meet A in 0, 2 or t points.

    Returns (ok, histogram); also checks the double count
    sum(size * count) = |A| (q^n + 1).
    """
    ctx = a.ctx
    if ctx.size > MAX_LINE_ENUM:
        raise FieldError("line scan gated to q^n <= 256")
    hist = {}
    pts = a.points
    for ln in projective_points(ctx, 3):
        cnt = sum(1 for pt in pts if _incident(ctx, pt, ln))
        hist[cnt] = hist.get(cnt, 0) + 1
    assert sum(size * count for size, count in hist.items()) == len(pts) * (ctx.size + 1)
    ok = set(hist) <= {0, 2, t}
    return ok, hist
