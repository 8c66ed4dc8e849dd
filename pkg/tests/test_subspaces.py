import pytest

from qclubs import ClassificationError, QSubspace, get_ctx, linear_set
from qclubs.subspaces import (
    apply_matrix,
    club_from_SAB,
    lemma213_decompose,
    normalize_club,
    normalize_point,
    point_weight,
    product_span,
    projective_points,
    sab_subspace,
    scale_subspace,
    subfield_core,
    subspace_from_elements,
    theorem35_analysis,
    theorem35_case,
    weight2_points_bijection,
)
from conftest import random_sab


def test_projective_point_counts():
    ctx = get_ctx(2, 1, 3)
    assert len(projective_points(ctx, 1)) == 1
    assert len(projective_points(ctx, 2)) == ctx.size + 1
    assert len(projective_points(ctx, 3)) == ctx.size ** 2 + ctx.size + 1


def test_span_and_closure():
    ctx = get_ctx(2, 1, 4)
    u = QSubspace.span(ctx, 2, [(1, 0), (ctx.primitive, 0)])
    assert u.dim() == 2
    assert len(u.vectors()) == ctx.q ** 2
    for v in u.vectors():
        for c in range(ctx.q):
            assert u.contains(tuple(ctx.mul(ctx.scalar_from_int(c), x) for x in v))


def test_sum_intersect_dims():
    ctx = get_ctx(3, 1, 3)
    a = subspace_from_elements(ctx, [1])
    b = subspace_from_elements(ctx, [ctx.primitive])
    s = a.sum(b)
    assert s.dim() == 2
    assert a.intersect(b).dim() == 0
    assert a.intersect(s).dim() == 1


def test_full_space_linear_set():
    ctx = get_ctx(2, 1, 3)
    u = QSubspace.span(ctx, 2, [(1, 0), (2, 0), (4, 0), (0, 1), (0, 2), (0, 4)])
    rep = linear_set(u)
    assert rep.size == ctx.size + 1
    assert rep.spectrum == {3: ctx.size + 1}


def test_club_from_sab_guards():
    ctx = get_ctx(2, 1, 5)
    s = subspace_from_elements(ctx, [1, ctx.primitive])
    b = next(x for x in ctx.elements() if not ctx.is_in_subfield(x, 1))
    with pytest.raises(ClassificationError):
        club_from_SAB(s, 1, b)  # a in S
    with pytest.raises(ClassificationError):
        club_from_SAB(s, 6, 1)  # b in F_q
    bad = subspace_from_elements(ctx, [ctx.primitive])
    a = next(x for x in ctx.elements() if x and not bad.contains((x,)))
    with pytest.raises(ClassificationError):
        club_from_SAB(bad, a, b)  # 1 not in S


def test_weight2_bijection_random(rng):
    ctx = get_ctx(2, 1, 5)
    for _ in range(30):
        s, a, b = random_sab(ctx, rng)
        u = sab_subspace(s, a, b)
        rep = linear_set(u)
        enumerated = sorted(pt for pt, w in rep.points if w == 2)
        heavy = normalize_point(ctx, (1, 0))
        enumerated = [pt for pt in enumerated if pt != heavy]
        assert enumerated == weight2_points_bijection(s, a, b)


def test_theorem35_analysis_consistency(rng):
    for q, n in [(2, 5), (2, 6), (3, 5)]:
        ctx = get_ctx(q, 1, n)
        done = 0
        while done < 25:
            s, a, b = random_sab(ctx, rng, dim=n - 2)
            out = theorem35_analysis(s, a, b)
            rep = linear_set(sab_subspace(s, a, b))
            wt2 = sum(c for w, c in rep.spectrum.items() if w == 2)
            heavy_w = rep.weight_of(normalize_point(ctx, (1, 0)))
            if heavy_w == 2:
                wt2 -= 1
            assert out["wt2_points"] == wt2
            assert out["size"] == rep.size
            assert out["is_club"] == (rep.club_index is not None)
            tag, d = theorem35_case(s, b)
            assert d == out["d"]
            assert tag == "Case" + out["case"][0]
            done += 1


def test_normalize_club_round_trip(rng):
    ctx = get_ctx(2, 1, 5)
    for _ in range(10):
        s, a, b = random_sab(ctx, rng, dim=3)
        try:
            u = club_from_SAB(s, a, b)
        except (ClassificationError, AssertionError):
            continue
        rep = linear_set(u)
        if rep.club_index is None:
            continue
        s2, a2, b2, m = normalize_club(u)
        w = club_from_SAB(s2, a2, b2)
        assert apply_matrix(u, m) == w
        assert linear_set(w).spectrum == rep.spectrum


def test_product_span_and_core():
    ctx = get_ctx(2, 1, 6)
    f4 = subspace_from_elements(ctx, list(ctx.subfield_elements(2)))
    assert product_span(f4, f4) == f4
    assert subfield_core(f4, 2) == f4
    g = ctx.primitive
    s = subspace_from_elements(ctx, [1, g, ctx.pow(g, 2)])
    assert subfield_core(s, 2).dim() <= s.dim()


def test_lemma213_cases(rng):
    ctx = get_ctx(2, 1, 6)
    # case (a): S a subfield, mu inside it
    f8 = subspace_from_elements(ctx, list(ctx.subfield_elements(3)))
    mu = next(x for x in ctx.subfield_elements(3) if not ctx.is_in_subfield(x, 1))
    assert lemma213_decompose(f8, mu)["case"] == "a"
    # case (b1): S = c<1, mu, ..., mu^(k-1)> with deg(mu) > k
    mu = ctx.primitive
    assert ctx.degree_over_base(mu) == 6
    s = subspace_from_elements(ctx, [1, mu, ctx.pow(mu, 2)])
    out = lemma213_decompose(s, mu)
    assert out["case"] == "b1"
    # low intersection: no case
    found_none = False
    for _ in range(40):
        s, _, mu = random_sab(ctx, rng, dim=3)
        out = lemma213_decompose(s, mu)
        inter = s.intersect(scale_subspace(s, mu)).dim()
        if inter <= 1:
            assert out["case"] == "none"
            found_none = True
    assert found_none


def test_point_weight_matches_report():
    ctx = get_ctx(2, 1, 4)
    u = QSubspace.span(ctx, 2, [(1, 0), (2, 0), (4, 1), (0, 2)])
    rep = linear_set(u)
    for pt, w in rep.points:
        assert point_weight(u, pt) == w


def test_text_round_trip():
    ctx = get_ctx(2, 1, 4)
    u = QSubspace.span(ctx, 2, [(1, 1), (3, 0), (0, 7)])
    assert QSubspace.from_text(ctx, 2, u.to_text()) == u
