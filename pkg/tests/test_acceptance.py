"""End-to-end acceptance checks: every headline count is exact, tolerance zero."""

import random
import time

import pytest

from qclubs import get_ctx, linear_set
from qclubs.gfcore import (
    FieldError,
    divisors,
    dual_basis,
    dual_basis_binomial,
    dual_basis_polynomial,
    dual_basis_trinomial,
)
from qclubs.constructions import (
    _is_subfield_basis,
    canonical_club_space,
    club_lambda,
    club_scattered_trace,
    poly_thm51,
    poly_thm52,
    poly_thm53,
    thm35_canonical,
    trace_tower_club,
)
from qclubs.equivalence import SemilinearMap, apply_semilinear, invariants, restricted_equiv_search
from qclubs.geomapps import km_arc, line_profile, redei_blocking_set, verify_km_arc
from qclubs.rankmetric import iclub_code, weight_distribution
from qclubs.subspaces import (
    is_subfield_closed,
    normalize_club,
    normalize_point,
    product_span,
    sab_subspace,
    scale_subspace,
    subspace_from_elements,
    theorem35_analysis,
    weight2_points_bijection,
)
from conftest import random_s1_subspace, random_sab

FIELDS = [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5), (2, 6)]


def _power_basis_omega(ctx, r):
    t = ctx.n // r
    for omega in ctx.elements():
        if omega and _is_subfield_basis(ctx, [ctx.pow(omega, i) for i in range(r)], t):
            return omega
    return None


def _canonical_params(ctx, t):
    """Deterministic valid (sbar_gens, c, b, a) for thm35_canonical, or None."""
    n = ctx.n
    ell = n // t - 1
    b = next(
        (x for x in ctx.subfield_elements(t) if ctx.degree_over_base(x) == t), None
    )
    if b is None:
        return None
    gens = []
    if ell:
        import math

        gamma = next(
            (x for x in ctx.elements() if x and math.lcm(t, ctx.degree_over_base(x)) == n),
            None,
        )
        if gamma is None:
            return None
        gens = [ctx.pow(gamma, i) for i in range(ell)]
    for c in ctx.elements():
        if not c:
            continue
        _, s, failures = canonical_club_space(ctx, t, gens, c, b, 0)
        if [f for f in failures if not f.startswith("a in")]:
            continue
        ext = s.sum(subspace_from_elements(ctx, [ctx.mul(c, ctx.pow(b, max(t - 2, 0)))]))
        a = next((x for x in ctx.elements() if x and not ext.contains((x,))), None)
        if a is not None:
            return gens, c, b, a
    return None


def _all_recipes(ctx):
    """Every realizable construction recipe at this field."""
    n = ctx.n
    recs = [trace_tower_club(ctx, 1, n, 1)]
    for m in range(2, n):
        if n % m == 0 and m * (n // m - 1) >= 2:
            recs.append(trace_tower_club(ctx, m, n // m, 1))
    if n >= 4:
        recs.append(club_lambda(ctx, ctx.primitive))
        recs.append(poly_thm51(ctx, ctx.primitive))
    for r in (x for x in range(2, n) if n % x == 0):
        t = n // r
        if t < 2:
            continue
        omega = _power_basis_omega(ctx, r)
        f = [0, 1] + [0] * (t - 2)
        if omega is not None:
            recs.append(club_scattered_trace(ctx, f, 0, 1, omega, r))
        recs.append(poly_thm52(ctx, f, r))
    for t in divisors(n):
        if n < 4:
            break
        if not (t == n or 3 <= t <= n - 3 or (t == 2 and n % 2 == 0)):
            continue
        params = _canonical_params(ctx, t)
        if params is None:
            continue
        gens, c, b, a = params
        recs.append(thm35_canonical(ctx, t, gens, c, b, a))
        try:
            recs.append(poly_thm53(ctx, t, gens, c, b, a))
        except FieldError:
            pass
    return recs


# -- 1. construction sizes and spectra --------------------------------------

@pytest.mark.parametrize("q,n", FIELDS)
def test_criterion_1_club_sizes_and_spectra(q, n):
    ctx = get_ctx(q, 1, n)
    recs = _all_recipes(ctx)
    assert recs
    for rec in recs:
        start = time.monotonic()
        rep = rec.verify()
        assert time.monotonic() - start < 1.0
        i = rec.index
        assert rep.tag == f"IClub({i})"
        assert rep.size == sum(q ** j for j in range(i, n)) + 1
        assert rep.spectrum == {1: rep.size - 1, i: 1} if i != 1 else {1: rep.size}


# -- 2. weight-2 point bijection ---------------------------------------------

@pytest.mark.parametrize("q,n", FIELDS)
def test_criterion_2_weight2_bijection(q, n):
    ctx = get_ctx(q, 1, n)
    rng = random.Random(10 * q + n)
    start = time.monotonic()
    for _ in range(100):
        s, a, b = random_sab(ctx, rng)
        u = sab_subspace(s, a, b)
        rep = linear_set(u)
        heavy = normalize_point(ctx, (1, 0))
        enumerated = sorted(pt for pt, w in rep.points if w == 2 and pt != heavy)
        assert enumerated == weight2_points_bijection(s, a, b)
        # h-club (no weight-2 point away from <(1,0)>) iff a outside S + bS
        ext = s.sum(scale_subspace(s, b))
        assert (len(enumerated) == 0) == (not ext.contains((a,)))
        if not ext.contains((a,)):
            h = s.dim()
            assert rep.weight_of(heavy) == h
            assert max(w for pt, w in rep.points if pt != heavy) == 1
    assert time.monotonic() - start < 10.0


# -- 3. counts when a lies in S + bS ------------------------------------------

@pytest.mark.parametrize("q,n", FIELDS)
def test_criterion_3_non_club_counts(q, n):
    ctx = get_ctx(q, 1, n)
    rng = random.Random(100 * q + n)
    hits = 0
    for _ in range(100):
        s, a, b = random_sab(ctx, rng)
        ext = s.sum(scale_subspace(s, b))
        if not ext.contains((a,)):
            continue
        hits += 1
        h = s.dim()
        j = s.intersect(scale_subspace(s, b)).dim()
        u = sab_subspace(s, a, b)
        rep = linear_set(u)
        heavy = normalize_point(ctx, (1, 0))
        wt2 = sum(1 for pt, w in rep.points if w == 2 and pt != heavy)
        assert wt2 == q ** j
        assert rep.size == q ** (h + 1) + q ** h - q ** (j + 1) + 1
    assert hits > 0


# -- 4. trichotomy of (n-2)-dimensional S -------------------------------------

def _find_case(ctx, rng, want_d, tries=4000):
    n = ctx.n
    for _ in range(tries):
        s, a, b = random_sab(ctx, rng, dim=n - 2)
        d = product_span(s, subspace_from_elements(ctx, [1, b])).dim()
        if d == want_d:
            return s, a, b
    return None


@pytest.mark.parametrize("q,n", [(2, 5), (2, 6), (3, 5)])
def test_criterion_4_trichotomy(q, n):
    ctx = get_ctx(q, 1, n)
    rng = random.Random(1000 * q + n)

    start = time.monotonic()
    # Case 1: generic product span, never a club
    found = _find_case(ctx, rng, n)
    assert found is not None
    s, a, b = found
    out = theorem35_analysis(s, a, b)
    rep = linear_set(sab_subspace(s, a, b))
    assert out["case"] == "1" and not out["is_club"]
    heavy = normalize_point(ctx, (1, 0))
    wt2 = sum(1 for pt, w in rep.points if w == 2 and pt != heavy)
    assert wt2 == q ** (n - 4)
    assert rep.size == q ** (n - 1) + q ** (n - 2) - q ** (n - 3) + 1
    assert time.monotonic() - start < 5.0

    # Case 2 with a inside the product span: not a club
    start = time.monotonic()
    for _ in range(4000):
        s, a, b = random_sab(ctx, rng, dim=n - 2)
        st = product_span(s, subspace_from_elements(ctx, [1, b]))
        if st.dim() == n - 1 and st.contains((a,)):
            break
    else:
        raise AssertionError("no case-2 non-club sample found")
    out = theorem35_analysis(s, a, b)
    rep = linear_set(sab_subspace(s, a, b))
    assert out["case"] == "2" and not out["is_club"]
    wt2 = sum(1 for pt, w in rep.points if w == 2 and pt != heavy)
    assert wt2 == q ** (n - 3)
    assert rep.size == q ** (n - 1) + 1
    assert time.monotonic() - start < 5.0

    # Case 2.1 club: S = c<1, b, ..., b^(n-3)> with b of full degree
    start = time.monotonic()
    gens, c, b, a = _canonical_params(ctx, n)
    rec = thm35_canonical(ctx, n, gens, c, b, a)
    s = subspace_from_elements(ctx, [ctx.mul(c, ctx.pow(b, i)) for i in range(n - 2)])
    out = theorem35_analysis(s, a, b)
    assert out["case"] == "2.1" and out["is_club"]
    assert rec.verify().size == q ** (n - 1) + q ** (n - 2) + 1
    assert time.monotonic() - start < 5.0

    # Case 2.2 club (needs a proper middle subfield: t with 3 <= t <= n-3)
    mid = [t for t in divisors(n) if 3 <= t <= n - 3]
    if mid:
        start = time.monotonic()
        t = mid[0]
        gens, c, b, a = _canonical_params(ctx, t)
        rec = thm35_canonical(ctx, t, gens, c, b, a)
        s2, _, b2, _ = normalize_club(rec.subspace)
        out = theorem35_analysis(s2, a, b2)
        assert out["case"] in ("2.1", "2.2")
        rep = rec.verify()
        assert rep.size == q ** (n - 1) + q ** (n - 2) + 1
        assert time.monotonic() - start < 5.0

    # Case 3 (n even): S an F_{q^2}-hyperplane; a in S kills the club
    if n % 2 == 0:
        start = time.monotonic()
        gens, c, b, a = _canonical_params(ctx, 2)
        rec = thm35_canonical(ctx, 2, gens, c, b, a)
        s = rec.subspace
        s3 = subspace_from_elements(
            ctx, [v[0] for v in s.vectors() if v[1] == 0]
        )
        out = theorem35_analysis(s3, a, b)
        assert out["case"] == "3" and out["is_club"]
        assert rec.verify().size == q ** (n - 1) + q ** (n - 2) + 1
        # the degenerate companion: a inside S
        a_in = next(x for x in s3.elements() if x)
        out = theorem35_analysis(s3, a_in, b)
        rep = linear_set(sab_subspace(s3, a_in, b))
        assert out["case"] == "3" and not out["is_club"]
        assert rep.size == q ** (n - 2) + 1
        assert all(w == 2 for pt, w in rep.points if pt != heavy)
        assert time.monotonic() - start < 5.0


# -- 5. dual-basis identities ---------------------------------------------------

@pytest.mark.parametrize("q,n", FIELDS)
def test_criterion_5_dual_bases(q, n):
    ctx = get_ctx(q, 1, n)
    rng = random.Random(3 * q + n)
    start = time.monotonic()
    checked = bin_hits = tri_hits = 0
    while checked < 50:
        lam = rng.randrange(1, ctx.size)
        if ctx.degree_over_base(lam) != n:
            continue
        checked += 1
        basis = [ctx.pow(lam, i) for i in range(n)]
        generic = dual_basis(ctx, basis)
        closed = dual_basis_polynomial(ctx, lam)
        assert generic == closed
        for i in range(n):
            for j in range(n):
                assert ctx.trace(ctx.mul(basis[i], generic[j])) == (1 if i == j else 0)
        short = dual_basis_binomial(ctx, lam)
        if short is not None:
            bin_hits += 1
            assert short == generic
        short = dual_basis_trinomial(ctx, lam)
        if short is not None:
            tri_hits += 1
            assert short == generic
    assert time.monotonic() - start < 1.0


# -- 6. polynomial descriptions --------------------------------------------------

@pytest.mark.parametrize("q,n", [(2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)])
def test_criterion_6_polynomial_forms(q, n):
    ctx = get_ctx(q, 1, n)
    seen = 0
    rec = poly_thm51(ctx, ctx.primitive)
    assert rec.polynomial.club_polynomial_index() == rec.index == n - 2
    rec.verify()
    seen += 1
    for r in (x for x in range(2, n) if n % x == 0 and n // x >= 2):
        t = n // r
        rec = poly_thm52(ctx, [0, 1] + [0] * (t - 2), r)
        assert rec.polynomial.club_polynomial_index() == rec.index
        rec.verify()
        seen += 1
    for t in divisors(n):
        if not (t == n or 3 <= t <= n - 3 or (t == 2 and n % 2 == 0)):
            continue
        params = _canonical_params(ctx, t)
        if params is None:
            continue
        gens, c, b, a = params
        try:
            rec = poly_thm53(ctx, t, gens, c, b, a)
        except FieldError:
            continue
        assert rec.polynomial.club_polynomial_index() == rec.index == n - 2
        rec.verify()
        seen += 1
    assert seen >= 2


# -- 7. KM-arcs -------------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5])
def test_criterion_7_km_arcs(n):
    ctx = get_ctx(2, 1, n)
    start = time.monotonic()
    for rec in _all_recipes(ctx):
        rec.verify()
        arc = km_arc(rec.subspace)
        t = 2 ** rec.index
        assert len(arc) == 2 ** n + t
        ok, hist = verify_km_arc(arc, t)
        assert ok
        assert set(hist) <= {0, 2, t}
        assert sum(hist.values()) == ctx.size ** 2 + ctx.size + 1
    assert time.monotonic() - start < 5.0


# -- 8. blocking-set line profiles -------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5])
def test_criterion_8_blocking_profiles(n):
    ctx = get_ctx(2, 1, n)
    q = ctx.q
    for rec in _all_recipes(ctx):
        i = rec.index
        w = redei_blocking_set(rec.subspace, i)
        prof = line_profile(w, club_index=i, seed=0)
        assert not prof.sampled
        if i <= n - 2:
            assert prof.weight_hist[n] == 1
            assert prof.weight_hist[i + 1] == q ** (n - i)
        else:
            # full-trace club: all q^(n-i) + 1 long lines reach weight n
            assert prof.weight_hist[n] == 1 + q ** (n - i)


# -- 9. rank-metric weight distributions ---------------------------------------------

def test_criterion_9_reference_distribution():
    ctx = get_ctx(2, 1, 3)
    rec = trace_tower_club(ctx, 1, 3, 1)
    dist = weight_distribution(iclub_code(rec))
    assert dist.counts == {1: 7, 2: 28, 3: 28}


@pytest.mark.parametrize("q,n", FIELDS)
def test_criterion_9_three_weight_counts(q, n):
    ctx = get_ctx(q, 1, n)
    for rec in _all_recipes(ctx):
        i = rec.index
        code = iclub_code(rec)  # asserts the exact three-weight counts
        dist = weight_distribution(code)  # geometric vs direct cross-check inside
        assert set(dist.counts) <= {n - i, n - 1, n}
        assert dist.counts[n - i] == q ** n - 1
        assert dist.total() == ctx.size ** 2 - 1


# -- 10. equivalence engine ------------------------------------------------------------

@pytest.mark.parametrize("q,n", [(2, 5), (2, 6), (3, 4)])
def test_criterion_10_planted_recovery(q, n):
    ctx = get_ctx(q, 1, n)
    rng = random.Random(7)
    u = club_lambda(ctx, ctx.primitive).subspace
    for _ in range(50):
        while True:
            m = tuple(tuple(rng.randrange(ctx.size) for _ in range(2)) for _ in range(2))
            if ctx.sub(ctx.mul(m[0][0], m[1][1]), ctx.mul(m[0][1], m[1][0])):
                break
        g = SemilinearMap(m, rng.randrange(ctx.deg))
        res = restricted_equiv_search(u, apply_semilinear(u, g))
        assert res.status == "equivalent"


def test_criterion_10_inequivalent_types():
    ctx = get_ctx(2, 1, 6)
    start = time.monotonic()
    u1 = club_lambda(ctx, ctx.primitive).subspace
    gens, c, b, a = _canonical_params(ctx, 2)
    u3 = thm35_canonical(ctx, 2, gens, c, b, a).subspace
    assert invariants(u1).case == "Case2"
    assert invariants(u3).case == "Case3"
    res = restricted_equiv_search(u1, u3)
    assert res.status == "inequivalent"
    assert time.monotonic() - start < 600.0


# -- 11. randomized property suites -----------------------------------------------------

@pytest.mark.parametrize("q,n", [(2, 4), (2, 5), (2, 6), (3, 4), (3, 5)])
def test_criterion_11_product_span_dichotomy(q, n):
    ctx = get_ctx(q, 1, n)
    rng = random.Random(11 * q + n)
    for _ in range(200):
        s = random_s1_subspace(ctx, rng, rng.randrange(1, n), with_one=False)
        t = random_s1_subspace(ctx, rng, rng.randrange(1, n), with_one=False)
        d = product_span(s, t).dim()
        if d >= min(s.dim() + t.dim() - 1, n):
            continue
        closed = any(
            is_subfield_closed(product_span(s, t), tt) for tt in divisors(n) if tt > 1
        )
        assert closed, f"dichotomy broken at dim {d} for dims {s.dim()},{t.dim()}"


@pytest.mark.parametrize("q,n", [(2, 6), (3, 4)])
def test_criterion_11_intersection_case_analysis(q, n):
    from qclubs.subspaces import lemma213_decompose

    ctx = get_ctx(q, 1, n)
    rng = random.Random(13 * q + n)
    cases = {"a": 0, "b1": 0, "b2": 0, "none": 0}
    for _ in range(200):
        dim = rng.randrange(2, n)
        s = random_s1_subspace(ctx, rng, dim, with_one=False)
        while True:
            mu = rng.randrange(ctx.size)
            if not ctx.is_in_subfield(mu, 1):
                break
        out = lemma213_decompose(s, mu)
        cases[out["case"]] += 1
        inter = s.intersect(scale_subspace(s, mu)).dim()
        if inter == dim:
            assert out["case"] == "a"
        if inter <= dim - 2:
            assert out["case"] == "none"
    # planted witnesses so every branch is really exercised
    t = 2 if n % 2 == 0 else 3
    f_sub = subspace_from_elements(ctx, list(ctx.subfield_elements(t)))
    mu = next(x for x in ctx.subfield_elements(t) if not ctx.is_in_subfield(x, 1))
    assert lemma213_decompose(f_sub, mu)["case"] == "a"
    mu = ctx.primitive
    k = n - 2
    s = subspace_from_elements(ctx, [ctx.pow(mu, i) for i in range(k)])
    assert lemma213_decompose(s, mu)["case"] in ("b1", "b2")
