import pytest

from qclubs.gfcore import (
    FieldError,
    divisors,
    dual_basis,
    dual_basis_binomial,
    dual_basis_polynomial,
    dual_basis_trinomial,
    get_ctx,
    is_basis,
    parse_field_config,
)


def test_field_axioms_small():
    for p, h, n in [(2, 1, 4), (3, 1, 3), (2, 2, 2), (5, 1, 2)]:
        ctx = get_ctx(p, h, n)
        elems = list(ctx.elements())
        assert len(elems) == p ** (h * n)
        sample = elems[:: max(1, len(elems) // 12)]
        for a in sample:
            assert ctx.add(a, ctx.neg(a)) == 0
            if a:
                assert ctx.mul(a, ctx.inv(a)) == 1
            for b in sample:
                assert ctx.add(a, b) == ctx.add(b, a)
                assert ctx.mul(a, b) == ctx.mul(b, a)
                for c in sample[:4]:
                    lhs = ctx.mul(a, ctx.add(b, c))
                    rhs = ctx.add(ctx.mul(a, b), ctx.mul(a, c))
                    assert lhs == rhs


def test_vector_round_trip():
    ctx = get_ctx(3, 1, 4)
    for a in ctx.elements():
        assert ctx.from_vector(ctx.to_vector(a)) == a


def test_frobenius_is_field_automorphism():
    ctx = get_ctx(2, 2, 3)  # q = 4, n = 3
    q = ctx.q
    for a in list(ctx.elements())[::5]:
        assert ctx.frobenius(a) == ctx.pow(a, q)
        for b in list(ctx.elements())[::7]:
            assert ctx.frobenius(ctx.add(a, b)) == ctx.add(ctx.frobenius(a), ctx.frobenius(b))
            assert ctx.frobenius(ctx.mul(a, b)) == ctx.mul(ctx.frobenius(a), ctx.frobenius(b))
    # order of the q-Frobenius is n
    for a in list(ctx.elements())[::3]:
        assert ctx.frobenius(a, ctx.n) == a


def test_subfield_lattice():
    ctx = get_ctx(2, 1, 6)
    for t in divisors(6):
        sub = ctx.subfield_elements(t)
        assert len(sub) == 2 ** t
        for a in sub:
            assert ctx.frobenius(a, t) == a
            assert ctx.degree_over_base(a) in divisors(t)
    with pytest.raises(FieldError):
        ctx.subfield_elements(4)


def test_trace_and_norm():
    ctx = get_ctx(3, 1, 4)
    for a in list(ctx.elements())[::4]:
        tr = ctx.trace(a)
        assert ctx.is_in_subfield(tr, 1)
        manual = 0
        prod = 1
        for i in range(4):
            manual = ctx.add(manual, ctx.frobenius(a, i))
            prod = ctx.mul(prod, ctx.frobenius(a, i))
        assert tr == manual
        assert ctx.norm(a) == prod
    # trace is onto F_q
    assert {ctx.trace(a) for a in ctx.elements()} == set(ctx.subfield_elements(1))


def test_min_poly_annihilates():
    ctx = get_ctx(2, 1, 6)
    for a in [0, 1, ctx.primitive, ctx.pow(ctx.primitive, 9), ctx.pow(ctx.primitive, 21)]:
        f = ctx.min_poly(a)
        assert len(f) == ctx.degree_over_base(a) + 1
        assert ctx.eval_poly(f, a) == 0


def test_dual_basis_generic_matches_closed_form(rng):
    for p, n in [(2, 4), (3, 3), (2, 5)]:
        ctx = get_ctx(p, 1, n)
        hits = 0
        while hits < 10:
            lam = rng.randrange(1, ctx.size)
            if ctx.degree_over_base(lam) != n:
                continue
            hits += 1
            basis = [ctx.pow(lam, i) for i in range(n)]
            d1 = dual_basis(ctx, basis)
            d2 = dual_basis_polynomial(ctx, lam)
            assert d1 == d2
            for i in range(n):
                for j in range(n):
                    assert ctx.trace(ctx.mul(basis[i], d1[j])) == (1 if i == j else 0)


def test_dual_basis_shortcuts_agree_where_applicable():
    for p, n in [(3, 2), (2, 3), (3, 4), (2, 5)]:
        ctx = get_ctx(p, 1, n)
        bin_hits = tri_hits = 0
        for lam in ctx.elements():
            if not lam or ctx.degree_over_base(lam) != n:
                continue
            generic = dual_basis(ctx, [ctx.pow(lam, i) for i in range(n)])
            short = dual_basis_binomial(ctx, lam)
            if short is not None:
                bin_hits += 1
                assert short == generic
            short = dual_basis_trinomial(ctx, lam)
            if short is not None:
                tri_hits += 1
                assert short == generic
        assert bin_hits + tri_hits > 0


def test_is_basis():
    ctx = get_ctx(2, 1, 3)
    g = ctx.primitive
    assert is_basis(ctx, [1, g, ctx.mul(g, g)])
    assert not is_basis(ctx, [1, g, ctx.add(1, g)])


def test_parse_field_config():
    cfg = parse_field_config("p = 2\nh = 1\nn = 5\nmodulus = 1,0,1,0,0,1\n# comment\nseed = 7\n")
    assert cfg == {"p": 2, "h": 1, "n": 5, "modulus": (1, 0, 1, 0, 0, 1), "seed": 7}
    with pytest.raises(FieldError):
        parse_field_config("frobnitz = 3")


def test_bad_modulus_rejected():
    with pytest.raises(FieldError):
        get_ctx(2, 1, 2, modulus=(1, 0, 0, 1))  # wrong degree
    with pytest.raises(FieldError):
        get_ctx(2, 1, 2, modulus=(1, 0, 1))  # reducible: x^2 + 1 over F_2
