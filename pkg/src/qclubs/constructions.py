"""Catalog of club constructions.

Each builder returns a ClubRecipe holding the realized subspace, the
defining polynomial when one exists, and the predicted club index; the
verify hook re-derives the classification by full enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gfcore import FieldCtx, FieldError, dual_basis, dual_basis_polynomial, is_basis
from .linpoly import (
    LinPoly,
    eval_subfield_poly,
    is_scattered_over_subfield,
    subfield_kernel_size,
)
from .subspaces import (
    ClassificationError,
    QSubspace,
    linear_set,
    subspace_from_elements,
)


@dataclass
class ClubRecipe:
    """A club construction: family tag, parameters, realization."""

    family: str
    ctx: FieldCtx
    params: dict
    index: int
    subspace: QSubspace
    polynomial: LinPoly | None = None

    @property
    def predicted_size(self):
        q = self.ctx.q
        n = self.ctx.n
        return sum(q ** j for j in range(self.index, n)) + 1

    def verify(self):
        """Re-classify by enumeration; raises on any mismatch."""
        rep = linear_set(self.subspace)
        expect = f"IClub({self.index})"
        if rep.tag != expect:
            raise ClassificationError(f"{self.family}: got {rep.tag}, predicted {expect}")
        if rep.size != self.predicted_size:
            raise ClassificationError(
                f"{self.family}: size {rep.size}, predicted {self.predicted_size}"
            )
        return rep


def graph_subspace(f: LinPoly) -> QSubspace:
    """U_f = {(x, f(x))}, the rank-n graph subspace in F_{q^n}^2."""
    ctx = f.ctx
    gens = []
    x = 1
    for _ in range(ctx.n):
        gens.append((x, f.eval(x)))
        x = ctx.mul(x, ctx.primitive)
        # a primitive-power orbit spans the field over F_q once n
        # distinct powers are taken; rank is asserted below
    u = QSubspace.span(ctx, 2, gens[: ctx.n])
    if u.dim() != ctx.n:
        u = QSubspace.span(ctx, 2, [(x, f.eval(x)) for x in ctx.elements()])
    assert u.dim() == ctx.n
    return u


# -- trace towers ------------------------------------------------------------

def trace_tower_club(ctx: FieldCtx, m: int, ell: int, s: int) -> ClubRecipe:
    """T = Tr_{q^(lm)/q^m}(x^(q^s)) with n = lm; an m(l-1)-club."""
    n = ctx.n
    if m * ell != n:
        raise FieldError(f"m * l = {m * ell} != n = {n}")
    if math.gcd(s, m) != 1:
        raise FieldError(f"gcd(s, m) = {math.gcd(s, m)} != 1")
    index = m * (ell - 1)
    if index < 2:
        raise FieldError("index m(l - 1) < 2 does not give a club")
    coeffs = [0] * n
    for i in range(ell):
        coeffs[(m * i + s) % n] = ctx.add(coeffs[(m * i + s) % n], 1)
    poly = LinPoly(ctx, coeffs)
    return ClubRecipe(
        family="TraceTower",
        ctx=ctx,
        params={"m": m, "ell": ell, "s": s},
        index=index,
        subspace=graph_subspace(poly),
        polynomial=poly,
    )


# -- the basis-power construction --------------------------------------------

def club_lambda(ctx: FieldCtx, lam) -> ClubRecipe:
    """U = <(lam, 0), ..., (lam^(n-2), 0), (lam^(n-1), 1), (0, lam)>.

    Needs lam of degree n (so the powers form a basis) and n >= 4;
    the linear set is an (n-2)-club of rank n.
    """
    n = ctx.n
    if ctx.degree_over_base(lam) != n:
        raise FieldError("lam must have degree n over the base field")
    if n < 4:
        raise FieldError("need n >= 4 for an (n-2)-club with n - 2 >= 2")
    gens = [(ctx.pow(lam, i), 0) for i in range(1, n - 1)]
    gens.append((ctx.pow(lam, n - 1), 1))
    gens.append((0, lam))
    u = QSubspace.span(ctx, 2, gens)
    assert u.dim() == n
    return ClubRecipe(
        family="Lambda",
        ctx=ctx,
        params={"lam": lam},
        index=n - 2,
        subspace=u,
    )


# -- clubs from scattered polynomials over a subfield -------------------------

def club_scattered_trace(ctx: FieldCtx, f_coeffs, a, b, omega, r: int) -> ClubRecipe:
    """U = {(f(x0) - a x0, b x0 + x1 w + ... + x_{r-1} w^(r-1))}.

    f is given by its t coefficients over F_{q^t} with n = rt, r, t > 1;
    f must be scattered over F_{q^t}, b nonzero in F_{q^t}, and
    (1, w, ..., w^(r-1)) an F_{q^t}-basis of F_{q^n}.  The club index is
    t(r-1) when f - ax is invertible on F_{q^t} and t(r-1) + 1 otherwise.
    """
    n = ctx.n
    if n % r != 0:
        raise FieldError("r must divide n")
    t = n // r
    if r < 2 or t < 2:
        raise FieldError("need r, t > 1")
    f_coeffs = list(f_coeffs)
    if len(f_coeffs) != t:
        raise FieldError(f"f needs exactly {t} coefficients")
    if any(not ctx.is_in_subfield(c, t) for c in f_coeffs):
        raise FieldError("f coefficients must lie in F_{q^t}")
    if not ctx.is_in_subfield(a, t) or not ctx.is_in_subfield(b, t) or b == 0:
        raise FieldError("need a, b in F_{q^t} with b nonzero")
    if not is_scattered_over_subfield(ctx, f_coeffs, t):
        raise FieldError("f is not scattered over F_{q^t}")
    basis = [ctx.pow(omega, i) for i in range(r)]
    if not _is_subfield_basis(ctx, basis, t):
        raise FieldError("(1, w, ..., w^(r-1)) is not an F_{q^t}-basis")
    g = list(f_coeffs)
    g[0] = ctx.sub(g[0], a)
    ker = subfield_kernel_size(ctx, g, t, 0)
    index = t * (r - 1) + (0 if ker == 1 else 1)
    sub_basis = _fq_basis_of_subfield(ctx, t)
    gens = []
    for e in sub_basis:
        gens.append((ctx.sub(eval_subfield_poly(ctx, f_coeffs, e), ctx.mul(a, e)), ctx.mul(b, e)))
    for i in range(1, r):
        wi = ctx.pow(omega, i)
        for e in sub_basis:
            gens.append((0, ctx.mul(e, wi)))
    u = QSubspace.span(ctx, 2, gens)
    assert u.dim() == n
    return ClubRecipe(
        family="ScatteredTrace",
        ctx=ctx,
        params={"f": tuple(f_coeffs), "a": a, "b": b, "omega": omega, "r": r, "t": t},
        index=index,
        subspace=u,
    )


def _fq_basis_of_subfield(ctx, t):
    """An F_q-basis of F_{q^t} picked greedily from its elements."""
    rows = []
    basis = []
    from . import plinalg

    for e in ctx.subfield_elements(t):
        if e == 0:
            continue
        cand = rows + [ctx.to_vector(ctx.mul(s, e)) for s in _fq_scalars(ctx)]
        if plinalg.rank(cand, ctx.p) > plinalg.rank(rows, ctx.p):
            basis.append(e)
            rows = cand
        if len(basis) == t:
            break
    assert len(basis) == t
    return basis


def _fq_scalars(ctx):
    out = []
    acc = 1
    for _ in range(ctx.h):
        out.append(acc)
        acc = ctx.mul(acc, ctx.q_generator)
    return out


def _is_subfield_basis(ctx, elems, t):
    """True iff elems are an F_{q^t}-basis of F_{q^n}."""
    from . import plinalg

    rows = []
    for e in elems:
        for s in ctx.subfield_elements(t):
            if s:
                rows.append(ctx.to_vector(ctx.mul(s, e)))
    return plinalg.rank(rows, ctx.p) == ctx.deg


# -- canonical (n-2)-clubs ----------------------------------------------------

def canonical_club_space(ctx: FieldCtx, t: int, sbar_gens, c, b, a):
    """The pair (S, checks) for S = Sbar + c<1, b, ..., b^(t-3)>.

    Returns (sbar, s, failures) where failures lists the violated
    preconditions by name.
    """
    n = ctx.n
    failures = []
    if n % t != 0:
        failures.append("t does not divide n")
        return None, None, failures
    ell = n // t - 1
    if ctx.degree_over_base(b) != t:
        failures.append("F_q(b) != F_{q^t}")
    sbar = _subfield_span(ctx, sbar_gens, t)
    if sbar.dim_p() != ctx.h * t * ell:
        failures.append("Sbar dimension != l over F_{q^t}")
    cline = subspace_from_elements(ctx, [ctx.mul(c, e) for e in ctx.subfield_elements(t) if e])
    if c == 0 or cline.intersect(sbar).dim() != 0:
        failures.append("c F_{q^t} meets Sbar")
    part = subspace_from_elements(ctx, [ctx.mul(c, ctx.pow(b, i)) for i in range(t - 2)]) if t > 2 else QSubspace.zero(ctx, 1)
    s = sbar.sum(part)
    extended = s.sum(subspace_from_elements(ctx, [ctx.mul(c, ctx.pow(b, t - 2))]))
    if not extended.contains((1,)):
        failures.append("1 not in Sbar + c<1, b, ..., b^(t-2)>")
    if extended.contains((a,)):
        failures.append("a in Sbar + c<1, b, ..., b^(t-2)>")
    return sbar, s, failures


def _subfield_span(ctx, gens, t):
    elems = []
    for g in gens:
        for e in ctx.subfield_elements(t):
            if e:
                elems.append(ctx.mul(e, g))
    if not elems:
        return QSubspace.zero(ctx, 1)
    return subspace_from_elements(ctx, elems)


def thm35_canonical(ctx: FieldCtx, t: int, sbar_gens, c, b, a) -> ClubRecipe:
    """U = {(sbar + sum c x_i b^i + alpha + beta a, alpha + beta b)}.

    n = t(l+1); every precondition violation is reported by name.
    """
    sbar, s, failures = canonical_club_space(ctx, t, sbar_gens, c, b, a)
    if failures:
        raise ClassificationError("; ".join(failures))
    gens = [(v[0], 0) for v in s.fq_basis()]
    gens += [(1, 1), (a, b)]
    u = QSubspace.span(ctx, 2, gens)
    assert u.dim() == ctx.n
    return ClubRecipe(
        family="Thm35Canonical",
        ctx=ctx,
        params={"t": t, "sbar_gens": tuple(sbar_gens), "c": c, "b": b, "a": a},
        index=ctx.n - 2,
        subspace=u,
    )


# -- polynomial forms ----------------------------------------------------------

def _trace_form_poly(ctx, pairs):
    """LinPoly for x -> sum_m m_scale * Tr_{q^n/q}(m_dual * x)."""
    coeffs = []
    for i in range(ctx.n):
        acc = 0
        for scale, dual in pairs:
            acc = ctx.add(acc, ctx.mul(scale, ctx.frobenius(dual, i)))
        coeffs.append(acc)
    return LinPoly(ctx, coeffs)


def poly_thm51(ctx: FieldCtx, lam) -> ClubRecipe:
    """p = Tr(c_{n-2} x) + lam Tr(c_{n-1} x) from the omega-shifted basis.

    omega is the first element (base-p order) making
    (1, lam, ..., lam^(n-3), lam^(n-2) + omega, omega lam) a basis; for
    odd q the omega = lam^(n-2) shortcut is used and cross-checked
    against the scanned witness.
    """
    n = ctx.n
    if ctx.degree_over_base(lam) != n:
        raise FieldError("lam must have degree n over the base field")
    if n < 4:
        raise FieldError("need n >= 4")
    poly = _poly51_for_omega(ctx, lam, _scan_omega51(ctx, lam))
    if ctx.q % 2 == 1:
        shortcut = _poly51_for_omega(ctx, lam, ctx.pow(lam, n - 2))
        rep_a = linear_set(graph_subspace(poly))
        rep_b = linear_set(graph_subspace(shortcut))
        assert rep_a.spectrum == rep_b.spectrum, "shortcut spectrum mismatch"
        poly = shortcut
    return ClubRecipe(
        family="PolyLambda",
        ctx=ctx,
        params={"lam": lam},
        index=n - 2,
        subspace=graph_subspace(poly),
        polynomial=poly,
    )


def _scan_omega51(ctx, lam):
    n = ctx.n
    for omega in ctx.elements():
        basis = [ctx.pow(lam, i) for i in range(n - 2)]
        basis.append(ctx.add(ctx.pow(lam, n - 2), omega))
        basis.append(ctx.mul(omega, lam))
        if is_basis(ctx, basis):
            return omega
    raise AssertionError("no omega witness exists")


def _poly51_for_omega(ctx, lam, omega):
    n = ctx.n
    basis = [ctx.pow(lam, i) for i in range(n - 2)]
    basis.append(ctx.add(ctx.pow(lam, n - 2), omega))
    basis.append(ctx.mul(omega, lam))
    dual = dual_basis(ctx, basis)
    return _trace_form_poly(ctx, [(1, dual[n - 2]), (lam, dual[n - 1])])


def poly_thm52(ctx: FieldCtx, f_coeffs, r: int) -> ClubRecipe:
    """p = Tr_{q^n/q^t}(f(x) - x) for scattered f over F_{q^t}, n = rt."""
    n = ctx.n
    if n % r != 0:
        raise FieldError("r must divide n")
    t = n // r
    if r < 2 or t < 2:
        raise FieldError("need r, t > 1")
    f_coeffs = list(f_coeffs)
    if len(f_coeffs) != t or any(not ctx.is_in_subfield(cf, t) for cf in f_coeffs):
        raise FieldError("f needs t coefficients in F_{q^t}")
    if not is_scattered_over_subfield(ctx, f_coeffs, t):
        raise FieldError("f is not scattered over F_{q^t}")
    g = list(f_coeffs)
    g[0] = ctx.sub(g[0], 1)
    coeffs = [0] * n
    for j in range(r):
        for i, gi in enumerate(g):
            if gi:
                k = (t * j + i) % n
                coeffs[k] = ctx.add(coeffs[k], ctx.frobenius(gi, t * j))
    poly = LinPoly(ctx, coeffs)
    ker = subfield_kernel_size(ctx, g, t, 0)
    index = t * (r - 1) + (0 if ker == 1 else 1)
    return ClubRecipe(
        family="PolyScattered",
        ctx=ctx,
        params={"f": tuple(f_coeffs), "r": r, "t": t},
        index=index,
        subspace=graph_subspace(poly),
        polynomial=poly,
    )


def poly_thm53(ctx: FieldCtx, t: int, sbar_gens, c, b, a) -> ClubRecipe:
    """p = Tr(xi x) + b Tr(eta x) from the assembled canonical basis.

    The ordered basis is (s_1, ..., s_(lt), c, cb, ..., cb^(t-3),
    1 + omega, a + omega b) with omega the first scan witness; xi and
    eta are entries n-2 and n-1 of its dual basis.  The perpendicular
    space of <xi, eta> is checked to be S itself.
    """
    sbar, s, failures = canonical_club_space(ctx, t, sbar_gens, c, b, a)
    if failures:
        raise ClassificationError("; ".join(failures))
    n = ctx.n
    head = [v[0] for v in sbar.fq_basis()]
    head += [ctx.mul(c, ctx.pow(b, i)) for i in range(t - 2)]
    assert len(head) == n - 2
    omega = None
    for cand in ctx.elements():
        basis = head + [ctx.add(1, cand), ctx.add(a, ctx.mul(cand, b))]
        if is_basis(ctx, basis):
            omega = cand
            break
    assert omega is not None, "no omega witness exists"
    basis = head + [ctx.add(1, omega), ctx.add(a, ctx.mul(omega, b))]
    dual = dual_basis(ctx, basis)
    xi, eta = dual[n - 2], dual[n - 1]
    _assert_perp_space(ctx, (xi, eta), head)
    poly = _trace_form_poly(ctx, [(1, xi), (b, eta)])
    return ClubRecipe(
        family="PolyCanonical",
        ctx=ctx,
        params={"t": t, "sbar_gens": tuple(sbar_gens), "c": c, "b": b, "a": a, "omega": omega},
        index=n - 2,
        subspace=graph_subspace(poly),
        polynomial=poly,
    )


def _assert_perp_space(ctx, duals, head):
    """<duals>^perp under Tr(xy) must equal the F_q-span of head."""
    span = subspace_from_elements(ctx, head)
    perp = [x for x in ctx.elements() if all(ctx.trace(ctx.mul(d, x), 1) == 0 for d in duals)]
    assert sorted(perp) == sorted(span.elements()), "perpendicular space mismatch"
