"""Command-line frontend.

Reports are deterministic key = value text (or key,value records) on
standard output; timing goes to standard error so reports stay
byte-identical across runs.  Exit codes: 0 success, 1 validation
error, 2 a verified mathematical claim failed to hold.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import constructions as con
from . import equivalence as eq
from . import geomapps as geo
from . import rankmetric as rm
from .gfcore import FieldError, get_ctx, dual_basis, dual_basis_polynomial, is_basis
from .linpoly import LinPoly
from .subspaces import (
    ClassificationError,
    QSubspace,
    linear_set,
    normalize_club,
    subspace_from_elements,
)

FAMILIES = ("trace-tower", "lambda", "scattered-trace", "thm35", "poly51", "poly52", "poly53")


class Report:
    def __init__(self, fmt="text"):
        self.fmt = fmt
        self.lines = []

    def add(self, key, value):
        self.lines.append((key, value))

    def emit(self, out=None):
        out = out or sys.stdout
        for key, value in self.lines:
            if self.fmt == "records":
                out.write(f"{key},{value}\n")
            else:
                out.write(f"{key} = {value}\n")


def _add_field_args(p):
    p.add_argument("--q", type=int, help="base field size when it is prime")
    p.add_argument("--p", type=int, help="characteristic (use with --h)")
    p.add_argument("--h", type=int, default=1, help="base field degree over the prime field")
    p.add_argument("--n", type=int, required=True, help="extension degree")
    p.add_argument("--modulus", type=str, help="comma separated F_p coefficients, constant first")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)


def _ctx_from(args):
    if args.q is not None:
        p, h = args.q, 1
        if args.p is not None or args.h != 1:
            raise FieldError("give either --q or --p/--h")
    elif args.p is not None:
        p, h = args.p, args.h
    else:
        raise FieldError("a field is required: --q or --p/--h")
    modulus = None
    if args.modulus:
        modulus = tuple(int(x) for x in args.modulus.split(","))
    return get_ctx(p, h, args.n, modulus)


def _add_family_args(p):
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--lam", "--lambda", dest="lam", type=int, help="basis generator element")
    p.add_argument("--m", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--f", type=str, help="comma separated subfield polynomial coefficients")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--omega", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--sbar", type=str, default="", help="comma separated subfield-span generators")


def _default_omega(ctx, r):
    t = ctx.n // r
    for omega in ctx.elements():
        if omega and con._is_subfield_basis(ctx, [ctx.pow(omega, i) for i in range(r)], t):
            return omega
    raise FieldError("no subfield basis generator found")


def _default_canonical(ctx, t):
    """A deterministic valid (sbar_gens, c, b, a) tuple for the given t."""
    n = ctx.n
    ell = n // t - 1
    b = next(x for x in ctx.subfield_elements(t) if ctx.degree_over_base(x) == t)
    gens = []
    if ell:
        gamma = next(
            x for x in ctx.elements() if x and _gen_over_subfield(ctx, x, t)
        )
        gens = [ctx.pow(gamma, i) for i in range(ell)]
    for c in ctx.elements():
        if c == 0:
            continue
        sbar, s, failures = con.canonical_club_space(ctx, t, gens, c, b, 0)
        bad = [f for f in failures if not f.startswith("a in")]
        if bad:
            continue
        ext = s.sum(subspace_from_elements(ctx, [ctx.mul(c, ctx.pow(b, t - 2))]))
        a = next((x for x in ctx.elements() if x and not ext.contains((x,))), None)
        if a is not None:
            return gens, c, b, a
    raise FieldError(f"no canonical parameters exist for t={t}")


def _gen_over_subfield(ctx, x, t):
    import math

    return math.lcm(t, ctx.degree_over_base(x)) == ctx.n


def _build_recipe(ctx, args):
    fam = args.family
    if fam == "trace-tower":
        if args.m is None or args.ell is None:
            raise FieldError("trace-tower needs --m and --ell")
        return con.trace_tower_club(ctx, args.m, args.ell, args.s)
    if fam == "lambda":
        lam = args.lam if args.lam is not None else ctx.primitive
        return con.club_lambda(ctx, lam)
    if fam == "poly51":
        lam = args.lam if args.lam is not None else ctx.primitive
        return con.poly_thm51(ctx, lam)
    if fam in ("scattered-trace", "poly52"):
        if args.r is None:
            raise FieldError(f"{fam} needs --r")
        t = ctx.n // args.r
        f = [int(x) for x in args.f.split(",")] if args.f else [0, 1] + [0] * (t - 2)
        if fam == "poly52":
            return con.poly_thm52(ctx, f, args.r)
        a = args.a if args.a is not None else 0
        b = args.b if args.b is not None else 1
        omega = args.omega if args.omega is not None else _default_omega(ctx, args.r)
        return con.club_scattered_trace(ctx, f, a, b, omega, args.r)
    if fam in ("thm35", "poly53"):
        if args.t is None:
            raise FieldError(f"{fam} needs --t")
        if args.b is None and args.c is None and args.a is None and not args.sbar:
            gens, c, b, a = _default_canonical(ctx, args.t)
        else:
            gens = [int(x) for x in args.sbar.split(",")] if args.sbar else []
            if args.c is None or args.b is None or args.a is None:
                raise FieldError(f"{fam} needs --c, --b and --a (or no parameters at all)")
            c, b, a = args.c, args.b, args.a
        builder = con.thm35_canonical if fam == "thm35" else con.poly_thm53
        return builder(ctx, args.t, gens, c, b, a)
    raise FieldError(f"unknown family {fam}")


def _describe_recipe(rec, rep, report):
    report.add("family", rec.family)
    for key, value in sorted(rec.params.items()):
        report.add(f"param.{key}", value)
    report.add("index", rec.index)
    rs = rec.verify()
    report.add("classification", rs.tag)
    report.add("size", rs.size)
    for w in sorted(rs.spectrum):
        report.add(f"spectrum.weight{w}", rs.spectrum[w])
    if rec.polynomial is not None:
        report.add("polynomial", rec.polynomial.to_text())
    report.add("subspace", rec.subspace.to_text())


# -- subcommands -----------------------------------------------------------

def cmd_field_info(args, report):
    ctx = _ctx_from(args)
    report.add("p", ctx.p)
    report.add("h", ctx.h)
    report.add("n", ctx.n)
    report.add("q", ctx.q)
    report.add("size", ctx.size)
    report.add("modulus", ",".join(str(c) for c in ctx.modulus))
    report.add("primitive", ctx.primitive)
    from .gfcore import divisors

    for t in divisors(ctx.n):
        report.add(f"subfield.q{t}.size", ctx.q ** t)
    return 0


def cmd_construct(args, report):
    ctx = _ctx_from(args)
    rec = _build_recipe(ctx, args)
    _describe_recipe(rec, None, report)
    return 0


def cmd_analyze(args, report):
    ctx = _ctx_from(args)
    u = QSubspace.from_text(ctx, 2, args.subspace)
    rep = linear_set(u)
    report.add("rank", rep.rank)
    report.add("classification", rep.tag)
    report.add("size", rep.size)
    for w in sorted(rep.spectrum):
        report.add(f"spectrum.weight{w}", rep.spectrum[w])
    if rep.club_index is not None and rep.club_index == ctx.n - 2 and rep.rank == ctx.n:
        inv = eq.invariants(u)
        report.add("case", inv.case)
        report.add("product_span_dim", inv.d)
        report.add("t", inv.t)
        report.add("dim_s_cap_bs", inv.dim_s_cap_bs)
    return 0


def cmd_equiv(args, report):
    ctx = _ctx_from(args)
    u1 = QSubspace.from_text(ctx, 2, args.subspace1)
    u2 = QSubspace.from_text(ctx, 2, args.subspace2)
    res = eq.restricted_equiv_search(u1, u2)
    report.add("status", res.status)
    if res.witness is not None:
        (a, b), (c, d) = res.witness.matrix
        report.add("witness.matrix", f"{a},{b};{c},{d}")
        report.add("witness.automorphism_exponent", res.witness.e)
    return 0


def cmd_blocking_profile(args, report):
    ctx = _ctx_from(args)
    rec = _build_recipe(ctx, args)
    rec.verify()
    w = geo.redei_blocking_set(rec.subspace, rec.index)
    rep = linear_set(w)
    report.add("family", rec.family)
    report.add("index", rec.index)
    report.add("blocking_set_size", rep.size)
    profile = geo.line_profile(w, club_index=rec.index, seed=args.seed)
    report.add("sampled", profile.sampled)
    for wt in sorted(profile.weight_hist):
        report.add(f"lines.weight{wt}", profile.weight_hist[wt])
    for size in sorted(profile.size_hist):
        report.add(f"lines.meeting{size}", profile.size_hist[size])
    return 0


def cmd_km_arc(args, report):
    ctx = _ctx_from(args)
    rec = _build_recipe(ctx, args)
    rec.verify()
    arc = geo.km_arc(rec.subspace)
    t = 2 ** rec.index
    ok, hist = geo.verify_km_arc(arc, t)
    report.add("family", rec.family)
    report.add("index", rec.index)
    report.add("arc_size", len(arc))
    report.add("type", t)
    report.add("valid", ok)
    for size in sorted(hist):
        report.add(f"lines.meeting{size}", hist[size])
    if not ok:
        raise AssertionError("km-arc line counts must lie in {0, 2, t}")
    return 0


def cmd_code_weights(args, report):
    ctx = _ctx_from(args)
    rec = _build_recipe(ctx, args)
    code = rm.iclub_code(rec)
    dist = rm.weight_distribution(code)
    report.add("family", rec.family)
    report.add("index", rec.index)
    report.add("length", code.length)
    report.add("dimension", code.k)
    report.add("minimum_distance", dist.minimum_distance)
    for w in sorted(dist.counts):
        report.add(f"weights.{w}", dist.counts[w])
    return 0


def cmd_verify_suite(args, report):
    import random

    ctx = _ctx_from(args)
    rng = random.Random(args.seed)
    n, q = ctx.n, ctx.q
    checks = []

    def check(name, fn):
        fn()
        checks.append(name)
        report.add(f"pass.{name}", "ok")

    def _recipes():
        recs = []
        if n >= 3:
            recs.append(con.trace_tower_club(ctx, 1, n, 1))
        for m in range(2, n):
            if n % m == 0 and m * (n // m - 1) >= 2:
                recs.append(con.trace_tower_club(ctx, m, n // m, 1))
        if n >= 4:
            recs.append(con.club_lambda(ctx, ctx.primitive))
            recs.append(con.poly_thm51(ctx, ctx.primitive))
        for r in (x for x in range(2, n) if n % x == 0 and n // x >= 2):
            recs.append(con.club_scattered_trace(ctx, _xq(ctx, n // r), 0, 1, _default_omega(ctx, r), r))
            recs.append(con.poly_thm52(ctx, _xq(ctx, n // r), r))
        return recs

    def _xq(ctx, t):
        return [0, 1] + [0] * (t - 2)

    check("club_sizes_and_spectra", lambda: [r.verify() for r in _recipes()])

    def dual_bases():
        for _ in range(args.trials):
            lam = rng.randrange(1, ctx.size)
            if ctx.degree_over_base(lam) != n:
                continue
            basis = [ctx.pow(lam, i) for i in range(n)]
            d1 = dual_basis(ctx, basis)
            d2 = dual_basis_polynomial(ctx, lam)
            assert d1 == d2
            for i in range(n):
                for j in range(n):
                    want = 1 if i == j else 0
                    assert ctx.trace(ctx.mul(basis[i], d1[j]), 1) == want

    check("dual_basis_identities", dual_bases)

    def planted_equiv():
        if ctx.size ** 2 > 2 ** 20 or n < 4:
            return
        rec = con.club_lambda(ctx, ctx.primitive)
        for _ in range(min(args.trials, 10)):
            while True:
                m = tuple(tuple(rng.randrange(ctx.size) for _ in range(2)) for _ in range(2))
                if ctx.sub(ctx.mul(m[0][0], m[1][1]), ctx.mul(m[0][1], m[1][0])):
                    break
            g = eq.SemilinearMap(m, rng.randrange(ctx.deg))
            res = eq.restricted_equiv_search(rec.subspace, eq.apply_semilinear(rec.subspace, g))
            assert res.status == "equivalent"

    check("planted_equivalence_recovery", planted_equiv)

    def km_arcs():
        if ctx.p != 2 or ctx.size > geo.MAX_LINE_ENUM:
            return
        for rec in _recipes():
            if rec.subspace.k != 2:
                continue
            arc = geo.km_arc(rec.subspace)
            ok, _ = geo.verify_km_arc(arc, 2 ** rec.index)
            assert ok and len(arc) == 2 ** n + 2 ** rec.index

    check("km_arc_line_counts", km_arcs)

    def blocking_profiles():
        if ctx.size > geo.MAX_LINE_ENUM:
            return
        rec = _recipes()[0]
        w = geo.redei_blocking_set(rec.subspace, rec.index)
        geo.line_profile(w, club_index=rec.index, seed=args.seed)

    check("blocking_line_profile", blocking_profiles)

    def code_weights():
        for rec in _recipes():
            rm.iclub_code(rec)

    check("three_weight_codes", code_weights)

    report.add("checks", len(checks))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="qclubs", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("field-info", help="field parameters and subfield lattice")
    _add_field_args(p)
    p.set_defaults(func=cmd_field_info)

    p = subs.add_parser("construct", help="build a club and classify it")
    _add_field_args(p)
    _add_family_args(p)
    p.set_defaults(func=cmd_construct)

    p = subs.add_parser("analyze", help="classify a subspace given in text form")
    _add_field_args(p)
    p.add_argument("--subspace", required=True, help="semicolon separated vectors of comma separated ints")
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("equiv", help="semilinear equivalence of two club subspaces")
    _add_field_args(p)
    p.add_argument("--subspace1", required=True)
    p.add_argument("--subspace2", required=True)
    p.set_defaults(func=cmd_equiv)

    p = subs.add_parser("blocking-profile", help="line profile of the derived blocking set")
    _add_field_args(p)
    _add_family_args(p)
    p.set_defaults(func=cmd_blocking_profile)

    p = subs.add_parser("km-arc", help="build and verify the KM-arc of a club")
    _add_field_args(p)
    _add_family_args(p)
    p.set_defaults(func=cmd_km_arc)

    p = subs.add_parser("code-weights", help="rank weight distribution of the club code")
    _add_field_args(p)
    _add_family_args(p)
    p.set_defaults(func=cmd_code_weights)

    p = subs.add_parser("verify-suite", help="run all claim checks at one field")
    _add_field_args(p)
    p.set_defaults(func=cmd_verify_suite)

    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    report = Report(args.format)
    report.add("command", args.command)
    start = time.monotonic()
    try:
        code = args.func(args, report)
    except (FieldError, ClassificationError, ValueError) as exc:
        report.add("error", str(exc))
        report.emit()
        return 1
    except AssertionError as exc:
        report.add("claim_failed", str(exc) or "unnamed assertion")
        report.emit()
        return 2
    report.emit()
    print(f"elapsed_s {time.monotonic() - start:.3f}", file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
