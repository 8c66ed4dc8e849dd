"""Linearized polynomials f(x) = sum a_i x^(q^i) over F_{q^n}.

Coefficients live in the ambient field and are reduced mod x^(q^n) - x,
so a polynomial is just a length-n coefficient list.  The value spectrum
{f(a)/a : a != 0} carries the full club/scattered structure: the value m
occurs exactly q^w - 1 times where w = dim ker(f - m x).
"""

from __future__ import annotations

from . import plinalg
from .gfcore import FieldCtx, FieldError, divisors


class LinPoly:
    """A q-polynomial, stored as n coefficients (a_0, ..., a_{n-1})."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > ctx.n:
            raise FieldError(f"need at most {ctx.n} coefficients, got {len(coeffs)}")
        coeffs += [0] * (ctx.n - len(coeffs))
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, [1])

    @classmethod
    def trace(cls, ctx, t=1):
        """Tr_{q^n/q^t} as a q-polynomial: coefficient 1 at indices t*i."""
        ctx._check_divisor(t)
        coeffs = [0] * ctx.n
        for i in range(ctx.n // t):
            coeffs[t * i] = 1
        return cls(ctx, coeffs)

    def q_degree(self):
        for i in range(self.ctx.n - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return 0

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LinPoly) and self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"LinPoly({list(self.coeffs)})"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        c = self.ctx
        return LinPoly(c, [c.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        c = self.ctx
        return LinPoly(c, [c.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, alpha):
        c = self.ctx
        return LinPoly(c, [c.mul(alpha, a) for a in self.coeffs])

    def _check(self, other):
        if self.ctx is not other.ctx:
            raise FieldError("context mismatch")

    def eval(self, x):
        c = self.ctx
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a:
                acc = c.add(acc, c.mul(a, c.frobenius(x, i)))
        return acc

    def compose(self, other):
        """f o g, reduced mod x^(q^n) - x: c_k = sum a_i * b_j^(q^i), i+j=k mod n."""
        self._check(other)
        c = self.ctx
        out = [0] * c.n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = (i + j) % c.n
                out[k] = c.add(out[k], c.mul(a, c.frobenius(b, i)))
        return LinPoly(c, out)

    # -- kernels and spectra ----------------------------------------------

    def matrix(self):
        """F_p-matrix of x -> f(x), rows = images of the F_p-basis vectors."""
        c = self.ctx
        rows = []
        for i in range(c.deg):
            e = c.from_vector([1 if j == i else 0 for j in range(c.deg)])
            rows.append(list(c.to_vector(self.eval(e))))
        return rows

    def kernel_dim(self):
        """dim over F_q of {x : f(x) = 0}: F_p-nullity of the map, over h."""
        c = self.ctx
        nullity = c.deg - plinalg.rank(self.matrix(), c.p)
        assert nullity % c.h == 0
        return nullity // c.h

    def minus_mx(self, m):
        c = self.ctx
        coeffs = list(self.coeffs)
        coeffs[0] = c.sub(coeffs[0], m)
        return LinPoly(c, coeffs)

    def is_scattered(self):
        """Exhaustive test: dim ker(f - m x) <= 1 for every m in F_{q^n}."""
        return all(self.minus_mx(m).kernel_dim() <= 1 for m in self.ctx.elements())

    def value_spectrum(self):
        """Multiplicities of f(a)/a over a != 0, as a dict value -> count."""
        c = self.ctx
        spec = {}
        for a in range(1, c.size):
            v = c.div(self.eval(a), a)
            spec[v] = spec.get(v, 0) + 1
        return spec

    def club_polynomial_index(self):
        """i >= 2 when exactly one spectrum value has multiplicity q^i - 1
        and every other value has multiplicity q - 1; None otherwise."""
        q = self.ctx.q
        heavy = None
        for value, count in self.value_spectrum().items():
            if count == q - 1:
                continue
            i = _exact_log(count + 1, q)
            if i is None or i < 2 or heavy is not None:
                return None
            heavy = i
        return heavy

    def max_field_of_linearity(self):
        """Largest divisor i of n with a_j = 0 whenever i does not divide j."""
        if self.is_zero():
            raise FieldError("undefined for the zero polynomial")
        n = self.ctx.n
        support = [j for j, a in enumerate(self.coeffs) if a]
        for i in sorted(divisors(n), reverse=True):
            if all(j % i == 0 for j in support):
                return i
        return 1

    def to_text(self):
        """Comma-separated base-p integer encodings of the coefficients."""
        return ",".join(str(a) for a in self.coeffs)

    @classmethod
    def from_text(cls, ctx, text):
        return cls(ctx, [int(v) for v in text.split(",")])


def _exact_log(value, base):
    e = 0
    acc = 1
    while acc < value:
        acc *= base
        e += 1
    return e if acc == value else None


# -- scatteredness inside a subfield -------------------------------------

def eval_subfield_poly(ctx, coeffs, x):
    """Evaluate sum a_i x^(q^i) (a q-polynomial given by any-length coeffs)."""
    acc = 0
    for i, a in enumerate(coeffs):
        if a:
            acc = ctx.add(acc, ctx.mul(a, ctx.frobenius(x, i)))
    return acc


def subfield_kernel_size(ctx, coeffs, t, m=0):
    """Number of roots in F_{q^t} of f(x) = m x, f as coefficient list."""
    count = 0
    for x in ctx.subfield_elements(t):
        if eval_subfield_poly(ctx, coeffs, x) == ctx.mul(m, x):
            count += 1
    return count


def is_scattered_over_subfield(ctx, coeffs, t):
    """f in L_{t,q} scattered on F_{q^t}: ker(f - m x) has <= q points, all m."""
    q = ctx.q
    for m in ctx.subfield_elements(t):
        if subfield_kernel_size(ctx, coeffs, t, m) > q:
            return False
    return True


def is_scattered_t3_closed_form(ctx, a0, a1, a2):
    """Closed form for f = a0 x + a1 x^q + a2 x^(q^2) on F_{q^3}.

    f is scattered iff a1 = 0 and a2 != 0, or a1 != 0 and N_{q^3/q}(a2/a1) != 1.
    """
    if not all(ctx.is_in_subfield(a, 3) for a in (a0, a1, a2)):
        raise FieldError("coefficients must lie in F_{q^3}")
    if a1 == 0:
        return a2 != 0
    ratio = ctx.div(a2, a1)
    # norm from F_{q^3} down to F_q, computed inside the ambient field
    nrm = ctx.mul(ctx.mul(ratio, ctx.frobenius(ratio, 1)), ctx.frobenius(ratio, 2))
    return nrm != 1
