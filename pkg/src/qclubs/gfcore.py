"""Exact arithmetic in F_{q^n} with q = p^h, built over the prime field.

All elements of F_{q^n} = F_{p^(h*n)} are represented as plain Python ints:
the base-p integer encoding of the coefficient vector (constant term first)
of a residue in F_p[x]/(modulus).  A single FieldCtx carries the modulus,
discrete log/exp tables and the subfield lattice; every operation in the
rest of the package is relative to one FieldCtx.

Intermediate fields F_{q^t} (t | n) are located as fixed points of the
Frobenius x -> x^(q^t) rather than as explicit towers, so there is exactly
one arithmetic kernel and no coercion between representations.
"""

from __future__ import annotations

import math
from functools import lru_cache

from sympy import factorint

MAX_FIELD_SIZE = 2 ** 20

# Lexicographically-smallest monic irreducible polynomial over F_p per
# degree, coefficients constant-term first, leading coefficient included.
DEFAULT_MODULI = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 1, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (3, 7): (2, 0, 1, 0, 0, 0, 0, 1),
    (3, 8): (2, 0, 1, 0, 0, 0, 0, 0, 1),
    (3, 9): (1, 0, 1, 2, 0, 0, 0, 0, 0, 1),
    (3, 10): (1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 11): (2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 12): (2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (5, 1): (0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (5, 5): (1, 4, 0, 0, 0, 1),
    (5, 6): (2, 1, 0, 0, 0, 0, 1),
    (5, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (5, 8): (2, 0, 0, 0, 0, 0, 0, 0, 1),
}


class FieldError(ValueError):
    """Invalid field parameter or element."""


def _poly_mulmod(a, b, modulus, p):
    """Multiply two coefficient lists mod (modulus, p).  modulus monic."""
    deg = len(modulus) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for k in range(len(res) - 1, deg - 1, -1):
        c = res[k]
        if c:
            res[k] = 0
            for j in range(deg):
                res[k - deg + j] = (res[k - deg + j] - c * modulus[j]) % p
    res = res[:deg]
    res += [0] * (deg - len(res))
    return res


def _poly_powmod_x(e, modulus, p):
    """x^e mod (modulus, p) by square-and-multiply."""
    deg = len(modulus) - 1
    result = [1] + [0] * (deg - 1)
    base = ([0, 1] + [0] * (deg - 2))[:deg] if deg > 1 else [modulus[0] and (p - modulus[0]) % p or 0]
    if deg == 1:
        # x == -modulus[0] in F_p[x]/(x + c)
        base = [(-modulus[0]) % p]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, modulus, p)
        base = _poly_mulmod(base, base, modulus, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while any(b):
        while a and a[-1] == 0:
            a.pop()
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        if len(a) < len(b):
            a, b = b, a
            continue
        inv = pow(b[-1], p - 2, p)
        shift = len(a) - len(b)
        c = (a[-1] * inv) % p
        for j in range(len(b)):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            a, b = b, a
    while a and a[-1] == 0:
        a.pop()
    return a if a else [0]


def is_irreducible(modulus, p):
    """Rabin test: x^(p^deg) == x mod f and gcd(x^(p^(deg/r)) - x, f) = 1."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] != 1:
        return False
    xq = _poly_powmod_x(p ** deg, modulus, p)
    expect = [0, 1] + [0] * (deg - 2) if deg > 1 else [(-modulus[0]) % p]
    if xq[: len(expect)] + [0] * (deg - len(expect)) != list(expect) + [0] * (deg - len(expect)):
        return False
    for r in set(factorint(deg)):
        xe = _poly_powmod_x(p ** (deg // r), modulus, p)
        diff = list(xe)
        diff[1] = (diff[1] - 1) % p if deg > 1 else diff[0]
        if deg == 1:
            continue
        g = _poly_gcd(diff, modulus, p)
        if len(g) > 1:
            return False
    return True


def _is_prime(m):
    if m < 2:
        return False
    for d in range(2, int(math.isqrt(m)) + 1):
        if m % d == 0:
            return False
    return True


class FieldCtx:
    """The field F_{q^n}, q = p^h, as F_p[x]/(modulus) with deg = h*n.

    Elements are ints in [0, p^(h*n)), the base-p encoding of their
    coefficient vector.  Multiplication goes through discrete log/exp
    tables built once at construction.
    """

    def __init__(self, p, h, n, modulus=None):
        if not _is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if h < 1 or n < 1:
            raise FieldError("h and n must be positive")
        self.p = p
        self.h = h
        self.n = n
        self.q = p ** h
        self.deg = h * n
        self.size = p ** self.deg
        if self.size > MAX_FIELD_SIZE:
            raise FieldError(f"field size {self.size} above the supported gate {MAX_FIELD_SIZE}")
        if modulus is None:
            try:
                modulus = DEFAULT_MODULI[(p, self.deg)]
            except KeyError:
                raise FieldError(f"no built-in modulus for p={p}, degree={self.deg}; pass one")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != self.deg + 1:
            raise FieldError(f"modulus must have degree {self.deg}")
        if not is_irreducible(list(modulus), p):
            raise FieldError("modulus is not irreducible over F_p")
        self.modulus = modulus
        self._build_tables()
        # fixed generator of the multiplicative group of F_q, used for
        # F_q-closure of subspaces elsewhere
        self.q_generator = self.primitive_in_subfield(1)

    # -- encoding -----------------------------------------------------

    def to_vector(self, a):
        """Coefficient vector over F_p, constant term first."""
        digs = []
        for _ in range(self.deg):
            digs.append(a % self.p)
            a //= self.p
        return tuple(digs)

    def from_vector(self, vec):
        a = 0
        for c in reversed(list(vec)):
            a = a * self.p + (c % self.p)
        return a

    def elements(self):
        """All field elements in deterministic (base-p integer) order."""
        return range(self.size)

    # -- table construction -------------------------------------------

    def _mul_raw(self, a, b):
        av, bv = self.to_vector(a), self.to_vector(b)
        return self.from_vector(_poly_mulmod(list(av), list(bv), list(self.modulus), self.p))

    def _build_tables(self):
        N = self.size
        order = N - 1
        fac = sorted(factorint(order))
        # smallest element generating the multiplicative group
        primitive = None
        for g in range(2, N):
            if all(self._pow_raw(g, order // r) != 1 for r in fac):
                primitive = g
                break
        if primitive is None:  # only F_2
            primitive = 1
        self.primitive = primitive
        exp = [1] * order
        log = [0] * N
        acc = 1
        for k in range(order):
            exp[k] = acc
            log[acc] = k
            acc = self._mul_raw(acc, primitive)
        self._exp = exp
        self._log = log
        self._order = order

    def _pow_raw(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    # -- arithmetic ----------------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        r = 0
        mult = 1
        for _ in range(self.deg):
            r += ((a + b) % self.p) * mult
            a //= self.p
            b //= self.p
            mult *= self.p
        return r

    def neg(self, a):
        if self.p == 2:
            return a
        r = 0
        mult = 1
        for _ in range(self.deg):
            r += ((-a) % self.p) * mult
            a //= self.p
            mult *= self.p
        return r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._order]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._exp[(-self._log[a]) % self._order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return self._exp[(self._log[a] * e) % self._order]

    def scalar_from_int(self, c):
        """Image of the integer c in the prime field F_p."""
        return c % self.p

    def frobenius(self, a, k=1):
        """a^(q^k); k may be any integer."""
        return self.pow(a, self.q ** (k % self.n))

    def frobenius_p(self, a, e):
        """a^(p^e), the general field automorphism."""
        return self.pow(a, self.p ** (e % self.deg))

    # -- subfield lattice ----------------------------------------------

    def _check_divisor(self, t):
        if t < 1 or self.n % t != 0:
            raise FieldError(f"t = {t} does not divide n = {self.n}")

    def primitive_in_subfield(self, t):
        """An element of multiplicative order q^t - 1 (generates F_{q^t}^*)."""
        self._check_divisor(t)
        sub_order = self.q ** t - 1
        if sub_order == 0:
            return 1
        return self._exp[(self._order // sub_order) % self._order] if sub_order < self._order else self.primitive

    @lru_cache(maxsize=None)
    def subfield_elements(self, t):
        """All of F_{q^t} (t | n), ascending; exactly p^(h*t) entries."""
        self._check_divisor(t)
        sub_order = self.q ** t - 1
        g = self.primitive_in_subfield(t)
        elems = {0, 1}
        acc = 1
        for _ in range(sub_order - 1):
            acc = self.mul(acc, g)
            elems.add(acc)
        return tuple(sorted(elems))

    def is_in_subfield(self, a, t):
        self._check_divisor(t)
        return self.frobenius(a, t) == a

    def degree_over_base(self, b):
        """Smallest t | n with b^(q^t) = b; degree of F_q(b) over F_q."""
        for t in sorted(divisors(self.n)):
            if self.frobenius(b, t) == b:
                return t
        raise AssertionError("unreachable: every element is fixed by q^n")

    # -- trace / norm / minimal polynomial ------------------------------

    def trace(self, a, t=1):
        """Tr over F_{q^t}: sum of a^(q^(t*i)) for i < n/t."""
        self._check_divisor(t)
        acc = 0
        for i in range(self.n // t):
            acc = self.add(acc, self.frobenius(a, t * i))
        return acc

    def norm(self, a, t=1):
        """N over F_{q^t}: a^((q^n-1)/(q^t-1)); norm(0) = 0."""
        self._check_divisor(t)
        if a == 0:
            return 0
        return self.pow(a, (self.q ** self.n - 1) // (self.q ** t - 1))

    def min_poly(self, lam, t=1):
        """Minimal polynomial of lam over F_{q^t}: monic coefficient list
        (constant first), entries lying in F_{q^t}."""
        self._check_divisor(t)
        conjugates = []
        c = lam
        while c not in conjugates:
            conjugates.append(c)
            c = self.frobenius(c, t)
        # product of (x - c) over conjugates, coefficients in ambient field
        poly = [1]
        for c in conjugates:
            nxt = [0] * (len(poly) + 1)
            for i, co in enumerate(poly):
                nxt[i + 1] = self.add(nxt[i + 1], co)
                nxt[i] = self.add(nxt[i], self.mul(self.neg(c), co))
            poly = nxt
        assert all(self.is_in_subfield(co, t) for co in poly)
        return poly

    def eval_poly(self, coeffs, x):
        """Evaluate an ordinary polynomial (constant-first coeffs) at x."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def __repr__(self):
        return f"FieldCtx(p={self.p}, h={self.h}, n={self.n})"

    # identity-based hashing: contexts are built once and shared
    __hash__ = object.__hash__


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


# -- F_q-linear algebra inside the field (lists of field elements) -------

def is_basis(ctx, elems):
    """True iff elems form an F_q-basis of F_{q^n} (needs len == n)."""
    if len(elems) != ctx.n:
        return False
    from . import plinalg

    rows = [_fq_rows(ctx, e) for e in elems]
    mat = [r for group in rows for r in group]
    return plinalg.rank(mat, ctx.p) == ctx.deg


def _fq_rows(ctx, e):
    """F_p coefficient rows of gamma^j * e for j < h (the F_q-multiples)."""
    g = ctx.q_generator
    rows = []
    acc = e
    for _ in range(ctx.h):
        rows.append(list(ctx.to_vector(acc)))
        acc = ctx.mul(acc, g)
    return rows


def gram_matrix(ctx, basis):
    """Matrix [Tr_{q^n/q}(b_i b_j)] with entries in F_q."""
    n = len(basis)
    return [[ctx.trace(ctx.mul(basis[i], basis[j]), 1) for j in range(n)] for i in range(n)]


def _fq_matrix_inverse(ctx, mat):
    """Invert a matrix with entries in F_q using field arithmetic."""
    n = len(mat)
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise FieldError("singular Gram matrix: input is not a basis")
        a[col], a[piv] = a[piv], a[col]
        inv = ctx.inv(a[col][col])
        a[col] = [ctx.mul(inv, v) for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                c = a[r][col]
                a[r] = [ctx.sub(a[r][j], ctx.mul(c, a[col][j])) for j in range(2 * n)]
    return [row[n:] for row in a]


def dual_basis(ctx, basis):
    """Dual basis under the trace form: Tr(b_i b*_j) = delta_ij, exact.

    Generic path: invert the Gram matrix [Tr(b_i b_j)] over F_q.
    """
    if not is_basis(ctx, basis):
        raise FieldError("input is not an F_q-basis")
    ginv = _fq_matrix_inverse(ctx, gram_matrix(ctx, basis))
    out = []
    for j in range(len(basis)):
        acc = 0
        for i in range(len(basis)):
            acc = ctx.add(acc, ctx.mul(ginv[j][i], basis[i]))
        out.append(acc)
    return out


def dual_basis_polynomial(ctx, lam):
    """Closed-form dual of the polynomial basis (1, lam, ..., lam^(n-1)).

    With f = minimal polynomial of lam over F_q, delta = f'(lam) and
    gamma_i = sum_j lam^(j-1) a_(i+j), the dual is (gamma_i / delta)_i.
    """
    n = ctx.n
    f = ctx.min_poly(lam, 1)
    if len(f) != n + 1:
        raise FieldError("lam does not generate a degree-n polynomial basis")
    # f'(lam)
    delta = 0
    for k in range(1, n + 1):
        delta = ctx.add(delta, ctx.mul(_int_mul(ctx, k, f[k]), ctx.pow(lam, k - 1)))
    dinv = ctx.inv(delta)
    out = []
    for i in range(n):
        gamma = 0
        for j in range(1, n - i + 1):
            gamma = ctx.add(gamma, ctx.mul(ctx.pow(lam, j - 1), f[i + j]))
        out.append(ctx.mul(dinv, gamma))
    return out


def _int_mul(ctx, k, a):
    """k * a for an integer k (repeated addition image of k in F_p)."""
    return ctx.mul(ctx.scalar_from_int(k), a)


def dual_basis_binomial(ctx, lam):
    """Dual of (1, lam, ..., lam^(n-1)) when min poly is x^n - d.

    Returns None when the shortcut does not apply (wrong shape, or the
    scalar n*d vanishes in characteristic p).
    """
    n = ctx.n
    f = ctx.min_poly(lam, 1)
    if len(f) != n + 1 or any(f[k] != 0 for k in range(1, n)):
        return None
    d = ctx.neg(f[0])
    nd = _int_mul(ctx, n, d)
    if nd == 0:
        return None
    ndinv = ctx.inv(nd)
    return [ctx.mul(ndinv, ctx.pow(lam, n - i)) for i in range(n)]


def dual_basis_trinomial(ctx, lam):
    """Dual of (1, lam, ..., lam^(n-1)) when min poly is x^n - c*x^k - 1.

    Returns None when not applicable.
    """
    n = ctx.n
    f = ctx.min_poly(lam, 1)
    if len(f) != n + 1:
        return None
    if f[0] != ctx.neg(1):
        return None
    ks = [k for k in range(1, n) if f[k] != 0]
    if len(ks) != 1:
        return None
    k = ks[0]
    c = ctx.neg(f[k])
    num = ctx.sub(_int_mul(ctx, n, ctx.pow(lam, n - 1)), ctx.mul(_int_mul(ctx, k, c), ctx.pow(lam, k - 1)))
    den = ctx.add(ctx.neg(c), ctx.pow(lam, n - k))
    if den == 0 or num == 0:
        return None
    delta = ctx.div(num, den)
    dinv = ctx.inv(delta)
    out = [ctx.mul(dinv, ctx.pow(lam, k - 1 - i)) for i in range(k)]
    out += [ctx.mul(dinv, ctx.pow(lam, n - 1 - i)) for i in range(n - k)]
    return out


def parse_field_config(text):
    """Parse the `key = value` field-config format.

    Keys: p, h, n, modulus (comma-separated ints, constant term first),
    optional seed.  Returns a dict.
    """
    out = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise FieldError(f"bad config line: {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "modulus":
            out[key] = tuple(int(v) for v in value.split(","))
        elif key in ("p", "h", "n", "seed"):
            out[key] = int(value)
        else:
            raise FieldError(f"unknown config key: {key}")
    return out


_CTX_CACHE = {}


def get_ctx(p, h, n, modulus=None):
    """Shared FieldCtx instances (they are immutable)."""
    key = (p, h, n, tuple(modulus) if modulus else None)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = FieldCtx(p, h, n, modulus)
    return _CTX_CACHE[key]
