import random

import pytest

from qclubs import get_ctx
from qclubs.subspaces import QSubspace, subspace_from_elements

SMALL_FIELDS = [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5), (2, 6)]


def ctx_for(q, n):
    return get_ctx(q, 1, n)


def random_s1_subspace(ctx, rng, dim, with_one=True):
    """A random dimension-`dim` F_q-subspace of F_{q^n}, optionally containing 1."""
    while True:
        gens = [1] if with_one else [rng.randrange(1, ctx.size)]
        s = subspace_from_elements(ctx, gens)
        guard = 0
        while s.dim() < dim:
            s = s.sum(subspace_from_elements(ctx, [rng.randrange(1, ctx.size)]))
            guard += 1
            if guard > 50:
                break
        if s.dim() == dim:
            return s


def random_sab(ctx, rng, dim=None):
    """A random valid (S, a, b): 1 in S, a outside S, b outside F_q."""
    n = ctx.n
    if dim is None:
        dim = rng.randrange(1, n - 1)
    s = random_s1_subspace(ctx, rng, dim)
    while True:
        a = rng.randrange(1, ctx.size)
        if not s.contains((a,)):
            break
    while True:
        b = rng.randrange(ctx.size)
        if not ctx.is_in_subfield(b, 1):
            break
    return s, a, b


@pytest.fixture
def rng():
    return random.Random(0)
