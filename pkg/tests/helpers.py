"""Seeded instance families shared by several test modules."""

from __future__ import annotations

import random
from math import comb

from clutterbetti import Clutter, GlueSpec, clique_complex, glue
from clutterbetti.bits import vertices_of
from clutterbetti.classify import on_support
from clutterbetti.errors import InvalidGlue
from clutterbetti.generators import CLIQUE_INTERSECTION, SC_DISJOINT, random_clutter


def is_zero(C: Clutter) -> bool:
    return C.n >= C.d and len(C) == comb(C.n, C.d)


def nonzero_part(rng: random.Random, d: int, n_max: int) -> Clutter:
    """A random clutter on its own support whose circuit ideal is nonzero."""
    while True:
        n = rng.randint(d + 1, n_max)
        k = rng.randint(1, comb(n, d) - 1)
        C = on_support(random_clutter(n, d, k, rng))
        if C.n >= d + 1 and not is_zero(C):
            return Clutter(C.n, C.d, C.circuits)


def glued_instance(seed: int, n_max: int = 10):
    """(mode, d, C1, C2, union) with both parts nonzero and the union on <= n_max vertices."""
    rng = random.Random(seed)
    mode = CLIQUE_INTERSECTION if seed % 2 == 0 else SC_DISJOINT
    d = rng.choice([2, 3])
    while True:
        A, B = nonzero_part(rng, d, 6), nonzero_part(rng, d, 6)
        if mode == CLIQUE_INTERSECTION:
            i = rng.randint(0, d)
            fa, fb = clique_complex(A).faces, clique_complex(B).faces
            if i >= len(fa) or i >= len(fb) or not fa[i] or not fb[i]:
                continue
            ident = dict(zip(vertices_of(rng.choice(fb[i])), rng.sample(vertices_of(rng.choice(fa[i])), i)))
        else:
            i = rng.randint(0, min(A.n, B.n, 3))
            ident = dict(zip(rng.sample(range(1, B.n + 1), i), rng.sample(range(1, A.n + 1), i)))
        if A.n + B.n - len(ident) > n_max:
            continue
        try:
            U = glue(A, B, GlueSpec(mode, ident))
        except InvalidGlue:
            continue
        return mode, d, A, B, U


def random_dim_ok(rng: random.Random, n_max: int = 8, d_choices=(2, 3)) -> Clutter:
    """Random clutter whose clique complex has dimension d - 1 and nonzero ideal."""
    while True:
        d = rng.choice(d_choices)
        n = rng.randint(d + 1, n_max)
        C = random_clutter(n, d, rng.randint(1, comb(n, d) - 1), rng)
        if clique_complex(C).dim == d - 1 and not is_zero(C):
            return C
