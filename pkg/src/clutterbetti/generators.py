"""Fixture clutters and constructions.

Named examples, parametric pseudo-manifolds, gluing of two clutters along a
clique or with disjoint submaximal circuits, and a seeded random generator of
generalized chordal clutters.  The two embedded surface triangulations are
checked against their expected topology the first time they are built.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .bits import facets_of, full_mask, mask_of, submasks_of_size, vertices_of
from .clutter import Clutter, maximal_clutter, submaximal_circuits
from .complex import clique_complex, euler_characteristic, f_vector, generated_complex, reduced_homology_dims
from .errors import FixtureValidationFailed, InconsistentInput, InvalidGlue
from .linalg import GF2, QQ

log = logging.getLogger(__name__)

CLIQUE_INTERSECTION = "clique-intersection"
SC_DISJOINT = "sc-disjoint"


# ------------------------------------------------------------ families


def cycle(n: int) -> Clutter:
    if n < 3:
        raise InconsistentInput(f"cycle needs n >= 3, got {n}")
    return Clutter.from_sets(n, 2, ((i, i % n + 1) for i in range(1, n + 1)))


def cross_polytope_boundary(d: int) -> Clutter:
    """Boundary of the d-dimensional cross-polytope; vertex ``2k-1`` is ``k+``, ``2k`` is ``k-``."""
    if d < 2:
        raise InconsistentInput(f"cross-polytope boundary needs d >= 2, got {d}")
    sets = []
    for signs in range(1 << d):
        sets.append([2 * k + 1 + (signs >> k & 1) for k in range(d)])
    return Clutter.from_sets(2 * d, d, sets)


# ------------------------------------------------------------ named fixtures


def two_bipyramids() -> Clutter:
    """The 7-vertex 3-uniform clutter glued from two bipyramids along 345."""
    return Clutter.from_strings(7, 3, "123 124 134 235 245 345 347 367 467 356 456".split())


ALMOST_TREE_TEN_LABELS = {str(k): k for k in range(1, 9)} | {"a": 9, "b": 10}

_ALMOST_TREE_TEN_FACES = (
    "a23 b14 ab1 a12 ab4 a34 236 367 125 256 145 458 348 378 "
    "a67 b58 ab5 a56 ab8 a78"
).split()


def almost_tree_ten() -> Clutter:
    """20 triangles on a, b, 1..8 (a -> 9, b -> 10); the edge ab has degree 4."""
    names = tuple(range(1, 9)) + ("a", "b")
    return Clutter.from_sets(
        10, 3, ([ALMOST_TREE_TEN_LABELS[ch] for ch in w] for w in _ALMOST_TREE_TEN_FACES), labels=names
    )


_RP2_FACES = ("123", "134", "145", "156", "162", "235", "346", "452", "563", "624")


@lru_cache(maxsize=None)
def rp2_six() -> Clutter:
    """6-vertex triangulation of the real projective plane."""
    C = Clutter.from_strings(6, 3, _RP2_FACES)
    _validate_surface(C, "rp2_six", chi=1, f=(6, 15, 10), h1_field=GF2, h1=1, orientable=False)
    return C


@lru_cache(maxsize=None)
def torus_seven() -> Clutter:
    """7-vertex (Moebius-Csaszar) triangulation of the torus."""
    sets = []
    for i in range(7):
        sets.append([i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1])
        sets.append([i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1])
    C = Clutter.from_sets(7, 3, sets)
    _validate_surface(C, "torus_seven", chi=0, f=(7, 21, 14), h1_field=QQ, h1=2, orientable=True)
    return C


def _validate_surface(C, name, *, chi, f, h1_field, h1, orientable) -> None:
    from .classify import is_orientable, is_pseudo_manifold

    problems = []
    if not is_pseudo_manifold(C):
        problems.append("not a pseudo-manifold")
    gen = generated_complex(C)
    if f_vector(gen)[1:] != f:
        problems.append(f"f-vector {f_vector(gen)[1:]} != {f}")
    if euler_characteristic(gen) != chi:
        problems.append(f"Euler characteristic {euler_characteristic(gen)} != {chi}")
    got = reduced_homology_dims(clique_complex(C), h1_field, 1, 1)[0]
    if got != h1:
        problems.append(f"dim H1 over {h1_field} is {got}, expected {h1}")
    if not problems and is_orientable(C) != orientable:
        problems.append("orientability mismatch")
    if problems:
        raise FixtureValidationFailed(f"{name}: " + "; ".join(problems))


# ------------------------------------------------------------ gluing


@dataclass(frozen=True)
class GlueSpec:
    """How to glue: ``identification`` maps vertices of the second part to the first."""

    mode: str
    identification: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in (CLIQUE_INTERSECTION, SC_DISJOINT):
            raise InvalidGlue(f"unknown glue mode {self.mode!r}")


def is_clique_mask(C: Clutter, V: int) -> bool:
    return all(s in C for s in submasks_of_size(V, C.d))


def glue(C1: Clutter, C2: Clutter, spec: GlueSpec) -> Clutter:
    """Union of C1 and a copy of C2 sharing the identified vertices."""
    if C1.d != C2.d:
        raise InvalidGlue(f"uniformities differ: {C1.d} vs {C2.d}")
    ident = dict(spec.identification)
    if len(set(ident.values())) != len(ident):
        raise InvalidGlue("identification is not injective")
    if any(not 1 <= k <= C2.n for k in ident) or any(not 1 <= v <= C1.n for v in ident.values()):
        raise InvalidGlue("identification uses a vertex outside the parts")
    mapping = {}
    fresh = C1.n
    for v in range(1, C2.n + 1):
        if v in ident:
            mapping[v] = ident[v]
        else:
            fresh += 1
            mapping[v] = fresh
    moved = [mask_of(mapping[v] for v in s) for s in C2.sets()]
    if spec.mode == CLIQUE_INTERSECTION:
        if not is_clique_mask(C1, mask_of(ident.values())):
            raise InvalidGlue("identified vertices are not a clique of the first part")
        if not is_clique_mask(C2, mask_of(ident)):
            raise InvalidGlue("identified vertices are not a clique of the second part")
    else:
        sc1 = set(submaximal_circuits(C1))
        if any(e in sc1 for c in moved for e in facets_of(c)):
            raise InvalidGlue("parts share a submaximal circuit")
    return Clutter(fresh, C1.d, C1.circuits + tuple(moved))


# ------------------------------------------------------------ generalized chordal


def _random_clique(C: Clutter, size: int, rng: random.Random) -> int | None:
    if size < C.d:
        if size > C.n:
            return None
        return mask_of(rng.sample(range(1, C.n + 1), size))
    faces = clique_complex(C).faces
    if size >= len(faces) or not faces[size]:
        return None
    return rng.choice(faces[size])


def generalized_chordal(seed: int, steps: int = 6, n_max: int = 10, d: int = 3,
                        trace: list | None = None) -> Clutter:
    """Random generalized chordal clutter built from seeded rule applications.

    Starts from a maximal clutter (rule a), then applies ``steps`` random
    rules: (b) glue a fresh maximal clutter along a clique of size ``i``, or
    (c) add a d-set one of whose (d-1)-subsets is not yet a submaximal
    circuit; rule (c) may use one brand-new vertex while ``n < n_max``.
    Every applied rule is appended to ``trace`` and logged at DEBUG level.
    """
    if n_max < d:
        raise InconsistentInput("n_max must be at least d")
    rng = random.Random(seed)
    steps_log = trace if trace is not None else []
    n0 = rng.randint(d, min(n_max, d + 2))
    C = maximal_clutter(n0, d)
    steps_log.append(("a", n0))
    for _ in range(steps):
        for _attempt in range(20):
            rule = rng.choice("bc")
            step = _rule_b(C, rng, n_max) if rule == "b" else _rule_c(C, rng, n_max)
            if step is not None:
                C, record = step
                steps_log.append(record)
                log.debug("generalized_chordal seed=%s: %s", seed, record)
                break
    return C


def _rule_b(C: Clutter, rng: random.Random, n_max: int):
    room = n_max - C.n
    if room < 1:
        return None
    d = C.d
    m = rng.randint(d, d + 2)
    low = max(0, m - room)
    if low > m - 1:
        return None
    i = rng.randint(low, m - 1)
    S = _random_clique(C, i, rng)
    if S is None:
        return None
    targets = vertices_of(S)
    new_side = rng.sample(range(1, m + 1), i)
    spec = GlueSpec(CLIQUE_INTERSECTION, dict(zip(new_side, targets)))
    return glue(C, maximal_clutter(m, d), spec), ("b", m, i, targets)


def _rule_c(C: Clutter, rng: random.Random, n_max: int):
    d = C.d
    sc = set(submaximal_circuits(C))
    use_fresh = C.n < n_max and rng.random() < 0.25
    n = C.n + 1 if use_fresh else C.n
    for _ in range(50):
        if use_fresh:
            V = mask_of(rng.sample(range(1, C.n + 1), d - 1) + [n])
        else:
            V = mask_of(rng.sample(range(1, C.n + 1), d))
        if V in C:
            continue
        if any(e not in sc for e in facets_of(V)):
            return Clutter(n, d, C.circuits + (V,)), ("c", vertices_of(V))
    return None


def add_circuit_rule_c(G: Clutter, V) -> Clutter:
    """Apply rule (c) with an explicit d-set; labels above ``G.n`` extend the vertex set."""
    V = mask_of(V)
    if bin(V).count("1") != G.d:
        raise InconsistentInput("V must have exactly d vertices")
    sc = set(submaximal_circuits(G))
    if all(e in sc for e in facets_of(V)):
        raise InconsistentInput("every (d-1)-subset of V is already a submaximal circuit")
    n = max(G.n, V.bit_length())
    return Clutter(n, G.d, G.circuits + (V,))


def random_clutter(n: int, d: int, k: int, rng: random.Random) -> Clutter:
    """k distinct random d-subsets of 1..n."""
    pool = list(submasks_of_size(full_mask(n), d))
    return Clutter(n, d, tuple(rng.sample(pool, min(k, len(pool)))))


def disjoint_union(C1: Clutter, C2: Clutter) -> Clutter:
    return glue(C1, C2, GlueSpec(SC_DISJOINT, {}))


__all__ = [
    "CLIQUE_INTERSECTION",
    "SC_DISJOINT",
    "GlueSpec",
    "add_circuit_rule_c",
    "cross_polytope_boundary",
    "cycle",
    "disjoint_union",
    "two_bipyramids",
    "almost_tree_ten",
    "generalized_chordal",
    "glue",
    "is_clique_mask",
    "random_clutter",
    "rp2_six",
    "torus_seven",
]
