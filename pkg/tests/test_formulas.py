from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clutterbetti import (
    GF2,
    QQ,
    InconsistentInput,
    NonIntegralBetti,
    betti_hochster,
    clique_complex,
    cross_polytope_boundary,
    cycle,
    cycle_betti,
    almost_tree_ten,
    herzog_kuhl_variant,
    homology_difference_identity,
    minimal_resolution_formula,
    reduced_homology_dims,
    rp2_six,
    torus_seven,
)
from clutterbetti.formulas import ResolutionShape

from helpers import random_dim_ok


@pytest.mark.parametrize("n,d,mu,expected", [
    (6, 3, 12, {(0, 3): 12, (1, 4): 21, (2, 5): 12, (2, 6): 1, (3, 6): 3}),
    (5, 2, 5, {(0, 2): 5, (1, 3): 5, (2, 5): 1}),
    (7, 3, 21, {(0, 3): 21, (1, 4): 49, (2, 5): 42, (3, 6): 14, (3, 7): 1, (4, 7): 2}),
    (6, 3, 10, {(0, 3): 10, (1, 4): 15, (2, 5): 6, (2, 6): 1, (3, 6): 1}),
])
def test_minimal_resolution_formula_values(n, d, mu, expected):
    T = minimal_resolution_formula(n, d, mu)
    assert dict(T.entries) == expected
    assert T.multiplicity == comb(n, d) - mu


def test_minimal_formula_rejects_impossible_profiles():
    # (n, d, mu) = (5, 2, 3): beta_{1,3} would be negative
    with pytest.raises(NonIntegralBetti):
        minimal_resolution_formula(5, 2, 3)
    with pytest.raises(InconsistentInput):
        minimal_resolution_formula(4, 4, 1)
    with pytest.raises(InconsistentInput):
        minimal_resolution_formula(5, 2, 11)


@pytest.mark.parametrize("n,expected", [
    (4, {(0, 2): 2, (1, 4): 1}),
    (5, {(0, 2): 5, (1, 3): 5, (2, 5): 1}),
    (6, {(0, 2): 9, (1, 3): 16, (2, 4): 9, (3, 6): 1}),
])
def test_cycle_formula_values(n, expected):
    assert dict(cycle_betti(n).entries) == expected


def test_cycle_formula_rejects_triangle():
    with pytest.raises(InconsistentInput):
        cycle_betti(3)


@pytest.mark.parametrize("n", range(4, 11))
def test_cycle_formula_agrees_with_minimal_formula(n):
    # cycles are minimal to linearity, so the two closed forms must coincide
    assert cycle_betti(n).same_numbers(minimal_resolution_formula(n, 2, comb(n, 2) - n))


@pytest.mark.parametrize("n,d,e,expected", [(6, 3, 8, 2), (7, 3, 14, 1), (4, 3, 4, -1)])
def test_homology_difference_identity_values(n, d, e, expected):
    assert homology_difference_identity(n, d, e) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_homology_difference_identity_on_random_clutters(seed):
    import random

    C = random_dim_ok(random.Random(seed), n_max=8)
    for K in (QQ, GF2):
        lo, hi = reduced_homology_dims(clique_complex(C), K, C.d - 2, C.d - 1)
        assert lo - hi == homology_difference_identity(C.n, C.d, len(C))


def test_homology_difference_identity_on_fixtures():
    for C in (cross_polytope_boundary(3), torus_seven(), rp2_six(), cycle(7), almost_tree_ten()):
        for K in (QQ, GF2):
            lo, hi = reduced_homology_dims(clique_complex(C), K, C.d - 2, C.d - 1)
            assert lo - hi == homology_difference_identity(C.n, C.d, len(C))


# ---------------------------------------------------------------- Herzog-Kuhl


def test_herzog_kuhl_documented_values():
    assert herzog_kuhl_variant("i", (2, 4), 2, 0, 1) == [-2]
    assert herzog_kuhl_variant("iii", (0, 3, 4, 5, 6), 1, 8, 4) == [12, 21, 12, 2]
    assert herzog_kuhl_variant("ii", (0, 2, 3, 4, 5), 1, 5, 3) == [5, 5, 0, -1]
    assert herzog_kuhl_variant("(iii)", (0, 3, 4, 5, 6), {0: 1}, 8, 4) == [12, 21, 12, 2]


def test_herzog_kuhl_degenerate_and_bad_input():
    assert herzog_kuhl_variant("i", (2,), 2, 0, 0) == []
    with pytest.raises(InconsistentInput):
        herzog_kuhl_variant("iv", (0, 1), 1, 1, 1)
    with pytest.raises(InconsistentInput):
        herzog_kuhl_variant("i", (2, 2), 1, 1, 1)
    with pytest.raises(InconsistentInput):
        herzog_kuhl_variant("iii", (1, 3, 4), 1, 1, 2)
    with pytest.raises(InconsistentInput):
        herzog_kuhl_variant("ii", (0, 3, 4), 1, 1, 2)
    with pytest.raises(NonIntegralBetti):
        herzog_kuhl_variant("i", (0, 1, 3), 1, 0, 2)


def _quotient_differences(T, n, d):
    """beta'_i = beta_{i,d_i}(S/I) - beta_{i-1,d_i}(S/I) with d_i = d + i - 1."""
    def b(i, j):
        if i == 0:
            return 1 if j == 0 else 0
        return T[i - 1, j]
    rho = n - d + 1
    return [b(i, d + i - 1) - b(i - 1, d + i - 1) for i in range(1, rho + 1)]


@pytest.mark.parametrize("name,C,K", [
    ("octahedron", cross_polytope_boundary(3), QQ),
    ("torus", torus_seven(), GF2),
    ("rp2", rp2_six(), GF2),
    ("almost-tree-ten", almost_tree_ten(), QQ),
    ("cycle-7", cycle(7), QQ),
], ids=lambda x: x if isinstance(x, str) else "")
def test_herzog_kuhl_case_iii_reproduces_minimal_tables(name, C, K):
    T = betti_hochster(C, K)
    rho = C.n - C.d + 1
    d_vec = [0] + [C.d + i - 1 for i in range(1, rho + 1)]
    assert herzog_kuhl_variant("iii", d_vec, 1, len(C), rho) == _quotient_differences(T, C.n, C.d)


def test_resolution_shape_rendering():
    shape = ResolutionShape.from_table(minimal_resolution_formula(5, 2, 5))
    assert shape.render() == "0 -> S(-5) -> S^5(-3) -> S^5(-2) -> I -> 0"
    octa = ResolutionShape.from_table(minimal_resolution_formula(6, 3, 12))
    assert octa.render() == "0 -> S^3(-6) -> S(-6) + S^12(-5) -> S^21(-4) -> S^12(-3) -> I -> 0"
    assert [i for i, _ in shape.positions] == [0, 1, 2]
