from __future__ import annotations

import json
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clutterbetti import (
    GF2,
    GF3,
    QQ,
    BettiTable,
    Clutter,
    CapacityExceeded,
    UnsupportedShape,
    ZeroIdeal,
    betti_hochster,
    clear_cache,
    cross_polytope_boundary,
    cycle,
    two_bipyramids,
    has_linear_resolution,
    indeg,
    is_cohen_macaulay,
    maximal_clutter,
    projdim,
    regularity,
    render_diagram,
    rp2_six,
    verify_shape_bounds,
)
from clutterbetti.betti import depth_of_quotient
from clutterbetti.generators import random_clutter

from helpers import random_dim_ok
from oracles import naive_betti


def test_zero_ideal_rejected():
    with pytest.raises(ZeroIdeal, match="zero ideal"):
        betti_hochster(maximal_clutter(5, 3))
    assert has_linear_resolution(maximal_clutter(5, 3))


def test_capacity():
    with pytest.raises(CapacityExceeded):
        betti_hochster(Clutter(21, 2, (3,)))


def test_four_cycle_is_a_complete_intersection():
    # complement of the 4-cycle is two disjoint edges
    T = betti_hochster(cycle(4))
    assert dict(T.entries) == {(0, 2): 2, (1, 4): 1}


def test_diagram_text():
    T = betti_hochster(two_bipyramids(), QQ)
    assert render_diagram(T) == (
        "i: 0 1 2 3 4\n"
        "3: 24 61 62 30 6\n"
        "4: . 2 4 2 .\n"
        "reg=4 pdim=4 indeg=3 field=q"
    )
    assert render_diagram(betti_hochster(rp2_six(), GF2)).endswith("field=2")


def test_json_output_matches_text():
    T = betti_hochster(two_bipyramids(), GF2)
    obj = json.loads(T.to_json())
    assert obj["field"] == "2"
    assert obj["reg"] == 4 and obj["pdim"] == 4 and obj["indeg"] == 3 and obj["mu"] == 24
    assert obj["multiplicity"] == 11
    assert {tuple(map(int, k.split(","))): v for k, v in obj["betti"].items()} == dict(T.entries)


def test_table_accessors():
    T = BettiTable(QQ, {(0, 2): 3, (1, 3): 0, (1, 4): 1}, 4, 2)
    assert dict(T.entries) == {(0, 2): 3, (1, 4): 1}
    assert T[5, 5] == 0 and T.mu == 3 and T.total(1) == 1
    assert regularity(T) == 3 and projdim(T) == 1 and indeg(T) == 2 and depth_of_quotient(T) == 2
    with pytest.raises(ValueError):
        BettiTable(QQ, {(0, 2): -1}, 4, 2)


@pytest.mark.parametrize("K", [QQ, GF2, GF3], ids=str)
def test_threads_do_not_change_the_table(K):
    C = two_bipyramids()
    assert betti_hochster(C, K, threads=2).same_numbers(betti_hochster(C, K))


def test_cache_does_not_change_results():
    C = cross_polytope_boundary(3)
    first = betti_hochster(C, GF2)
    clear_cache()
    assert betti_hochster(C, GF2).same_numbers(first)


def test_cohen_macaulay():
    assert is_cohen_macaulay(cross_polytope_boundary(3)) is False
    assert is_cohen_macaulay(cycle(5)) is True
    assert projdim(betti_hochster(cycle(5))) == 5 - 2 - 1
    path = Clutter.from_sets(4, 2, [(1, 2), (2, 3), (3, 4)])
    assert is_cohen_macaulay(path)
    with pytest.raises(UnsupportedShape):
        is_cohen_macaulay(Clutter.from_sets(4, 3, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]))


def test_linearity_slow_path_with_higher_cliques():
    # solid tetrahedron plus a dangling triangle: dim of the clique complex is 3
    C = Clutter.from_sets(5, 3, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (3, 4, 5)])
    for K in (QQ, GF2):
        assert has_linear_resolution(C, K, verify=True)


@pytest.mark.parametrize("C", [cycle(5), cross_polytope_boundary(3), rp2_six(), two_bipyramids()], ids=str)
@pytest.mark.parametrize("p", [0, 2, 3])
def test_hochster_matches_naive_oracle(C, p):
    K = {0: QQ, 2: GF2, 3: GF3}[p]
    assert dict(betti_hochster(C, K).entries) == naive_betti(C, p)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0, 2]))
def test_hochster_random_vs_oracle(seed, p):
    rng = random.Random(seed)
    d = rng.choice([2, 3])
    n = rng.randint(d + 1, 6)
    C = random_clutter(n, d, rng.randint(1, comb(n, d) - 1), rng)
    K = QQ if p == 0 else GF2
    assert dict(betti_hochster(C, K).entries) == naive_betti(C, p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_table_invariants(seed):
    rng = random.Random(seed)
    d = rng.choice([2, 3])
    n = rng.randint(d + 1, 8)
    C = random_clutter(n, d, rng.randint(1, comb(n, d) - 1), rng)
    for K in (QQ, GF2):
        T = betti_hochster(C, K)
        # generators are exactly the non-circuits, all in degree d
        assert T.mu == comb(n, d) - len(C) and indeg(T) == d
        assert all(j - i >= d for i, j in T.entries)
        assert projdim(T) <= n - 1
        # alternating sum of graded Betti numbers of the ideal in degree j <= d is the Hilbert
        # series coefficient; in degree d it is the number of generators
        assert sum(v for (i, j), v in T.entries.items() if j == d) == T.mu
        assert has_linear_resolution(C, K) == (regularity(T) == d)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_shape_report_on_random_dim_ok(seed):
    C = random_dim_ok(random.Random(seed), n_max=7)
    for K in (QQ, GF2):
        assert verify_shape_bounds(C, K).ok


def test_graph_linearity_is_characteristic_free():
    rng = random.Random(3)
    for _ in range(30):
        C = random_clutter(6, 2, rng.randint(1, 14), rng)
        verdicts = {has_linear_resolution(C, K) for K in (QQ, GF2, GF3)}
        assert len(verdicts) == 1
