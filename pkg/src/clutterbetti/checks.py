"""Cross-validation of one clutter: independent computations that must agree.

Each check yields a `CheckResult`; a check whose hypotheses do not hold for the
input is reported as skipped rather than passed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .betti import betti_hochster, has_linear_resolution, indeg, regularity, verify_shape_bounds
from .bits import bit_indices, full_mask, popcount
from .classify import (
    decompose,
    is_almost_tree,
    is_chordal_graph,
    is_minimal_to_linearity,
    is_obstruction,
    is_orientable,
    is_pseudo_manifold,
    on_support,
    orientable_by_signs,
    proper_subclutters_are_forests,
    proper_subclutters_are_forests_brute,
    witness_is_valid,
)
from .clutter import Clutter, has_degree_one_submaximal, is_forest
from .complex import clique_complex, induced_subcomplex, reduced_homology_dims
from .errors import CapacityExceeded, ClutterBettiError
from .formulas import homology_difference_identity, minimal_resolution_formula
from .linalg import QQ, FieldSpec

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _result(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, PASS if ok else FAIL, detail)


def run_checks(C: Clutter, K: FieldSpec = QQ, subset_cap: int = 16, separator_cap: int | None = None,
               brute_cap: int = 12, vanishing_max_n: int = 12) -> list[CheckResult]:
    out: list[CheckResult] = []
    zero = C.n >= C.d and len(C) == comb(C.n, C.d)
    delta = clique_complex(C)
    dim_ok = delta.dim == C.d - 1
    T = None
    if zero:
        out.append(CheckResult("betti-table", SKIP, "zero ideal"))
    else:
        T = betti_hochster(C, K)
        linear = has_linear_resolution(C, K)
        out.append(_result("linearity-fast-path", linear == (regularity(T) == indeg(T)),
                           f"linear={linear} reg={regularity(T)}"))
        out.append(_result("generators-are-non-circuits", T.mu == comb(C.n, C.d) - len(C)
                           and all(j == C.d for i, j in T.entries if i == 0)))

    if dim_ok and not zero and C.n >= 1:
        rep = verify_shape_bounds(C, K, T)
        out.append(_result("shape-bounds", rep.reg_in_range and rep.projdim_in_range and rep.entries_in_band,
                           f"reg={rep.reg} pdim={rep.projdim}"))
        out.append(_result("cohen-macaulay-criteria", rep.cm_by_homology == rep.cm_by_projdim))
        h = reduced_homology_dims(delta, K, C.d - 2, C.d - 1)
        expect = homology_difference_identity(C.n, C.d, len(C))
        out.append(_result("homology-difference-identity", h[0] - h[1] == expect, f"{h[0]} - {h[1]} vs {expect}"))
    else:
        out.append(CheckResult("shape-bounds", SKIP, "needs dim = d-1 and a nonzero ideal"))

    minimal = None
    try:
        minimal = is_minimal_to_linearity(C, K)
    except CapacityExceeded as exc:
        out.append(CheckResult("minimality", SKIP, str(exc)))
    if minimal:
        # both statements concern the clutter on the vertices its circuits cover
        V = on_support(C)
        TV = T if V.n == C.n else betti_hochster(V, K)
        F = minimal_resolution_formula(V.n, V.d, comb(V.n, V.d) - len(V), K)
        out.append(_result("minimal-resolution-formula", F.same_numbers(TV), "formula vs Hochster"))
        if V.n <= vanishing_max_n:
            out.append(_result("minimal-homology-vanishing", _top_homology_vanishes_below(V, K, clique_complex(V))))
        if len(C) <= subset_cap:
            out.append(_result("obstruction-exhaustive-vs-auto",
                               is_obstruction(C, K, "exhaustive", subset_cap) == is_obstruction(C, K, "auto")))

    if is_pseudo_manifold(C):
        orient = is_orientable(C)
        out.append(_result("orientation-homology-vs-signs", orient == orientable_by_signs(C)))
        if len(C) <= subset_cap:
            rule = orient or K.characteristic == 2
            try:
                exh = is_obstruction(C, K, "exhaustive", subset_cap)
                out.append(_result("pseudo-manifold-minimality-rule", rule == exh,
                                   f"orientable={orient} char={K.characteristic}"))
            except CapacityExceeded as exc:
                out.append(CheckResult("pseudo-manifold-minimality-rule", SKIP, str(exc)))

    if len(C) <= brute_cap:
        out.append(_result("peeling-vs-brute-force",
                           is_forest(C) == _all_subsets_have_leaf(C)
                           and proper_subclutters_are_forests(C) == proper_subclutters_are_forests_brute(C)))
    if is_almost_tree(C, K) and minimal is not None:
        out.append(_result("almost-tree-implies-minimal", bool(minimal)))

    if len(C) >= 2:
        w = decompose(C, separator_cap)
        if w is not None:
            out.append(_result("decomposition-witness", witness_is_valid(C, w), w.kind))
            if not zero and not any(_is_zero(on_support(p)) for p in (w.C1, w.C2)):
                out.append(_result("regularity-of-union", _union_regularity_ok(C, w, K, T)))
    if C.d == 2 and not zero:
        out.append(_result("chordal-iff-linear", is_chordal_graph(C) == has_linear_resolution(C, K)))
    return out


def _is_zero(C: Clutter) -> bool:
    return C.n >= C.d and len(C) == comb(C.n, C.d)


def _all_subsets_have_leaf(C: Clutter) -> bool:
    return all(has_degree_one_submaximal([C.circuits[i] for i in bit_indices(S)])
               for S in range(1, 1 << len(C)))


def _top_homology_vanishes_below(C: Clutter, K: FieldSpec, delta) -> bool:
    top = reduced_homology_dims(delta, K, C.d - 1, C.d - 1)[0]
    if top != 1:
        return False
    full = full_mask(C.n)
    for W in range(full):
        if popcount(W) < C.d:
            continue
        sub = induced_subcomplex(delta, W)
        if reduced_homology_dims(sub, K, C.d - 1, C.d - 1)[0]:
            return False
    return True


def _union_regularity_ok(C: Clutter, w, K: FieldSpec, T) -> bool:
    whole = on_support(C)
    T = T if whole.n == C.n else betti_hochster(whole, K)
    parts = [betti_hochster(on_support(p), K) for p in (w.C1, w.C2)]
    return regularity(T) == max(regularity(p) for p in parts)


def run_checks_safe(C: Clutter, K: FieldSpec = QQ, **kw) -> list[CheckResult]:
    try:
        return run_checks(C, K, **kw)
    except ClutterBettiError as exc:
        return [CheckResult("checks", FAIL, str(exc))]
