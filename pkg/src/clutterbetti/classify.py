"""Decision procedures for the clutter taxonomy.

Combinatorial verdicts (cliques, decomposability, pseudo-manifolds, forests,
chordality) are field-free.  Homological verdicts (linearity, obstruction and
minimality to linearity, almost trees) carry the field they were computed over.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .betti import has_linear_resolution, top_homology_of_circuits
from .bits import bit_indices, facets_of, format_mask, mask_of, submasks_of_size
from .clutter import (
    Clutter,
    codim_one_components,
    has_degree_one_submaximal,
    is_forest,
    is_tree,
    peel_core,
    strongly_connected,
    submaximal_circuits,
    vertex_components,
)
from .complex import boundary_entries, clique_complex
from .errors import CapacityExceeded, InconsistentInput, NotPseudoManifold
from .linalg import QQ, FieldSpec, rank_array, rank_gf2_packed

SUBSET_CAP = 16

CLIQUE_INTERSECTION = "clique-intersection"
SC_DISJOINT = "sc-disjoint"


def is_clique(C: Clutter, V) -> bool:
    """All d-subsets of V are circuits; sets smaller than d qualify vacuously."""
    v = V if isinstance(V, int) else mask_of(V)
    return all(s in C for s in submasks_of_size(v, C.d))


# ------------------------------------------------------------ decomposition


@dataclass(frozen=True)
class Decomposition:
    C1: Clutter
    C2: Clutter
    kind: str
    separator: int | None = None

    def describe(self) -> str:
        parts = f"C1 = {{{' '.join(map(format_mask, self.C1.circuits))}}}, " \
                f"C2 = {{{' '.join(map(format_mask, self.C2.circuits))}}}"
        if self.kind == CLIQUE_INTERSECTION:
            return f"{self.kind} on S = {{{','.join(map(str, _verts(self.separator)))}}}: {parts}"
        return f"{self.kind}: {parts}"


def _verts(mask: int | None) -> list[int]:
    return [i + 1 for i in bit_indices(mask or 0)]


def witness_is_valid(C: Clutter, w: Decomposition) -> bool:
    """Union, properness and the condition claimed by ``w.kind``."""
    s1, s2, s = set(w.C1.circuits), set(w.C2.circuits), set(C.circuits)
    if s1 | s2 != s or not s1 or not s2 or s1 == s or s2 == s:
        return False
    if w.kind == SC_DISJOINT:
        return not set(submaximal_circuits(w.C1)) & set(submaximal_circuits(w.C2))
    return is_clique(C, w.C1.support & w.C2.support)


def decompose(C: Clutter, separator_cap: int | None = None, kind: str | None = None) -> Decomposition | None:
    """Find ``C = C1 ⊎ C2`` or return None; see `decompose_search`."""
    return decompose_search(C, separator_cap, kind)[0]


def decompose_search(C: Clutter, separator_cap: int | None = None,
                     kind: str | None = None) -> tuple[Decomposition | None, bool]:
    """Search for a decomposition; also report whether the search was complete.

    Disjoint submaximal circuits are found exactly from the components of the
    codimension-one circuit graph.  Clique separators ``S`` are tried in order
    of size, then lexicographically, up to ``separator_cap`` vertices (default
    ``d + 2``): circuits outside ``S`` are grouped by sharing a vertex not in
    ``S``, and two or more groups split ``C``.
    """
    if kind not in (None, CLIQUE_INTERSECTION, SC_DISJOINT):
        raise InconsistentInput(f"unknown decomposition kind {kind!r}")
    circuits = C.circuits
    if len(circuits) < 2:
        return None, True
    if kind in (None, SC_DISJOINT):
        comps = codim_one_components(circuits)
        if len(comps) >= 2:
            first = [circuits[i] for i in comps[0]]
            rest = [circuits[i] for comp in comps[1:] for i in comp]
            return Decomposition(C.with_circuits(first), C.with_circuits(rest), SC_DISJOINT), True
        if kind == SC_DISJOINT:
            return None, True
    cap = C.d + 2 if separator_cap is None else separator_cap
    support = bit_indices(C.support)
    for size in range(0, min(cap, len(support)) + 1):
        for combo in combinations(support, size):
            S = sum(1 << v for v in combo)
            if not is_clique(C, S):
                continue
            outside = [c for c in circuits if c & ~S]
            inside = [c for c in circuits if not c & ~S]
            groups = vertex_components(outside, S)
            if len(groups) < 2:
                continue
            g1 = [outside[i] for i in groups[0]]
            g2 = [outside[i] for comp in groups[1:] for i in comp]
            return (Decomposition(C.with_circuits(g1 + inside), C.with_circuits(g2 + inside),
                                  CLIQUE_INTERSECTION, S), True)
    return None, cap >= len(support)


def on_support(C: Clutter) -> Clutter:
    """The clutter restricted to the vertices it covers (relabelled, with labels)."""
    from .clutter import induced

    return induced(C, C.support)


# ------------------------------------------------------------ pseudo-manifolds


def is_pseudo_manifold(C: Clutter) -> bool:
    if not C.circuits:
        return False
    if any(v != 2 for v in submaximal_circuits(C).values()):
        return False
    return strongly_connected(C)


def is_orientable(C: Clutter) -> bool:
    """Top homology of the complex generated by C over Q is one-dimensional."""
    if not is_pseudo_manifold(C):
        raise NotPseudoManifold(f"{C} is not a pseudo-manifold")
    h = top_homology_of_circuits(C.circuits, QQ)
    return h == 1


def orientable_by_signs(C: Clutter) -> bool:
    """Coherent orientation search: propagate +-1 signs across shared facets."""
    if not is_pseudo_manifold(C):
        raise NotPseudoManifold(f"{C} is not a pseudo-manifold")

    def incidence(c: int, e: int) -> int:
        j = bit_indices(c).index(bit_indices(c ^ e)[0])
        return -1 if j % 2 else 1

    holders: dict[int, list[int]] = {}
    for c in C.circuits:
        for e in facets_of(c):
            holders.setdefault(e, []).append(c)
    sign = {C.circuits[0]: 1}
    queue = deque([C.circuits[0]])
    while queue:
        c = queue.popleft()
        for e in facets_of(c):
            for other in holders[e]:
                if other == c:
                    continue
                want = -sign[c] * incidence(c, e) * incidence(other, e)
                if other not in sign:
                    sign[other] = want
                    queue.append(other)
                elif sign[other] != want:
                    return False
    return True


# ------------------------------------------------------------ obstruction / minimality


def _is_nonlinear(C: Clutter, K: FieldSpec) -> bool:
    return not has_linear_resolution(C, K)


def _higher_clique_masks(C: Clutter) -> list[int]:
    """(d+1)-cliques of C, as bitmasks over circuit indices."""
    delta = clique_complex(C)
    if len(delta.faces) <= C.d + 1:
        return []
    index = {c: i for i, c in enumerate(C.circuits)}
    return [sum(1 << index[s] for s in submasks_of_size(q, C.d)) for q in delta.faces[C.d + 1]]


class _ColumnRank:
    """Ranks of subsets of the circuits' boundary columns over one field."""

    def __init__(self, C: Clutter, K: FieldSpec):
        rows = sorted({e for c in C.circuits for e in facets_of(c)})
        self.K = K
        self.A = boundary_entries(rows, C.circuits)
        if K.characteristic == 2:
            self.packed = [int(sum(1 << i for i in np.flatnonzero(self.A[:, j]))) for j in range(self.A.shape[1])]

    def independent(self, idx: list[int]) -> bool:
        if not idx:
            return True
        if self.K.characteristic == 2:
            return rank_gf2_packed(self.packed[i] for i in idx) == len(idx)
        return rank_array(self.A[:, idx], self.K) == len(idx)


def proper_subclutters_linear(C: Clutter, K: FieldSpec = QQ, method: str = "exhaustive",
                              cap: int = SUBSET_CAP) -> bool:
    """Every proper subclutter (subset of circuits, same vertex set) is linear.

    ``"brute"`` runs the linearity test on each of the ``2^|C| - 1`` proper
    subclutters.  ``"exhaustive"`` also covers every proper subclutter, but
    those without a (d+1)-clique are settled at once: their linearity is
    independence of their boundary columns, which is inherited by subsets, so
    the maximal such subclutters decide all of them.
    """
    N = len(C)
    if method == "brute":
        if N > cap:
            raise CapacityExceeded(f"{N} circuits exceed the subclutter cap of {cap}")
        full = (1 << N) - 1
        for S in range(full):
            sub = C.with_circuits(C.circuits[i] for i in bit_indices(S))
            if not has_linear_resolution(sub, K):
                return False
        return True
    if method != "exhaustive":
        raise InconsistentInput(f"unknown method {method!r}")
    higher = _higher_clique_masks(C)
    cols = _ColumnRank(C, K)
    full = (1 << N) - 1
    if not higher:
        return all(cols.independent([i for i in range(N) if i != k]) for k in range(N))
    if N > cap:
        raise CapacityExceeded(f"{N} circuits exceed the subclutter cap of {cap}")
    for S in range(full):
        if any(S & h == h for h in higher):
            sub = C.with_circuits(C.circuits[i] for i in bit_indices(S))
            if not has_linear_resolution(sub, K):
                return False
        elif not cols.independent(bit_indices(S)):
            return False
    return True


def is_obstruction(C: Clutter, K: FieldSpec = QQ, method: str = "auto", cap: int = SUBSET_CAP) -> bool:
    """Not linear, while every proper subclutter is.

    ``method="auto"`` answers pseudo-manifolds with a (d-1)-dimensional clique
    complex by orientability and the characteristic; other clutters, or ``"exhaustive"``/``"brute"``, go
    through `proper_subclutters_linear`.
    """
    # a simplex boundary is the one pseudo-manifold whose clique complex is
    # bigger than its circuits; its ideal is linear, so it goes the long way
    if method == "auto" and is_pseudo_manifold(C) and clique_complex(C).dim == C.d - 1:
        return _pseudo_manifold_rule(C, K)
    if not _is_nonlinear(C, K):
        return False
    return proper_subclutters_linear(C, K, "exhaustive" if method == "auto" else method, cap)


def _pseudo_manifold_rule(C: Clutter, K: FieldSpec) -> bool:
    if is_orientable(C):
        return True
    return K.characteristic == 2


def is_minimal_to_linearity(C: Clutter, K: FieldSpec = QQ, method: str = "auto", cap: int = SUBSET_CAP) -> bool:
    if clique_complex(C).dim != C.d - 1:
        return False
    return is_obstruction(C, K, method, cap)


def proper_subclutters_are_forests(C: Clutter) -> bool:
    """Each ``C - {F}`` peels away completely (hence so does every proper subclutter)."""
    return all(not peel_core(C.with_circuits(c for c in C.circuits if c != F)).circuits for F in C.circuits)


def proper_subclutters_are_forests_brute(C: Clutter) -> bool:
    """Every nonempty proper subset of circuits has a degree-1 submaximal circuit."""
    N = len(C)
    for S in range(1, (1 << N) - 1):
        if not has_degree_one_submaximal([C.circuits[i] for i in bit_indices(S)]):
            return False
    return True


def is_almost_tree(C: Clutter, K: FieldSpec = QQ) -> bool:
    """Non-linear, and every proper subclutter is a forest (forest reading)."""
    if not C.circuits:
        return False
    return proper_subclutters_are_forests(C) and _is_nonlinear(C, K)


# ------------------------------------------------------------ graphs


def is_chordal_graph(C: Clutter) -> bool:
    """Perfect elimination ordering by repeatedly deleting simplicial vertices."""
    if C.d != 2:
        raise InconsistentInput(f"chordality is defined for graphs (d = 2), got d = {C.d}")
    adj = {v: 0 for v in range(C.n)}
    for c in C.circuits:
        a, b = bit_indices(c)
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    alive = (1 << C.n) - 1
    while alive:
        for v in bit_indices(alive):
            nb = adj[v] & alive
            if all(adj[u] & nb | (1 << u) == nb | (1 << u) for u in bit_indices(nb)):
                alive ^= 1 << v
                break
        else:
            return False
    return True


# ------------------------------------------------------------ report


@dataclass
class ClassificationReport:
    field: str
    linear: bool
    is_clique_complex_dim_ok: bool
    decomposable: bool
    decomposition: Decomposition | None
    decomposition_search_complete: bool
    strongly_connected: bool
    pseudo_manifold: bool
    orientable: str
    forest: bool
    tree: bool
    almost_tree: bool
    obstruction: bool | None
    minimal_to_linearity: bool | None
    chordal: bool | None
    notes: list[str] = field(default_factory=list)

    KEYS = ("field", "linear", "is_clique_complex_dim_ok", "decomposable", "strongly_connected",
            "pseudo_manifold", "orientable", "forest", "tree", "almost_tree", "obstruction",
            "minimal_to_linearity", "chordal")

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.KEYS}
        w = self.decomposition
        out["decomposition"] = None if w is None else {
            "kind": w.kind,
            "C1": [list(s) for s in w.C1.sets()],
            "C2": [list(s) for s in w.C2.sets()],
            "separator": _verts(w.separator) if w.kind == CLIQUE_INTERSECTION else None,
        }
        out["decomposition_search_complete"] = self.decomposition_search_complete
        out["almost_tree_reading"] = "forest"
        out["notes"] = list(self.notes)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def render(self) -> str:
        def show(v, key=""):
            if v is None:
                return "not-applicable" if key == "chordal" else "unknown"
            if isinstance(v, bool):
                return "yes" if v else "no"
            return str(v)

        lines = []
        for k in self.KEYS:
            label = "almost_tree (forest reading)" if k == "almost_tree" else k
            lines.append(f"{label}={show(getattr(self, k), k)}")
            if k == "decomposable" and self.decomposition is not None:
                lines.append(f"  witness: {self.decomposition.describe()}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def classify(C: Clutter, K: FieldSpec = QQ, separator_cap: int | None = None,
             subset_cap: int = SUBSET_CAP) -> ClassificationReport:
    notes = []
    delta = clique_complex(C)
    dim_ok = delta.dim == C.d - 1
    linear = has_linear_resolution(C, K)
    witness, complete = decompose_search(C, separator_cap)
    pm = is_pseudo_manifold(C)
    orientable = ("yes" if is_orientable(C) else "no") if pm else "not-applicable"
    try:
        obstruction = is_obstruction(C, K, cap=subset_cap)
    except CapacityExceeded as exc:
        obstruction = None
        notes.append(f"obstruction undecided: {exc}")
    minimal = (obstruction and dim_ok) if obstruction is not None else (False if not dim_ok else None)
    if C.n >= C.d and len(C) == comb(C.n, C.d):
        notes.append("zero ideal: treated as having a linear resolution")
    if witness is None and not complete:
        notes.append(f"clique-separator search limited to |S| <= {separator_cap or C.d + 2}")
    return ClassificationReport(
        field=K.label,
        linear=linear,
        is_clique_complex_dim_ok=dim_ok,
        decomposable=witness is not None,
        decomposition=witness,
        decomposition_search_complete=complete,
        strongly_connected=strongly_connected(C),
        pseudo_manifold=pm,
        orientable=orientable,
        forest=is_forest(C),
        tree=is_tree(C),
        almost_tree=is_almost_tree(C, K),
        obstruction=obstruction,
        minimal_to_linearity=minimal,
        chordal=is_chordal_graph(C) if C.d == 2 else None,
        notes=notes,
    )


__all__ = [
    "ClassificationReport",
    "Decomposition",
    "classify",
    "decompose",
    "decompose_search",
    "is_almost_tree",
    "is_chordal_graph",
    "is_clique",
    "is_minimal_to_linearity",
    "is_obstruction",
    "is_orientable",
    "is_pseudo_manifold",
    "on_support",
    "orientable_by_signs",
    "proper_subclutters_are_forests",
    "proper_subclutters_are_forests_brute",
    "proper_subclutters_linear",
    "witness_is_valid",
]
