"""Graded Betti numbers of circuit ideals via Hochster's formula.

For a d-uniform clutter ``C`` on ``[n]`` the circuit ideal of the complement
equals the Stanley-Reisner ideal of the clique complex, so

    beta_{i,j} = sum over |W| = j of dim H~_{j-i-2}(Delta_W; K).

Homology below degree d-2 vanishes for every induced subcomplex, and the
(d-2)-skeleton of each Delta_W is complete, so only boundary ranks of clique
faces (size >= d) are ever computed.  Results for each induced subcomplex are
memoised under a relabelled key shared across clutters.
"""

from __future__ import annotations

import json
import threading
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

from .bits import compress, facets_of, full_mask, popcount
from .clutter import Clutter
from .complex import SimplicialComplex, boundary_rank, clique_complex
from .errors import CapacityExceeded, UnsupportedShape, ZeroIdeal
from .linalg import QQ, FieldSpec

HOCHSTER_MAX_N = 20


@dataclass(frozen=True)
class BettiTable:
    """Nonzero graded Betti numbers ``(i, j) -> beta_{i,j}`` of a circuit ideal."""

    field: FieldSpec
    entries: Mapping[tuple[int, int], int]
    n: int
    d: int
    multiplicity: int | None = field(default=None, compare=False)

    def __post_init__(self):
        clean = {k: v for k, v in sorted(self.entries.items()) if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("negative Betti number")
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def same_numbers(self, other: "BettiTable") -> bool:
        return dict(self.entries) == dict(other.entries)

    @property
    def mu(self) -> int:
        """Number of minimal generators."""
        return sum(v for (i, _), v in self.entries.items() if i == 0)

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def to_dict(self) -> dict:
        out = {
            "field": self.field.label,
            "betti": {f"{i},{j}": v for (i, j), v in self.entries.items()},
            "reg": regularity(self),
            "pdim": projdim(self),
            "indeg": indeg(self),
            "mu": self.mu,
        }
        if self.multiplicity is not None:
            out["multiplicity"] = self.multiplicity
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def diagram(self) -> str:
        return render_diagram(self)


def regularity(T: BettiTable) -> int:
    return max(j - i for i, j in T.entries)


def projdim(T: BettiTable) -> int:
    return max(i for i, _ in T.entries)


def indeg(T: BettiTable) -> int:
    return min(j for i, j in T.entries if i == 0)


def depth_of_quotient(T: BettiTable) -> int:
    """depth S/I from the projective dimension (Auslander-Buchsbaum)."""
    return T.n - (projdim(T) + 1)


def render_diagram(T: BettiTable) -> str:
    """Betti diagram: columns are homological positions, rows are ``j - i``."""
    p = projdim(T)
    shifts = [j - i for i, j in T.entries]
    lines = ["i: " + " ".join(str(i) for i in range(p + 1))]
    for t in range(min(shifts), max(shifts) + 1):
        cells = [str(T[i, i + t]) if T[i, i + t] else "." for i in range(p + 1)]
        lines.append(f"{t}: " + " ".join(cells))
    lines.append(f"reg={regularity(T)} pdim={p} indeg={indeg(T)} field={T.field.label}")
    return "\n".join(lines)


# ----------------------------------------------------------------- memo cache

_CACHE: dict[tuple, tuple[int, ...]] = {}
_CACHE_LOCK = threading.Lock()
_CACHE_LIMIT = 500_000


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


class _Engine:
    """Per-clutter precomputation for scanning induced subcomplexes."""

    def __init__(self, C: Clutter, K: FieldSpec, delta: SimplicialComplex | None = None):
        self.C = C
        self.K = K
        self.d = C.d
        self.delta = delta if delta is not None else clique_complex(C)
        # cliques[s]: clique faces with s vertices, s >= d
        self.cliques = {s: self.delta.faces[s] for s in range(C.d, len(self.delta.faces))}

    def homology(self, W: int, lo: int | None = None) -> tuple[int, int, tuple[int, ...]]:
        """(m, k0, dims) with dims[t] = dim H~_{k0+t}(Delta_W) for k0 = d-2 .. top.

        ``top`` is ``min(dim Delta_W, m - 2)``; only degrees that can feed a
        Betti number with ``i >= 0`` are computed.
        """
        d = self.d
        m = popcount(W)
        k0 = d - 2
        inside = tuple(c for c in self.cliques.get(d, ()) if c & ~W == 0)
        if not inside:
            if m < d:
                return m, k0, ()
            return m, k0, (comb(m - 1, d - 1),)
        key = (self.K.characteristic, d, m, tuple(compress(c, W) for c in inside))
        hit = _CACHE.get(key)
        if hit is not None:
            return m, k0, hit
        by_size = [inside]
        s = d + 1
        while s in self.cliques:
            layer = tuple(f for f in self.cliques[s] if f & ~W == 0)
            if not layer:
                break
            by_size.append(layer)
            s += 1
        ranks = [_column_rank(layer, self.K) for layer in by_size] + [0]
        dims = [comb(m - 1, d - 1) - ranks[0]]
        for t, layer in enumerate(by_size):
            dims.append(len(layer) - ranks[t] - ranks[t + 1])
        top = min(len(dims), m - k0 - 1)
        dims_t = tuple(dims[:top])
        with _CACHE_LOCK:
            if len(_CACHE) > _CACHE_LIMIT:
                _CACHE.clear()
            _CACHE[key] = dims_t
        return m, k0, dims_t


def _column_rank(cols: Sequence[int], K: FieldSpec) -> int:
    rows = sorted({e for c in cols for e in facets_of(c)})
    return boundary_rank(rows, cols, K)


def _accumulate(C: Clutter, K: FieldSpec, lo: int, hi: int) -> dict[tuple[int, int], int]:
    eng = _Engine(C, K)
    acc: dict[tuple[int, int], int] = defaultdict(int)
    for W in range(lo, hi):
        m, k0, dims = eng.homology(W)
        for t, h in enumerate(dims):
            if h:
                acc[(m - (k0 + t) - 2, m)] += h
    return dict(acc)


def _check_capacity(C: Clutter) -> None:
    if C.n > HOCHSTER_MAX_N:
        raise CapacityExceeded(f"n={C.n} exceeds the Hochster enumeration cap of {HOCHSTER_MAX_N} vertices")


def betti_hochster(C: Clutter, K: FieldSpec = QQ, threads: int = 1) -> BettiTable:
    """Exact graded Betti table of the circuit ideal of ``C`` over ``K``."""
    if C.n >= C.d and len(C) == comb(C.n, C.d):
        raise ZeroIdeal()
    _check_capacity(C)
    total = 1 << C.n
    if threads > 1 and C.n >= 8:
        step = -(-total // (threads * 4))
        bounds = [(a, min(a + step, total)) for a in range(0, total, step)]
        acc: dict[tuple[int, int], int] = defaultdict(int)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_accumulate, C, K, a, b) for a, b in bounds]
            for fut in futures:
                for key, v in fut.result().items():
                    acc[key] += v
        entries = dict(acc)
    else:
        entries = _accumulate(C, K, 0, total)
    delta = clique_complex(C)
    return BettiTable(K, entries, C.n, C.d, multiplicity=len(delta.faces[-1]))


def top_homology_of_circuits(circuits: Sequence[int], K: FieldSpec) -> int:
    """dim of the cycle space on the given (d-1)-faces: ``|C| - rank``."""
    return len(circuits) - _column_rank(circuits, K)


def has_linear_resolution(C: Clutter, K: FieldSpec = QQ, verify: bool = False) -> bool:
    """Whether the circuit ideal has a d-linear resolution (zero ideal: True)."""
    if C.n >= C.d and len(C) == comb(C.n, C.d):
        return True
    delta = clique_complex(C)
    if delta.dim == C.d - 1:
        answer = top_homology_of_circuits(C.circuits, K) == 0
    else:
        _check_capacity(C)
        answer = _scan_linear(C, K, delta)
    if verify:
        T = betti_hochster(C, K)
        if (regularity(T) == indeg(T)) != answer:
            raise AssertionError(f"linearity fast path disagrees with the Betti table for {C}")
    return answer


def _scan_linear(C: Clutter, K: FieldSpec, delta: SimplicialComplex) -> bool:
    eng = _Engine(C, K, delta)
    full = full_mask(C.n)
    for W in range(full + 1):
        if popcount(W) < C.d + 1:
            continue
        _, _, dims = eng.homology(W)
        if any(dims[1:]):
            return False
    return True


def is_cohen_macaulay(C: Clutter, K: FieldSpec = QQ) -> bool:
    """S/I is Cohen-Macaulay iff H~_{d-2}(Delta; K) = 0 (needs dim Delta = d-1)."""
    delta = clique_complex(C)
    if delta.dim != C.d - 1:
        raise UnsupportedShape(f"clique complex has dimension {delta.dim}, expected d-1 = {C.d - 1}")
    if C.n == 0:
        return True
    return comb(C.n - 1, C.d - 1) - _column_rank(C.circuits, K) == 0


@dataclass
class ShapeReport:
    reg: int
    projdim: int
    n: int
    d: int
    reg_in_range: bool
    projdim_in_range: bool
    entries_in_band: bool
    top_shift_only_at_n: bool
    cm_by_homology: bool
    cm_by_projdim: bool

    @property
    def ok(self) -> bool:
        return (self.reg_in_range and self.projdim_in_range and self.entries_in_band
                and self.cm_by_homology == self.cm_by_projdim)


def verify_shape_bounds(C: Clutter, K: FieldSpec = QQ, T: BettiTable | None = None) -> ShapeReport:
    """Check the regularity / projective-dimension window for dim Delta = d-1.

    ``top_shift_only_at_n`` reports whether every entry with ``j - i = d + 1``
    sits at ``j = n``; that concentration is expected for clutters minimal to
    linearity and is not part of `ShapeReport.ok`.
    """
    delta = clique_complex(C)
    if delta.dim != C.d - 1:
        raise UnsupportedShape(f"clique complex has dimension {delta.dim}, expected d-1 = {C.d - 1}")
    if T is None:
        T = betti_hochster(C, K)
    n, d = C.n, C.d
    r, p = regularity(T), projdim(T)
    cm_h = is_cohen_macaulay(C, K)
    return ShapeReport(
        reg=r,
        projdim=p,
        n=n,
        d=d,
        reg_in_range=d <= r <= d + 1,
        projdim_in_range=n - d - 1 <= p <= n - d,
        entries_in_band=all(d <= j - i <= d + 1 for i, j in T.entries),
        top_shift_only_at_n=all(j == n for i, j in T.entries if j - i == d + 1),
        cm_by_homology=cm_h,
        cm_by_projdim=(p + 1 == n - d),
    )
