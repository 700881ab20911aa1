"""Simplicial complexes: clique complexes, boundary maps, reduced homology.

Faces are vertex bitmasks grouped by size; ``faces[k]`` holds the faces with
``k`` vertices (dimension ``k - 1``), sorted by mask value, and ``faces[0]``
is always ``(0,)``, the empty face.  Orientation is ascending vertex order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bits import bit_indices, facets_of, full_mask, mask_of, popcount, submasks_of_size
from .clutter import Clutter
from .linalg import QQ, ExactMatrix, FieldSpec, rank_array, rank_gf2_packed


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    faces: tuple[tuple[int, ...], ...]

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[int | Iterable[int]]) -> "SimplicialComplex":
        masks = [f if isinstance(f, int) else mask_of(f) for f in facets]
        top = max((popcount(m) for m in masks), default=0)
        by_size: list[set[int]] = [set() for _ in range(top + 1)]
        by_size[0].add(0)
        for m in masks:
            by_size[popcount(m)].add(m)
        for k in range(top, 0, -1):
            for m in by_size[k]:
                by_size[k - 1].update(facets_of(m))
        return cls(n, tuple(tuple(sorted(s)) for s in by_size))

    @property
    def dim(self) -> int:
        return len(self.faces) - 2

    def faces_of_dim(self, i: int) -> tuple[int, ...]:
        k = i + 1
        if 0 <= k < len(self.faces):
            return self.faces[k]
        return ()

    def facets(self) -> list[int]:
        all_faces = set().union(*map(set, self.faces))
        return sorted(m for m in all_faces
                      if not any(m | (1 << v) in all_faces for v in range(self.n) if not m >> v & 1))

    def __contains__(self, mask: int) -> bool:
        k = popcount(mask)
        return k < len(self.faces) and mask in self._face_sets[k]

    @property
    def _face_sets(self) -> list[frozenset]:
        cached = self.__dict__.get("_fs")
        if cached is None:
            cached = [frozenset(f) for f in self.faces]
            object.__setattr__(self, "_fs", cached)
        return cached


def clique_complex(C: Clutter) -> SimplicialComplex:
    """Faces are all sets with fewer than d vertices plus every clique of C."""
    n, d = C.n, C.d
    everything = full_mask(n)
    faces: list[list[int]] = [list(submasks_of_size(everything, k)) for k in range(min(d, n + 1))]
    if not C.circuits:
        return SimplicialComplex(n, tuple(tuple(sorted(f)) for f in faces))

    # nbr[e]: vertices v with e + v a circuit, for each (d-1)-set e
    nbr: dict[int, int] = defaultdict(int)
    for c in C.circuits:
        for e in facets_of(c):
            nbr[e] |= c ^ e
    by_size: dict[int, list[int]] = defaultdict(list)

    def grow(clique: int, cand: int) -> None:
        by_size[popcount(clique)].append(clique)
        while cand:
            low = cand & -cand
            cand ^= low
            new_cand = cand
            if d >= 2:
                for g in submasks_of_size(clique, d - 2):
                    new_cand &= nbr.get(g | low, 0)
                    if not new_cand:
                        break
            grow(clique | low, new_cand)

    for c in C.circuits:
        cand = everything
        for e in facets_of(c):
            cand &= nbr[e]
        cand &= ~((1 << c.bit_length()) - 1)  # only vertices above max(c)
        grow(c, cand)
    for k in sorted(by_size):
        while len(faces) <= k:
            faces.append([])
        faces[k].extend(by_size[k])
    return SimplicialComplex(n, tuple(tuple(sorted(f)) for f in faces))


def generated_complex(C: Clutter) -> SimplicialComplex:
    """The complex whose faces are the circuits and all their subsets."""
    return SimplicialComplex.from_facets(C.n, C.circuits)


def induced_subcomplex(delta: SimplicialComplex, W: Iterable[int] | int) -> SimplicialComplex:
    """Faces of ``delta`` inside ``W``; vertex labels are kept."""
    w = W if isinstance(W, int) else mask_of(W)
    out = [tuple(f for f in fs if f & ~w == 0) for fs in delta.faces]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return SimplicialComplex(delta.n, tuple(out))


def relabel_complex(delta: SimplicialComplex, names: Sequence[int], n: int) -> SimplicialComplex:
    """Map vertex ``i + 1`` to ``names[i]`` on a complex over ``1..n``."""
    def move(m: int) -> int:
        return mask_of(names[i] for i in bit_indices(m))
    return SimplicialComplex(n, tuple(tuple(sorted(move(f) for f in fs)) for fs in delta.faces))


def f_vector(delta: SimplicialComplex) -> tuple[int, ...]:
    """``(f_{-1}, f_0, ..., f_dim)``."""
    return tuple(len(fs) for fs in delta.faces)


def euler_characteristic(delta: SimplicialComplex) -> int:
    return sum((-1) ** (k - 1) * len(fs) for k, fs in enumerate(delta.faces) if k >= 1)


def _index(faces: Sequence[int]) -> dict[int, int]:
    return {f: i for i, f in enumerate(faces)}


def boundary_entries(rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    """Signed incidence matrix between faces of consecutive sizes."""
    out = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if not rows or not cols:
        return out
    where = _index(rows)
    for j, face in enumerate(cols):
        sign = 1
        for v in bit_indices(face):
            i = where.get(face ^ (1 << v))
            if i is not None:
                out[i, j] = sign
            sign = -sign
    return out


def boundary_matrix(delta: SimplicialComplex, i: int, K: FieldSpec = QQ) -> ExactMatrix:
    """The map from i-faces to (i-1)-faces (columns to rows)."""
    rows = delta.faces_of_dim(i - 1)
    cols = delta.faces_of_dim(i)
    a = boundary_entries(rows, cols)
    if K.characteristic:
        a %= K.characteristic
    return ExactMatrix(len(rows), len(cols), a)


def boundary_rank(rows: Sequence[int], cols: Sequence[int], K: FieldSpec) -> int:
    """Rank of the boundary map between two face lists over ``K``."""
    if not rows or not cols:
        return 0
    if K.characteristic == 2:
        where = _index(rows)
        packed = []
        for face in cols:
            v = 0
            m = face
            while m:
                low = m & -m
                m ^= low
                i = where.get(face ^ low)
                if i is not None:
                    v |= 1 << i
            packed.append(v)
        return rank_gf2_packed(packed)
    return rank_array(boundary_entries(rows, cols), K)


def reduced_homology_dims(delta: SimplicialComplex, K: FieldSpec = QQ, lo: int = -1, hi: int | None = None) -> list[int]:
    """``dim H~_i(delta; K)`` for ``i`` in ``lo..hi`` (``hi`` defaults to dim)."""
    if hi is None:
        hi = delta.dim
    ranks: dict[int, int] = {}

    def rk(i: int) -> int:
        if i not in ranks:
            ranks[i] = boundary_rank(delta.faces_of_dim(i - 1), delta.faces_of_dim(i), K)
        return ranks[i]

    return [len(delta.faces_of_dim(i)) - rk(i) - rk(i + 1) for i in range(lo, hi + 1)]


def homology_dict(delta: SimplicialComplex, K: FieldSpec = QQ) -> dict[int, int]:
    dims = reduced_homology_dims(delta, K, -1, delta.dim)
    return {i: h for i, h in zip(range(-1, delta.dim + 1), dims)}
