"""d-uniform clutters and their purely combinatorial operations.

A `Clutter` lives on the vertex set ``1..n`` and stores its circuits as sorted
bitmasks.  Everything here is field-free: complements, submaximal circuits and
their degrees, induced subclutters, the two connectivity notions, and the
peeling core used to recognise forests.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .bits import (
    MAX_VERTICES,
    bit_indices,
    compress,
    facets_of,
    format_mask,
    full_mask,
    mask_of,
    popcount,
    submasks_of_size,
    vertices_of,
)
from .errors import InvalidClutter, ParseError

# (d-1)-subset bitmask -> number of circuits containing it
SubmaximalCircuitTable = dict


@dataclass(frozen=True)
class Clutter:
    """A d-uniform clutter on ``1..n``.

    ``labels`` optionally records the original vertex names of an induced or
    relabelled clutter (``labels[i]`` names vertex ``i + 1``); it does not take
    part in equality.
    """

    n: int
    d: int
    circuits: tuple[int, ...]
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise InvalidClutter(f"n={self.n} outside supported range 0..{MAX_VERTICES}")
        if self.d < 1:
            raise InvalidClutter(f"uniformity d={self.d} must be >= 1")
        circuits = tuple(sorted(set(self.circuits)))
        limit = full_mask(self.n)
        for c in circuits:
            if c & ~limit:
                raise InvalidClutter(f"circuit {format_mask(c)} uses a vertex outside 1..{self.n}")
            if popcount(c) != self.d:
                raise InvalidClutter(f"circuit {format_mask(c)} does not have exactly d={self.d} vertices")
        object.__setattr__(self, "circuits", circuits)
        if self.labels is not None and len(self.labels) != self.n:
            raise InvalidClutter("label map length differs from n")

    @classmethod
    def from_sets(cls, n: int, d: int, sets: Iterable[Iterable[int]], labels=None) -> "Clutter":
        circuits = []
        for s in sets:
            s = list(s)
            if len(set(s)) != len(s):
                raise InvalidClutter(f"circuit {s} repeats a vertex")
            if any(not 1 <= v <= n for v in s):
                raise InvalidClutter(f"circuit {s} uses a vertex outside 1..{n}")
            circuits.append(mask_of(s))
        return cls(n, d, tuple(circuits), labels)

    @classmethod
    def from_strings(cls, n: int, d: int, words: Iterable[str]) -> "Clutter":
        """Shorthand for single-digit vertex labels: ``["123", "124"]``."""
        return cls.from_sets(n, d, ([int(ch) for ch in w] for w in words))

    def __len__(self) -> int:
        return len(self.circuits)

    def __iter__(self):
        return iter(self.circuits)

    def __contains__(self, mask: int) -> bool:
        return mask in self._circuit_set

    @property
    def _circuit_set(self) -> frozenset:
        cached = self.__dict__.get("_cset")
        if cached is None:
            cached = frozenset(self.circuits)
            object.__setattr__(self, "_cset", cached)
        return cached

    @property
    def vertex_mask(self) -> int:
        return full_mask(self.n)

    @property
    def support(self) -> int:
        """Vertices covered by at least one circuit."""
        m = 0
        for c in self.circuits:
            m |= c
        return m

    def sets(self) -> list[tuple[int, ...]]:
        return [vertices_of(c) for c in self.circuits]

    def original_sets(self) -> list[tuple]:
        """Circuits in original vertex names (after `induced`)."""
        if self.labels is None:
            return self.sets()
        return [tuple(self.labels[v - 1] for v in s) for s in self.sets()]

    def with_circuits(self, circuits: Iterable[int]) -> "Clutter":
        """A clutter on the same vertex set with the given circuits."""
        return Clutter(self.n, self.d, tuple(circuits), self.labels)

    def relabel(self, perm: Mapping[int, int] | Sequence[int]) -> "Clutter":
        """Apply a vertex permutation ``v -> perm[v]`` (1-based)."""
        if not isinstance(perm, Mapping):
            perm = {i + 1: v for i, v in enumerate(perm)}
        return Clutter.from_sets(self.n, self.d, ([perm[v] for v in s] for s in self.sets()))

    def __str__(self) -> str:
        body = " ".join(format_mask(c) for c in self.circuits)
        return f"Clutter(n={self.n}, d={self.d}: {body})"

    # ---------------------------------------------------------------- io

    def to_text(self) -> str:
        lines = [f"n={self.n} d={self.d}"]
        lines.extend(" ".join(map(str, s)) for s in self.sets())
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "d": self.d, "circuits": [list(s) for s in self.sets()]})


# ------------------------------------------------------------------ parsing


def parse_clutter(text: str) -> Clutter:
    """Parse the canonical text format or the JSON alternative."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    n = d = None
    circuits: list[list[int]] = []
    seen: dict[frozenset, int] = {}
    header_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            fields = dict(_header_field(tok, lineno) for tok in line.split())
            if set(fields) != {"n", "d"}:
                raise ParseError("expected header 'n=<int> d=<int>'", lineno)
            n, d = fields["n"], fields["d"]
            header_line = lineno
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"circuit {line!r} has a non-integer vertex", lineno) from None
        if len(verts) != d:
            raise ParseError(f"circuit {line!r} has {len(verts)} vertices, expected d={d}", lineno)
        if len(set(verts)) != d:
            raise ParseError(f"circuit {line!r} repeats a vertex", lineno)
        bad = [v for v in verts if not 1 <= v <= n]
        if bad:
            raise ParseError(f"circuit {line!r} uses vertex {bad[0]} outside 1..{n}", lineno)
        key = frozenset(verts)
        if key in seen:
            raise ParseError(f"circuit {line!r} duplicates line {seen[key]}", lineno)
        seen[key] = lineno
        circuits.append(verts)
    if n is None:
        raise ParseError("missing header 'n=<int> d=<int>'")
    try:
        return Clutter.from_sets(n, d, circuits)
    except InvalidClutter as exc:
        raise ParseError(str(exc), header_line) from None


def _header_field(tok: str, lineno: int) -> tuple[str, int]:
    key, sep, val = tok.partition("=")
    if not sep:
        raise ParseError(f"bad header token {tok!r}", lineno)
    try:
        return key.strip(), int(val)
    except ValueError:
        raise ParseError(f"header value {val!r} is not an integer", lineno) from None


def _parse_json(text: str) -> Clutter:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(obj, dict) or not {"n", "d", "circuits"} <= set(obj):
        raise ParseError("JSON clutter needs keys 'n', 'd', 'circuits'")
    n, d, circuits = obj["n"], obj["d"], obj["circuits"]
    if not isinstance(n, int) or not isinstance(d, int) or not isinstance(circuits, list):
        raise ParseError("JSON clutter has malformed 'n', 'd' or 'circuits'")
    for k, c in enumerate(circuits):
        if not isinstance(c, list) or not all(isinstance(v, int) for v in c):
            raise ParseError(f"circuit #{k} is not a list of integers")
        if len(c) != d or len(set(c)) != d:
            raise ParseError(f"circuit #{k} {c} does not have d={d} distinct vertices")
        if any(not 1 <= v <= n for v in c):
            raise ParseError(f"circuit #{k} {c} uses a vertex outside 1..{n}")
    if len({frozenset(c) for c in circuits}) != len(circuits):
        raise ParseError("JSON clutter lists a circuit twice")
    try:
        return Clutter.from_sets(n, d, circuits)
    except InvalidClutter as exc:
        raise ParseError(str(exc)) from None


# --------------------------------------------------------------- operations


def maximal_clutter(n: int, d: int) -> Clutter:
    """All d-subsets of 1..n."""
    if not 1 <= d <= n:
        raise InvalidClutter(f"maximal clutter needs 1 <= d <= n, got n={n}, d={d}")
    return Clutter(n, d, tuple(submasks_of_size(full_mask(n), d)))


def complement(C: Clutter) -> Clutter:
    if C.d > C.n:
        return C
    present = C._circuit_set
    return C.with_circuits(m for m in submasks_of_size(full_mask(C.n), C.d) if m not in present)


def submaximal_circuits(C: Clutter) -> SubmaximalCircuitTable:
    table: dict[int, int] = defaultdict(int)
    for c in C.circuits:
        for e in facets_of(c):
            table[e] += 1
    return dict(table)


def induced(C: Clutter, W: Iterable[int] | int) -> Clutter:
    """Circuits inside ``W``, compacted onto ``1..|W|``; ``labels`` maps back."""
    w = W if isinstance(W, int) else mask_of(W)
    if w & ~C.vertex_mask:
        raise InvalidClutter("W is not a subset of the vertex set")
    names = [C.labels[i] if C.labels else i + 1 for i in bit_indices(w)]
    circuits = tuple(compress(c, w) for c in C.circuits if c & ~w == 0)
    return Clutter(popcount(w), C.d, circuits, tuple(names))


def subclutter_mask(C: Clutter, W: int) -> tuple[int, ...]:
    """Circuits inside ``W`` without relabelling."""
    return tuple(c for c in C.circuits if c & ~W == 0)


def _components(circuits: Sequence[int], adjacent) -> list[list[int]]:
    """Connected components (as index lists) of the circuit graph."""
    seen = [False] * len(circuits)
    comps = []
    for s in range(len(circuits)):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            i = queue.popleft()
            for j in adjacent(i):
                if not seen[j]:
                    seen[j] = True
                    comp.append(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def codim_one_components(circuits: Sequence[int]) -> list[list[int]]:
    """Components under 'share a (d-1)-subset' adjacency."""
    by_facet: dict[int, list[int]] = defaultdict(list)
    for i, c in enumerate(circuits):
        for e in facets_of(c):
            by_facet[e].append(i)
    nbrs: list[set[int]] = [set() for _ in circuits]
    for group in by_facet.values():
        for i in group:
            nbrs[i].update(group)
    return _components(circuits, lambda i: nbrs[i])


def vertex_components(circuits: Sequence[int], outside: int = 0) -> list[list[int]]:
    """Components under 'share a vertex not in ``outside``' adjacency."""
    by_vertex: dict[int, list[int]] = defaultdict(list)
    for i, c in enumerate(circuits):
        for v in bit_indices(c & ~outside):
            by_vertex[v].append(i)
    nbrs: list[set[int]] = [set() for _ in circuits]
    for group in by_vertex.values():
        for i in group:
            nbrs[i].update(group)
    return _components(circuits, lambda i: nbrs[i])


def strongly_connected(C: Clutter) -> bool:
    return len(codim_one_components(C.circuits)) <= 1


def connected(C: Clutter) -> bool:
    return len(vertex_components(C.circuits)) <= 1


def peel_core(C: Clutter, rng: random.Random | None = None) -> Clutter:
    """Strip circuits holding a degree-1 submaximal circuit until none remain.

    With ``rng`` the circuit removed at each step is chosen at random among
    the removable ones; the resulting core does not depend on the order.
    """
    alive = set(C.circuits)
    deg = defaultdict(int)
    holders: dict[int, list[int]] = defaultdict(list)
    for c in C.circuits:
        for e in facets_of(c):
            deg[e] += 1
            holders[e].append(c)

    def removable(c: int) -> bool:
        return any(deg[e] == 1 for e in facets_of(c))

    if rng is None:
        queue = deque(c for c in C.circuits if removable(c))
        while queue:
            c = queue.popleft()
            if c not in alive or not removable(c):
                continue
            alive.discard(c)
            for e in facets_of(c):
                deg[e] -= 1
                if deg[e] == 1:
                    queue.extend(h for h in holders[e] if h in alive)
    else:
        while True:
            cands = sorted(c for c in alive if removable(c))
            if not cands:
                break
            c = rng.choice(cands)
            alive.discard(c)
            for e in facets_of(c):
                deg[e] -= 1
    return C.with_circuits(alive)


def has_degree_one_submaximal(circuits: Sequence[int]) -> bool:
    deg: dict[int, int] = defaultdict(int)
    for c in circuits:
        for e in facets_of(c):
            deg[e] += 1
    return any(v == 1 for v in deg.values())


def is_forest(C: Clutter) -> bool:
    return not peel_core(C).circuits


def is_tree(C: Clutter) -> bool:
    return is_forest(C) and connected(C)
