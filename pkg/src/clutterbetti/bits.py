"""Vertex-set bitmask helpers.  Vertex ``v`` (1-based) is bit ``v - 1``."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 63


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def bit_indices(mask: int) -> list[int]:
    """0-based indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def submasks_of_size(mask: int, k: int) -> Iterator[int]:
    """All k-element submasks, in lexicographic order of their vertex lists."""
    bits = [1 << i for i in bit_indices(mask)]
    for combo in combinations(bits, k):
        yield sum(combo)


def facets_of(mask: int) -> Iterator[int]:
    """The codimension-one submasks (drop one vertex each)."""
    m = mask
    while m:
        low = m & -m
        yield mask ^ low
        m ^= low


def format_mask(mask: int) -> str:
    vs = vertices_of(mask)
    if all(v < 10 for v in vs):
        return "".join(map(str, vs))
    return "{" + ",".join(map(str, vs)) + "}"


def compress(mask: int, support: int) -> int:
    """Relabel ``mask`` (a subset of ``support``) onto the low bits 0..|support|-1."""
    out = 0
    i = 0
    s = support
    while s:
        low = s & -s
        if mask & low:
            out |= 1 << i
        i += 1
        s ^= low
    return out
