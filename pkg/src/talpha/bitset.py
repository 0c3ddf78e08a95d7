"""Vertex sets as Python integer bitmasks.

Vertices are dense integers 0..n-1; a set of vertices is the integer with
those bits set. Python's arbitrary-precision ints give multi-word sets for
free, so the same code handles n > 64.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def bit(v: int) -> int:
    return 1 << v


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_tuple(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1


def to_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def as_mask(vertices, n: int | None = None) -> int:
    """Accept an int mask or any iterable of vertex ids."""
    if isinstance(vertices, int):
        return vertices
    return mask_of(vertices)
