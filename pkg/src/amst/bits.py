"""Bitmask helpers: finite sets of small non-negative integers as Python ints."""

from itertools import combinations
from typing import Iterable, Iterator


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        if i < 0:
            raise ValueError(f"negative index {i}")
        m |= 1 << i
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending numeric order (including 0 and mask)."""
    positions = list(bits(mask))
    for k in range(1 << len(positions)):
        sub = 0
        for j, p in enumerate(positions):
            if k >> j & 1:
                sub |= 1 << p
        yield sub


def submasks_by_size(mask: int, proper: bool = False) -> Iterator[int]:
    """Submasks ordered by ascending cardinality, ties by ascending value."""
    positions = list(bits(mask))
    top = len(positions) - 1 if proper else len(positions)
    for size in range(top + 1):
        for combo in sorted(mask_of(c) for c in combinations(positions, size)):
            yield combo


def supermasks(mask: int, universe: int) -> Iterator[int]:
    """All ``S`` with ``mask ⊆ S ⊆ universe``, ascending."""
    for extra in submasks(universe & ~mask):
        yield mask | extra


def lowest(mask: int) -> int:
    """Index of the lowest set bit; -1 for the empty mask."""
    return (mask & -mask).bit_length() - 1


def fmt(mask: int, labels) -> str:
    return "{" + ",".join(str(labels[i]) for i in bits(mask)) + "}"
