# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""Subsets of a carrier {0, ..., n-1} stored as Python ints (bit i set iff i is a member)."""

from collections.abc import Iterable, Iterator

import numpy as np
import numpy.typing as npt

from tensaheyt.types import Bits


def bits_of(members: Iterable[int]) -> Bits:
    bits = 0
    for member in members:
        if member < 0:
            raise ValueError(f"bit not greater than or equal to 0, bit == {member}")
        bits |= 1 << member

    return bits


def members_of(bits: Bits) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def contains(bits: Bits, member: int) -> bool:
    return (bits >> member) & 1 == 1


def is_subset(a: Bits, b: Bits) -> bool:
    return a & ~b == 0


def full(n: int) -> Bits:
    return (1 << n) - 1


def from_mask(mask: npt.NDArray[np.bool_]) -> Bits:
    return bits_of(int(i) for i in np.flatnonzero(mask))


def to_mask(bits: Bits, n: int) -> npt.NDArray[np.bool_]:
    mask = np.zeros(n, dtype=bool)
    mask[list(members_of(bits))] = True

    return mask


def subsets(bits: Bits) -> Iterator[Bits]:
    """All subsets of ``bits`` in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == bits:
            return
        sub = (sub - bits) & bits
