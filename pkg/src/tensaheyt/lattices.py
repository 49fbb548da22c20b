# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
Finite posets, bounded lattices and Heyting algebras over dense element ids.

Elements are the integers ``0 .. n-1``; every structure carries a table of
display names. Order relations are read-only boolean numpy matrices
(``leq[i, j]`` iff ``i <= j``) and operations are read-only integer tables.
Up-sets, down-sets, filters and ideals are bitsets (see :mod:`tensaheyt.bitsets`).

Example::

    from tensaheyt.lattices import FinitePoset, build_lattice, heyting_implication

    P = FinitePoset.from_covers(["0", "m", "1"], [(0, 1), (1, 2)])
    H = heyting_implication(build_lattice(P))
    assert H.name(H.neg(H.index("m"))) == "0"
"""

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np
import numpy.typing as npt

import tensaheyt.deployment as d
from tensaheyt import bitsets
from tensaheyt.constraints import ensure, valid_name
from tensaheyt.types import (
    Bits,
    CarrierTooLarge,
    Element,
    FormatError,
    ImplementationBug,
    NoRelativePseudocomplement,
    NotALattice,
    NotAPartialOrder,
    NotDisjoint,
    NotDistributive,
)

LOGGER = d.LOGGER

BoolMatrix = npt.NDArray[np.bool_]
Table = npt.NDArray[np.int64]


def frozen(array: npt.ArrayLike, dtype: Any) -> Any:
    out = np.array(array, dtype=dtype, copy=True)
    out.flags.writeable = False

    return out


def format_set(names: Iterable[str]) -> str:
    return "{" + ",".join(names) + "}"


class FinitePoset:
    """Immutable finite partial order on ``range(n)``.

    Parameters
    ----------
    names : Sequence[str]
        Display names, one per element, pairwise distinct.
    leq : array-like
        ``n x n`` boolean matrix; ``leq[i, j]`` iff ``i <= j``.
    """

    def __init__(
        self, names: Sequence[str], leq: npt.ArrayLike, *, validate: bool = True
    ) -> None:
        matrix = frozen(leq, bool)
        n = len(names)

        ensure(
            matrix.shape == (n, n),
            NotAPartialOrder,
            f"order matrix must be {n}x{n}, got {matrix.shape}",
        )
        ensure(len(set(names)) == n, FormatError, "element names must be distinct")
        for name in names:
            ensure(valid_name(name), FormatError, f"invalid element name {name!r}")

        if validate:
            self._validate(names, matrix)

        self.n: int = n
        self.names: tuple[str, ...] = tuple(names)
        self.leq: BoolMatrix = matrix
        self._index = {name: i for i, name in enumerate(self.names)}

    @staticmethod
    def _validate(names: Sequence[str], matrix: BoolMatrix) -> None:
        if not matrix.diagonal().all():
            x = int(np.flatnonzero(~matrix.diagonal())[0])
            raise NotAPartialOrder(f"not reflexive at {names[x]}")

        both = matrix & matrix.T
        np.fill_diagonal(both, False)
        if both.any():
            x, y = (int(i) for i in np.argwhere(both)[0])
            raise NotAPartialOrder(f"not antisymmetric: {names[x]} and {names[y]}")

        two_step = (matrix.astype(np.int64) @ matrix.astype(np.int64)) > 0
        if (two_step & ~matrix).any():
            x, y = (int(i) for i in np.argwhere(two_step & ~matrix)[0])
            raise NotAPartialOrder(f"not transitive: {names[x]} <= {names[y]} missing")

    @classmethod
    def from_covers(
        cls, names: Sequence[str], covers: Iterable[tuple[Element, Element]]
    ) -> "FinitePoset":
        """Reflexive-transitive closure of the given covering pairs ``(lower, upper)``."""
        n = len(names)
        leq = np.eye(n, dtype=bool)
        for lower, upper in covers:
            leq[lower, upper] = True

        for k in range(n):
            leq |= np.outer(leq[:, k], leq[k, :])

        return cls(names, leq)

    def index(self, name: str) -> Element:
        try:
            return self._index[name]
        except KeyError:
            raise FormatError(f"unknown element {name!r}") from None

    def name(self, x: Element) -> str:
        return self.names[x]

    def set_name(self, bits: Bits) -> str:
        return format_set(self.names[x] for x in bitsets.members_of(bits))

    def le(self, x: Element, y: Element) -> bool:
        return bool(self.leq[x, y])

    @cached_property
    def up_masks(self) -> tuple[Bits, ...]:
        return tuple(bitsets.from_mask(row) for row in self.leq)

    @cached_property
    def down_masks(self) -> tuple[Bits, ...]:
        return tuple(bitsets.from_mask(col) for col in self.leq.T)

    def up(self, x: Element) -> Bits:
        return self.up_masks[x]

    def down(self, x: Element) -> Bits:
        return self.down_masks[x]

    def up_closure(self, bits: Bits) -> Bits:
        out = 0
        for x in bitsets.members_of(bits):
            out |= self.up_masks[x]

        return out

    def down_closure(self, bits: Bits) -> Bits:
        out = 0
        for x in bitsets.members_of(bits):
            out |= self.down_masks[x]

        return out

    def is_upset(self, bits: Bits) -> bool:
        return self.up_closure(bits) == bits

    def is_downset(self, bits: Bits) -> bool:
        return self.down_closure(bits) == bits

    @cached_property
    def covers(self) -> BoolMatrix:
        """``covers[i, j]`` iff ``j`` covers ``i``."""
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0

        return frozen(lt & ~between, bool)

    def cover_pairs(self) -> list[tuple[Element, Element]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.covers)]

    def upsets(self) -> list[Bits]:
        """All up-sets in increasing bitmask order.

        Raises CarrierTooLarge once more than ``max_elements()`` are found.
        """
        cap = d.max_elements()
        # elements with fewer strict upper bounds come first, so every strict
        # upper bound of x is decided before x
        order = sorted(range(self.n), key=lambda x: (self.up_masks[x].bit_count(), x))
        found: list[Bits] = []

        def backtrack(i: int, chosen: Bits) -> None:
            if i == len(order):
                found.append(chosen)
                if len(found) > cap:
                    raise CarrierTooLarge(f"more than {cap} up-sets")
                return

            x = order[i]
            backtrack(i + 1, chosen)
            strict_up = self.up_masks[x] & ~(1 << x)
            if bitsets.is_subset(strict_up, chosen):
                backtrack(i + 1, chosen | (1 << x))

        backtrack(0, 0)
        LOGGER.debug("poset of %d points has %d up-sets", self.n, len(found))
        if 2 * len(found) > cap:
            LOGGER.warning("%d up-sets use more than half of the cap of %d", len(found), cap)

        return sorted(found)

    def __repr__(self) -> str:
        pairs = " ".join(f"{self.names[i]}<{self.names[j]}" for i, j in self.cover_pairs())
        return f"FinitePoset({' '.join(self.names)}; {pairs})"


class FiniteLattice:
    def __init__(
        self,
        poset: FinitePoset,
        meet: npt.ArrayLike,
        join: npt.ArrayLike,
        bot: Element,
        top: Element,
    ) -> None:
        self.poset = poset
        self.meet_table: Table = frozen(meet, np.int64)
        self.join_table: Table = frozen(join, np.int64)
        self.bot = bot
        self.top = top

        shape = (poset.n, poset.n)
        ensure(self.meet_table.shape == shape, NotALattice, "meet table has wrong shape")
        ensure(self.join_table.shape == shape, NotALattice, "join table has wrong shape")

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.poset.names

    @property
    def leq(self) -> BoolMatrix:
        return self.poset.leq

    def index(self, name: str) -> Element:
        return self.poset.index(name)

    def name(self, x: Element) -> str:
        return self.poset.name(x)

    def le(self, x: Element, y: Element) -> bool:
        return self.poset.le(x, y)

    def up(self, x: Element) -> Bits:
        return self.poset.up(x)

    def down(self, x: Element) -> Bits:
        return self.poset.down(x)

    def meet(self, x: Element, y: Element) -> Element:
        return int(self.meet_table[x, y])

    def join(self, x: Element, y: Element) -> Element:
        return int(self.join_table[x, y])

    def meet_all(self, xs: Iterable[Element]) -> Element:
        out = self.top
        for x in xs:
            out = int(self.meet_table[out, x])

        return out

    def join_all(self, xs: Iterable[Element]) -> Element:
        out = self.bot
        for x in xs:
            out = int(self.join_table[out, x])

        return out

    def distributivity_witness(self) -> tuple[Element, Element, Element] | None:
        """Least ``(x, y, z)`` with ``x & (y | z) != (x & y) | (x & z)``, if any."""
        meet, join = self.meet_table, self.join_table
        xs = np.arange(self.n)[:, None, None]
        lhs = meet[xs, join[None, :, :]]
        rhs = join[meet[:, :, None], meet[:, None, :]]
        bad = np.argwhere(lhs != rhs)

        if len(bad) == 0:
            return None

        x, y, z = (int(i) for i in bad[0])
        return x, y, z

    def is_distributive(self) -> bool:
        return self.distributivity_witness() is None

    def join_irreducibles(self) -> list[Element]:
        """Non-bottom elements with exactly one lower cover."""
        lower_covers = self.poset.covers.sum(axis=0)

        return [x for x in range(self.n) if x != self.bot and lower_covers[x] == 1]

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({' '.join(self.names)})"


def build_lattice(
    poset_or_names: FinitePoset | Sequence[str], leq: npt.ArrayLike | None = None
) -> FiniteLattice:
    """Meet and join tables of a finite poset, or NotALattice for the first pair without a bound."""
    if isinstance(poset_or_names, FinitePoset):
        poset = poset_or_names
    else:
        ensure(leq is not None, NotAPartialOrder, "an order matrix is required")
        poset = FinitePoset(poset_or_names, leq)  # type: ignore[arg-type]

    n = poset.n
    if n == 0:
        raise NotALattice("empty carrier")

    by_up = {bits: x for x, bits in enumerate(poset.up_masks)}
    by_down = {bits: x for x, bits in enumerate(poset.down_masks)}

    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)

    for x in range(n):
        for y in range(x, n):
            lower = poset.down_masks[x] & poset.down_masks[y]
            upper = poset.up_masks[x] & poset.up_masks[y]

            # a bound exists iff some element's principal set equals the common bounds
            glb = by_down.get(lower)
            lub = by_up.get(upper)

            if glb is None:
                raise NotALattice(f"{poset.names[x]} and {poset.names[y]} have no meet")
            if lub is None:
                raise NotALattice(f"{poset.names[x]} and {poset.names[y]} have no join")

            meet[x, y] = meet[y, x] = glb
            join[x, y] = join[y, x] = lub

    everything = bitsets.full(n)
    bot = by_up.get(everything)
    top = by_down.get(everything)

    if bot is None or top is None:
        raise NotALattice("no least or no greatest element")

    LOGGER.debug("built lattice with %d elements", n)

    return FiniteLattice(poset, meet, join, bot, top)


class HeytingAlgebra(FiniteLattice):
    """Finite distributive lattice with relative pseudocomplement ``imp``."""

    def __init__(self, lattice: FiniteLattice, imp: npt.ArrayLike) -> None:
        super().__init__(
            lattice.poset,
            lattice.meet_table,
            lattice.join_table,
            lattice.bot,
            lattice.top,
        )
        self.lattice = lattice
        self.imp_table: Table = frozen(imp, np.int64)

        ensure(
            self.imp_table.shape == (self.n, self.n),
            NoRelativePseudocomplement,
            "implication table has wrong shape",
        )

        self.neg_table: Table = frozen(self.imp_table[:, self.bot], np.int64)
        self.iff_table: Table = frozen(
            self.meet_table[self.imp_table, self.imp_table.T], np.int64
        )

    def implies(self, x: Element, y: Element) -> Element:
        return int(self.imp_table[x, y])

    def neg(self, x: Element) -> Element:
        return int(self.neg_table[x])

    def iff(self, x: Element, y: Element) -> Element:
        return int(self.iff_table[x, y])

    def residuation_witness(self) -> tuple[Element, Element, Element] | None:
        """Least ``(a, b, c)`` where ``a & c <= b`` and ``c <= a -> b`` disagree."""
        leq = self.leq
        meet_ac = self.meet_table[:, None, :]
        lhs = leq[meet_ac, np.arange(self.n)[None, :, None]]
        rhs = leq[np.arange(self.n)[None, None, :], self.imp_table[:, :, None]]
        bad = np.argwhere(lhs != rhs)

        if len(bad) == 0:
            return None

        a, b, c = (int(i) for i in bad[0])
        return a, b, c

    def check_residuation(self) -> bool:
        return self.residuation_witness() is None


def heyting_implication(lattice: FiniteLattice) -> HeytingAlgebra:
    """``a -> b`` is the largest ``c`` with ``a & c <= b``."""
    witness = lattice.distributivity_witness()
    if witness is not None:
        x, y, z = (lattice.name(i) for i in witness)
        raise NotDistributive(f"x={x} y={y} z={z} violate distributivity")

    n = lattice.n
    imp = np.empty((n, n), dtype=np.int64)

    for a in range(n):
        # below[c, b] iff a & c <= b
        below = lattice.leq[lattice.meet_table[a], :]
        for b in range(n):
            candidate = lattice.join_all(int(c) for c in np.flatnonzero(below[:, b]))
            if not lattice.le(lattice.meet(a, candidate), b):
                raise NoRelativePseudocomplement(
                    f"{lattice.name(a)} -> {lattice.name(b)} has no largest solution"
                )
            imp[a, b] = candidate

    return HeytingAlgebra(lattice, imp)


@dataclass(frozen=True)
class ElementSet:
    members: Bits

    def __contains__(self, x: Element) -> bool:
        return bitsets.contains(self.members, x)

    def __iter__(self) -> Iterator[Element]:
        return bitsets.members_of(self.members)

    def __len__(self) -> int:
        return self.members.bit_count()

    def elements(self) -> list[Element]:
        return list(bitsets.members_of(self.members))

    def issubset(self, other: "ElementSet") -> bool:
        return bitsets.is_subset(self.members, other.members)


@dataclass(frozen=True)
class Filter(ElementSet):
    """Nonempty, upward closed and meet closed. On a finite lattice, always ``↑x``."""


@dataclass(frozen=True)
class Ideal(ElementSet):
    """Order dual of :class:`Filter`."""


def is_filter(lattice: FiniteLattice, bits: Bits) -> bool:
    if bits == 0 or not lattice.poset.is_upset(bits):
        return False

    members = list(bitsets.members_of(bits))
    return all(
        bitsets.contains(bits, lattice.meet(x, y)) for x in members for y in members
    )


def is_ideal(lattice: FiniteLattice, bits: Bits) -> bool:
    if bits == 0 or not lattice.poset.is_downset(bits):
        return False

    members = list(bitsets.members_of(bits))
    return all(
        bitsets.contains(bits, lattice.join(x, y)) for x in members for y in members
    )


def principal_filter(lattice: FiniteLattice, x: Element) -> Filter:
    return Filter(lattice.up(x))


def principal_ideal(lattice: FiniteLattice, x: Element) -> Ideal:
    return Ideal(lattice.down(x))


def filter_from_elements(lattice: FiniteLattice, xs: Iterable[Element]) -> Filter:
    return principal_filter(lattice, lattice.meet_all(xs))


def ideal_from_elements(lattice: FiniteLattice, xs: Iterable[Element]) -> Ideal:
    return principal_ideal(lattice, lattice.join_all(xs))


def generator(lattice: FiniteLattice, f: Filter) -> Element:
    return lattice.meet_all(f)


def enumerate_filters(lattice: FiniteLattice) -> list[Filter]:
    """Every filter, sorted by generator id."""
    return [principal_filter(lattice, x) for x in range(lattice.n)]


def is_prime_filter(lattice: FiniteLattice, f: Filter) -> bool:
    """Proper, and ``a | b in F`` implies ``a in F`` or ``b in F``."""
    mask = bitsets.to_mask(f.members, lattice.n)
    if mask[lattice.bot]:
        return False

    escapes = mask[lattice.join_table] & ~mask[:, None] & ~mask[None, :]
    return not escapes.any()


def enumerate_prime_filters(lattice: FiniteLattice) -> list[Filter]:
    primes = [f for f in enumerate_filters(lattice) if is_prime_filter(lattice, f)]
    LOGGER.debug("%d of %d filters are prime", len(primes), lattice.n)

    return primes


def filter_ideal_separation(lattice: FiniteLattice, f: Filter, i: Ideal) -> Filter:
    """First prime filter (by generator) containing ``f`` and missing ``i``."""
    if f.members & i.members:
        overlap = lattice.poset.set_name(f.members & i.members)
        raise NotDisjoint(f"filter and ideal share {overlap}")

    for prime in enumerate_prime_filters(lattice):
        if f.issubset(prime) and prime.members & i.members == 0:
            return prime

    raise ImplementationBug("no separating prime filter in a distributive lattice")
