# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
Ready-made tense H-algebras: chains with the extreme operators, the
six-element non-Boolean algebra ``ej2``, powerset algebras of finite
relational frames, and componentwise products. :func:`corpus` lists them in
the fixed order used by countermodel search and by the test suite.
"""

from collections.abc import Iterable, Iterator, Sequence

import numpy as np

import tensaheyt.deployment as d
from tensaheyt import bitsets
from tensaheyt.constraints import ensure
from tensaheyt.homomorphisms import AlgebraMorphism
from tensaheyt.lattices import (
    FiniteLattice,
    FinitePoset,
    HeytingAlgebra,
    build_lattice,
    format_set,
    heyting_implication,
)
from tensaheyt.tense import TenseHAlgebra, relational_operators
from tensaheyt.types import (
    OPERATORS,
    CarrierTooLarge,
    DegenerateAlgebra,
    FormatError,
)

LOGGER = d.LOGGER

Relation = Iterable[tuple[int, int]]

EJ2_ELEMENTS = ("0", "a", "b", "c", "d", "1")
EJ2_COVERS = ("0<a", "0<b", "a<c", "b<c", "b<d", "c<1", "d<1")
EJ2_TABLE = {
    #     0    a    b    c    d    1
    "g": ("d", "d", "d", "b", "d", "0"),
    "h": ("1", "1", "c", "c", "0", "0"),
    "f": ("1", "a", "c", "a", "a", "a"),
    "p": ("1", "1", "b", "b", "0", "0"),
}


def chain_names(n: int) -> list[str]:
    if n == 2:
        return ["0", "1"]
    if n == 3:
        return ["0", "m", "1"]

    return ["0", *(f"m{i}" for i in range(1, n - 1)), "1"]


def build_chain(n: int) -> HeytingAlgebra:
    """The n-element chain ``0 < m1 < ... < 1``."""
    ensure(n >= 2, DegenerateAlgebra, "a chain needs at least two elements")
    ensure(n <= d.max_elements(), CarrierTooLarge, f"{n} elements exceed the cap")

    poset = FinitePoset.from_covers(chain_names(n), [(i, i + 1) for i in range(n - 1)])
    return heyting_implication(build_lattice(poset))


def build_extreme(H: HeytingAlgebra) -> TenseHAlgebra:
    """``g = h`` sends 1 to 0 and all else to 1; ``f = p`` sends 0 to 1 and all else to 0."""
    ensure(H.n >= 2, DegenerateAlgebra, "the extreme operators need 0 != 1")

    xs = np.arange(H.n)
    g = np.where(xs == H.top, H.bot, H.top)
    f = np.where(xs == H.bot, H.top, H.bot)

    return TenseHAlgebra(H, g, g, f, f)


def build_ej2() -> TenseHAlgebra:
    poset = FinitePoset.from_covers(
        EJ2_ELEMENTS,
        [
            (EJ2_ELEMENTS.index(lower), EJ2_ELEMENTS.index(upper))
            for lower, upper in (pair.split("<") for pair in EJ2_COVERS)
        ],
    )
    H = heyting_implication(build_lattice(poset))
    tables = {
        u: [H.index(name) for name in EJ2_TABLE[u]] for u in OPERATORS
    }

    return TenseHAlgebra(H, **tables)


def powerset_heyting(points: int, point_names: Sequence[str] | None = None) -> HeytingAlgebra:
    """Boolean algebra of all subsets of ``range(points)``; element id = bitmask."""
    n = 1 << points
    if n > d.max_elements():
        raise CarrierTooLarge(f"2^{points} subsets exceed the cap of {d.max_elements()}")

    labels = list(point_names) if point_names is not None else [str(i) for i in range(points)]
    names = [format_set(labels[i] for i in bitsets.members_of(U)) for U in range(n)]

    ids = np.arange(n, dtype=np.int64)
    everything = n - 1
    leq = (ids[:, None] & ~ids[None, :]) == 0
    meet = ids[:, None] & ids[None, :]
    join = ids[:, None] | ids[None, :]
    imp = (everything & ~ids[:, None]) | ids[None, :]

    poset = FinitePoset(names, leq, validate=False)
    lattice = FiniteLattice(poset, meet, join, 0, everything)

    return HeytingAlgebra(lattice, imp)


def build_frame_algebra(points: int, relation: Relation) -> TenseHAlgebra:
    """Powerset algebra of ``range(points)`` with g_R, h_R, f_R, p_R.

    Any binary relation is accepted; nothing beyond the relation itself is needed.
    """
    ensure(points >= 1, DegenerateAlgebra, "the empty frame gives a one-element algebra")

    pairs = sorted(set(relation))
    for x, y in pairs:
        ensure(
            0 <= x < points and 0 <= y < points,
            FormatError,
            f"pair {x}-{y} leaves the frame",
        )

    H = powerset_heyting(points)

    succ = [bitsets.bits_of(y for x, y in pairs if x == z) for z in range(points)]
    pred = [bitsets.bits_of(x for x, y in pairs if y == z) for z in range(points)]
    tables = relational_operators(range(H.n), succ, pred, points)

    LOGGER.debug("frame algebra on %d points, %d pairs", points, len(pairs))

    return TenseHAlgebra(H, **tables)


def relation_from_mask(points: int, mask: int) -> list[tuple[int, int]]:
    """Bit ``x * points + y`` of ``mask`` marks the pair ``(x, y)``."""
    return [
        (x, y)
        for x in range(points)
        for y in range(points)
        if bitsets.contains(mask, x * points + y)
    ]


def edge_list(relation: Relation) -> str:
    return ",".join(f"{x}-{y}" for x, y in relation)


def product(A: TenseHAlgebra, B: TenseHAlgebra) -> TenseHAlgebra:
    """Componentwise algebra on ``A x B``; the pair ``(x, y)`` gets id ``x * |B| + y``."""
    n = A.n * B.n
    if n > d.max_elements():
        raise CarrierTooLarge(f"{A.n} x {B.n} elements exceed the cap")

    ids = np.arange(n)
    first, second = ids // B.n, ids % B.n
    F1, F2 = first[:, None], first[None, :]
    S1, S2 = second[:, None], second[None, :]

    def pairwise(a_table: np.ndarray, b_table: np.ndarray) -> np.ndarray:
        return a_table[F1, F2] * B.n + b_table[S1, S2]

    names = [f"({A.name(int(x))},{B.name(int(y))})" for x, y in zip(first, second)]
    leq = A.leq[F1, F2] & B.leq[S1, S2]

    lattice = FiniteLattice(
        FinitePoset(names, leq),
        pairwise(A.meet_table, B.meet_table),
        pairwise(A.join_table, B.join_table),
        A.bot * B.n + B.bot,
        A.top * B.n + B.top,
    )
    H = HeytingAlgebra(lattice, pairwise(A.imp_table, B.imp_table))
    tables = {u: A.ops[u][first] * B.n + B.ops[u][second] for u in OPERATORS}

    return TenseHAlgebra(H, **tables)


def projections(
    A: TenseHAlgebra, B: TenseHAlgebra, P: TenseHAlgebra
) -> tuple[AlgebraMorphism, AlgebraMorphism]:
    """The two projections out of ``P = product(A, B)``."""
    ensure(P.n == A.n * B.n, FormatError, "P is not the product of A and B")

    return (
        AlgebraMorphism(P, A, tuple(z // B.n for z in range(P.n))),
        AlgebraMorphism(P, B, tuple(z % B.n for z in range(P.n))),
    )


def extreme_chain(n: int) -> TenseHAlgebra:
    return build_extreme(build_chain(n))


def corpus(frame_points: int = 2) -> list[tuple[str, TenseHAlgebra]]:
    """Library algebras in a fixed order.

    ``extreme:2`` to ``extreme:6``, ``ej2``, ``product`` (two extreme 2-chains),
    then ``frame:m:EDGES`` for every relation on ``1 <= m <= frame_points``
    points in relation-bitmask order.
    """
    return list(iter_corpus(frame_points))


def iter_corpus(frame_points: int = 2) -> Iterator[tuple[str, TenseHAlgebra]]:
    for n in range(2, 7):
        yield f"extreme:{n}", extreme_chain(n)

    yield "ej2", build_ej2()

    two = extreme_chain(2)
    yield "product", product(two, two)

    yield from iter_frames(frame_points)


def iter_frames(max_points: int) -> Iterator[tuple[str, TenseHAlgebra]]:
    for m in range(1, max_points + 1):
        for mask in range(1 << (m * m)):
            relation = relation_from_mask(m, mask)
            yield f"frame:{m}:{edge_list(relation)}", build_frame_algebra(m, relation)


def parse_relation(text: str) -> list[tuple[int, int]]:
    pairs = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        left, sep, right = item.partition("-")
        if not sep or not left.isdigit() or not right.isdigit():
            raise FormatError(f"bad edge {item!r}, expected i-j")
        pairs.append((int(left), int(right)))

    return pairs


def parse_example(example: str) -> TenseHAlgebra:
    """``ej2``, ``product``, ``extreme:N`` or ``frame:N:EDGELIST``."""
    head, _, rest = example.strip().partition(":")

    match head:
        case "ej2" if not rest:
            return build_ej2()
        case "product" if not rest:
            two = extreme_chain(2)
            return product(two, two)
        case "extreme":
            if not rest.isdigit():
                raise FormatError(f"bad chain size in {example!r}")
            return extreme_chain(int(rest))
        case "frame":
            size, _, edges = rest.partition(":")
            if not size.isdigit():
                raise FormatError(f"bad frame size in {example!r}")
            return build_frame_algebra(int(size), parse_relation(edges))
        case _:
            raise FormatError(
                f"unknown example {example!r}, expected ej2, product, extreme:N or frame:N:EDGELIST"
            )
