# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
Negative tense filters and tense congruences.

On a finite algebra every filter is principal, so a tense filter is ``↑m``
for some ``m`` and the whole theory runs through the operator
``[N](a) = ~g(a) & ~h(a)`` and its meet-iterates
``[N]^(k)(a) = a & [N](a) & ... & [N]^k(a)``. That chain is non-increasing,
so it is constant from some ``k < |A|`` on.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

import tensaheyt.deployment as d
from tensaheyt import bitsets
from tensaheyt.constraints import ensure
from tensaheyt.homomorphisms import AlgebraMorphism
from tensaheyt.lattices import (
    Filter,
    FiniteLattice,
    FinitePoset,
    HeytingAlgebra,
    Table,
    enumerate_filters,
    frozen,
    is_filter,
    principal_filter,
)
from tensaheyt.reports import Report, from_witness
from tensaheyt.tense import TenseHAlgebra, first_witness
from tensaheyt.types import (
    OPERATORS,
    Bits,
    CharacterizationMismatch,
    Element,
    NotACongruence,
    NotATenseFilter,
    Operator,
)

LOGGER = d.LOGGER

CHARACTERIZATIONS = ("DEFINITION", "BICONDITIONAL", "GALOIS", "BOX-N")


def box_u(A: TenseHAlgebra, u: Operator) -> Table:
    """``[u](a)``, the meet over all ``b`` of ``u(a & b) -> u(b)``."""
    table = A.ops[u]
    values = A.imp_table[table[A.meet_table], table[None, :]]

    out = np.full(A.n, A.top, dtype=np.int64)
    for b in range(A.n):
        out = A.meet_table[out, values[:, b]]

    return frozen(out, np.int64)


def box_n_table(A: TenseHAlgebra) -> Table:
    """Closed form ``~g & ~h`` of ``[N]``."""
    return frozen(A.meet_table[A.neg_table[A.g], A.neg_table[A.h]], np.int64)


@dataclass(frozen=True, eq=False)
class BoxN:
    table: Table
    per_operator: Mapping[Operator, Table]

    def __call__(self, a: Element) -> Element:
        return int(self.table[a])


def box_N(A: TenseHAlgebra) -> BoxN:
    """``[N]`` as the meet of the four ``[u]``, cross-checked against ``~g & ~h``.

    Raises CharacterizationMismatch when the two forms (or ``[g] = ~g`` and
    ``[h] = ~h``) disagree anywhere.
    """
    per = {u: box_u(A, u) for u in OPERATORS}

    four_way = per["g"]
    for u in ("h", "f", "p"):
        four_way = A.meet_table[four_way, per[u]]

    closed = box_n_table(A)

    for label, lhs, rhs in (
        ("[N]", four_way, closed),
        ("[g]", per["g"], A.neg_table[A.g]),
        ("[h]", per["h"], A.neg_table[A.h]),
    ):
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            raise CharacterizationMismatch(
                f"{label} meet form and closed form differ at {A.name(int(bad[0]))}"
            )

    return BoxN(table=closed, per_operator=per)


def check_normality(A: TenseHAlgebra) -> Report:
    """``[N](1) = 1`` and ``[N](a & b) = [N](a) & [N](b)``."""
    N = box_n_table(A)
    xs = np.arange(A.n)

    return Report(
        [
            from_witness("NORMAL-top", None if N[A.top] == A.top else {"x": A.name(A.top)}),
            from_witness(
                "NORMAL-meet",
                first_witness(
                    A,
                    N[A.meet_table] != A.meet_table[N[xs[:, None]], N[xs[None, :]]],
                    ("x", "y"),
                ),
            ),
        ]
    )


def box_N_iterates(A: TenseHAlgebra, a: Element, k: int) -> Element:
    """``[N]^(k)(a)``, the meet of the iterates ``[N]^0(a) .. [N]^k(a)``."""
    ensure(k >= 0, ValueError, "k must be non-negative")
    N = box_n_table(A)

    current = acc = a
    for _ in range(k):
        current = int(N[current])
        acc = A.meet(acc, current)

    return acc


def stable_box_N(A: TenseHAlgebra) -> Table:
    """``[N]^(k)(a)`` for every ``a`` once the chain is constant (``k = |A|`` suffices)."""
    N = box_n_table(A)
    xs = np.arange(A.n)

    # normality gives [N]^(k+1)(a) = a & [N]([N]^(k)(a))
    acc = xs.copy()
    for _ in range(A.n):
        nxt = A.meet_table[xs, N[acc]]
        if np.array_equal(nxt, acc):
            break
        acc = nxt

    return frozen(acc, np.int64)


def least_iterate(A: TenseHAlgebra, a: Element, bound: Element) -> int | None:
    """Least ``k <= |A|`` with ``[N]^(k)(a) <= bound``."""
    N = box_n_table(A)

    current = acc = a
    for k in range(A.n + 1):
        if A.le(acc, bound):
            return k
        current = int(N[current])
        acc = A.meet(acc, current)

    return None


@dataclass(frozen=True)
class TenseFilter:
    base: Filter

    @property
    def members(self) -> Bits:
        return self.base.members

    def __contains__(self, x: Element) -> bool:
        return x in self.base

    def __len__(self) -> int:
        return len(self.base)

    def issubset(self, other: "TenseFilter") -> bool:
        return self.base.issubset(other.base)


def filter_label(A: HeytingAlgebra, f: Filter | TenseFilter) -> str:
    """``A`` for the whole carrier, otherwise the member set."""
    if f.members == bitsets.full(A.n):
        return "A"

    return A.poset.set_name(f.members)


def is_tense_filter(A: TenseHAlgebra, f: Filter) -> Report:
    """Four independent tests of the tense filter property.

    ``DEFINITION``: ``x -> y`` in F forces ``u(y) -> u(x)`` in F for each operator.
    ``BICONDITIONAL``: ``x <-> y`` in F forces ``u(x) <-> u(y)`` in F.
    ``GALOIS``: the four adjunction-shaped implications between g, h and f, p.
    ``BOX-N``: F is closed under ``[N]``.

    Raises CharacterizationMismatch when the verdicts differ.
    """
    ensure(is_filter(A, f.members), NotATenseFilter, "not a filter")

    inF = bitsets.to_mask(f.members, A.n)
    imp, iff = A.imp_table, A.iff_table
    g, h, fo, p = A.g, A.h, A.f, A.p
    xs = np.arange(A.n)
    X, Y = xs[:, None], xs[None, :]

    definition = np.zeros((A.n, A.n), dtype=bool)
    biconditional = np.zeros((A.n, A.n), dtype=bool)
    for u in OPERATORS:
        t = A.ops[u]
        definition |= inF[imp] & ~inF[imp[t[Y], t[X]]]
        biconditional |= inF[iff] & ~inF[iff[t[X], t[Y]]]

    galois = (
        (inF[imp[g[X], Y]] & ~inF[imp[h[Y], X]])
        | (inF[imp[h[X], Y]] & ~inF[imp[g[Y], X]])
        | (inF[imp[X, p[Y]]] & ~inF[imp[Y, fo[X]]])
        | (inF[imp[X, fo[Y]]] & ~inF[imp[Y, p[X]]])
    )
    box = inF & ~inF[box_n_table(A)]

    report = Report(
        [
            from_witness("DEFINITION", first_witness(A, definition, ("x", "y"))),
            from_witness("BICONDITIONAL", first_witness(A, biconditional, ("x", "y"))),
            from_witness("GALOIS", first_witness(A, galois, ("x", "y"))),
            from_witness("BOX-N", first_witness(A, box, ("x",))),
        ]
    )

    verdicts = {finding.passed for finding in report}
    if len(verdicts) != 1:
        raise CharacterizationMismatch(
            f"tense filter tests disagree on {filter_label(A, f)}: "
            + " ".join(str(finding) for finding in report)
        )

    return report


def enumerate_tense_filters(A: TenseHAlgebra) -> list[TenseFilter]:
    """Tense filters sorted by generator id."""
    found = [TenseFilter(f) for f in enumerate_filters(A) if is_tense_filter(A, f).passed]
    LOGGER.debug("%d of %d filters are tense filters", len(found), A.n)

    return found


def generated_tense_filter(A: TenseHAlgebra, xs: Iterable[Element]) -> TenseFilter:
    """Least tense filter containing ``xs``: everything above ``[N]^(k)`` of their meet."""
    m = A.meet_all(xs)
    bottom = int(stable_box_N(A)[m])

    return TenseFilter(principal_filter(A, bottom))


@dataclass(frozen=True)
class Congruence:
    """A partition as class ids; each element's id is the least member of its class."""

    classes: tuple[Element, ...]

    @classmethod
    def from_relation(cls, related: npt.NDArray[np.bool_]) -> "Congruence":
        return cls(tuple(int(np.flatnonzero(row)[0]) for row in related))

    def related(self, x: Element, y: Element) -> bool:
        return self.classes[x] == self.classes[y]

    def blocks(self) -> list[Bits]:
        out: dict[Element, Bits] = {}
        for x, c in enumerate(self.classes):
            out[c] = out.get(c, 0) | (1 << x)

        return [out[c] for c in sorted(out)]

    def refines(self, other: "Congruence") -> bool:
        """Every pair related here is related in ``other``."""
        ensure(len(self.classes) == len(other.classes), ValueError, "carrier sizes differ")
        return all(other.classes[x] == other.classes[c] for x, c in enumerate(self.classes))

    def __len__(self) -> int:
        return len(set(self.classes))


def compatibility_witness(A: TenseHAlgebra, theta: Congruence) -> dict[str, str] | None:
    """First ``(op, x, y)`` where related arguments give unrelated results.

    Binary operations are checked one argument at a time, which suffices for
    an equivalence relation.
    """
    c = np.array(theta.classes, dtype=np.int64)
    rel = c[:, None] == c[None, :]

    for label, table in (
        ("meet", A.meet_table),
        ("join", A.join_table),
        ("imp", A.imp_table),
    ):
        for z in range(A.n):
            left = c[table[:, z]]
            right = c[table[z, :]]
            bad = rel & ((left[:, None] != left[None, :]) | (right[:, None] != right[None, :]))
            hits = np.argwhere(bad)
            if len(hits):
                x, y = (int(i) for i in hits[0])
                return {"op": label, "x": A.name(x), "y": A.name(y), "z": A.name(z)}

    for u in OPERATORS:
        image = c[A.ops[u]]
        hits = np.argwhere(rel & (image[:, None] != image[None, :]))
        if len(hits):
            x, y = (int(i) for i in hits[0])
            return {"op": u, "x": A.name(x), "y": A.name(y)}

    return None


def is_congruence(A: TenseHAlgebra, theta: Congruence) -> bool:
    return compatibility_witness(A, theta) is None


def congruence_from_filter(A: TenseHAlgebra, f: TenseFilter | Filter) -> Congruence:
    """``x ~ y`` iff ``x <-> y`` lies in the filter."""
    base = f.base if isinstance(f, TenseFilter) else f
    if not is_tense_filter(A, base).passed:
        raise NotATenseFilter(f"{filter_label(A, base)} is not a tense filter")

    inF = bitsets.to_mask(base.members, A.n)
    theta = Congruence.from_relation(inF[A.iff_table])

    witness = compatibility_witness(A, theta)
    if witness is not None:
        raise CharacterizationMismatch(f"congruence of a tense filter is not compatible: {witness}")

    return theta


def filter_from_congruence(A: TenseHAlgebra, theta: Congruence) -> TenseFilter:
    """The class of 1."""
    ensure(len(theta.classes) == A.n, NotACongruence, "partition has the wrong size")
    witness = compatibility_witness(A, theta)
    if witness is not None:
        raise NotACongruence(" ".join(f"{k}={v}" for k, v in witness.items()))

    top_class = theta.classes[A.top]
    members = bitsets.bits_of(x for x, c in enumerate(theta.classes) if c == top_class)

    f = Filter(members)
    if not is_tense_filter(A, f).passed:
        raise CharacterizationMismatch("class of 1 is not a tense filter")

    return TenseFilter(f)


@dataclass(frozen=True, eq=False)
class CongruenceLattice:
    filters: list[TenseFilter]
    congruences: list[Congruence]
    order: npt.NDArray[np.bool_]

    def __len__(self) -> int:
        return len(self.congruences)


def congruence_lattice(A: TenseHAlgebra) -> CongruenceLattice:
    """Tense congruences via tense filters, ordered by refinement.

    Raises CharacterizationMismatch unless filter inclusion and refinement agree
    and both round trips are identities.
    """
    filters = enumerate_tense_filters(A)
    congruences = [congruence_from_filter(A, f) for f in filters]

    k = len(filters)
    order = np.zeros((k, k), dtype=bool)
    for i in range(k):
        back = filter_from_congruence(A, congruences[i])
        if back != filters[i]:
            raise CharacterizationMismatch(f"filter {filter_label(A, filters[i])} does not round trip")

        for j in range(k):
            refines = congruences[i].refines(congruences[j])
            if refines != filters[i].issubset(filters[j]):
                raise CharacterizationMismatch(
                    f"{filter_label(A, filters[i])} and {filter_label(A, filters[j])} "
                    "are ordered differently as congruences"
                )
            order[i, j] = refines

    if len(set(congruences)) != k:
        raise CharacterizationMismatch("distinct tense filters share a congruence")

    order.flags.writeable = False
    return CongruenceLattice(filters, congruences, order)


def is_simple(A: TenseHAlgebra) -> bool:
    """Every ``a != 1`` reaches 0 under some ``[N]^(k)``."""
    return all(least_iterate(A, a, A.bot) is not None for a in range(A.n) if a != A.top)


def is_subdirectly_irreducible(A: TenseHAlgebra) -> bool:
    """Some ``b != 1`` lies above ``[N]^(k)(a)`` for every ``a != 1`` and suitable ``k``.

    Equivalently the nontrivial tense filters meet in a nontrivial one.
    """
    stable = stable_box_N(A)
    b = A.join_all(int(stable[a]) for a in range(A.n) if a != A.top)

    return b != A.top


def quotient(A: TenseHAlgebra, f: TenseFilter) -> tuple[TenseHAlgebra, AlgebraMorphism]:
    """``A`` modulo the congruence of ``f``, and the canonical surjection.

    Classes are named ``[x]`` after their least member.
    """
    theta = congruence_from_filter(A, f)
    reps = sorted(set(theta.classes))
    position = {rep: i for i, rep in enumerate(reps)}
    cls = np.array([position[c] for c in theta.classes], dtype=np.int64)
    r = np.array(reps, dtype=np.int64)

    inF = bitsets.to_mask(f.members, A.n)
    leq = inF[A.imp_table[r[:, None], r[None, :]]]

    def lift(table: Table) -> Table:
        return cls[table[r[:, None], r[None, :]]]

    poset = FinitePoset([f"[{A.name(int(x))}]" for x in r], leq)
    lattice = FiniteLattice(
        poset,
        lift(A.meet_table),
        lift(A.join_table),
        int(cls[A.bot]),
        int(cls[A.top]),
    )
    H = HeytingAlgebra(lattice, lift(A.imp_table))
    tables = {u: cls[A.ops[u][r]] for u in OPERATORS}
    Q = TenseHAlgebra(H, **tables)

    return Q, AlgebraMorphism(A, Q, tuple(int(c) for c in cls))
