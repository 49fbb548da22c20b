# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
Tense H-algebras: a finite Heyting algebra with four antitone operators
g, h, f and p, and exhaustive scans of the axioms T1 to T8 and the laws
T9 to T14 that follow from them.

Every scan is vectorized over the whole carrier (or all pairs of it) and
reports the lexicographically least counterexample.
"""

from collections.abc import Callable, Mapping, Sequence

import numpy as np
import numpy.typing as npt

import tensaheyt.deployment as d
from tensaheyt import bitsets
from tensaheyt.constraints import ensure
from tensaheyt.lattices import (
    Filter,
    FinitePoset,
    HeytingAlgebra,
    Table,
    enumerate_filters,
    frozen,
    is_filter,
    is_ideal,
    is_prime_filter,
)
from tensaheyt.reports import AxiomReport, Finding, Report, from_witness
from tensaheyt.types import (
    OPERATORS,
    Bits,
    DegenerateAlgebra,
    Element,
    FormatError,
    Operator,
)

LOGGER = d.LOGGER


class TenseHAlgebra(HeytingAlgebra):
    """A Heyting algebra together with the operator tables ``g``, ``h``, ``f``, ``p``.

    The tables are not checked against T1 to T8 here; use :func:`check_axioms`.
    """

    def __init__(
        self,
        heyting: HeytingAlgebra,
        g: npt.ArrayLike,
        h: npt.ArrayLike,
        f: npt.ArrayLike,
        p: npt.ArrayLike,
    ) -> None:
        super().__init__(heyting.lattice, heyting.imp_table)
        self.heyting = heyting

        if self.n < 2:
            raise DegenerateAlgebra("a tense H-algebra needs 0 != 1")

        self.ops: dict[Operator, Table] = {}
        for u, table in zip(OPERATORS, (g, h, f, p)):
            values = frozen(table, np.int64)
            ensure(
                values.shape == (self.n,),
                FormatError,
                f"operator {u} needs {self.n} entries, got {values.shape}",
            )
            ensure(
                bool(((values >= 0) & (values < self.n)).all()),
                FormatError,
                f"operator {u} leaves the carrier",
            )
            self.ops[u] = values

        self.g: Table = self.ops["g"]
        self.h: Table = self.ops["h"]
        self.f: Table = self.ops["f"]
        self.p: Table = self.ops["p"]

    def op(self, u: Operator, x: Element) -> Element:
        return int(self.ops[u][x])

    def replace(self, **tables: npt.ArrayLike) -> "TenseHAlgebra":
        """Copy with some operator tables swapped out."""
        merged = {u: tables.get(u, self.ops[u]) for u in OPERATORS}
        unknown = set(tables) - set(OPERATORS)
        ensure(not unknown, FormatError, f"unknown operators {sorted(unknown)}")

        return TenseHAlgebra(self.heyting, **merged)

    def op_lines(self) -> list[str]:
        return [
            f"op {u}: "
            + " ".join(f"{self.name(x)}->{self.name(self.op(u, x))}" for x in range(self.n))
            for u in OPERATORS
        ]


def first_witness(
    A: HeytingAlgebra | FinitePoset, bad: npt.NDArray[np.bool_], variables: Sequence[str]
) -> dict[str, str] | None:
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return None

    return {var: A.name(int(i)) for var, i in zip(variables, hits[0])}


def _scan(
    A: HeytingAlgebra, check: str, bad: npt.NDArray[np.bool_], variables: Sequence[str]
) -> Finding:
    return from_witness(check, first_witness(A, bad, variables))


def check_axioms(A: TenseHAlgebra) -> AxiomReport:
    """Exhaustive scan of T1 to T8; violations are findings, never exceptions."""
    n, leq = A.n, A.leq
    meet, join = A.meet_table, A.join_table
    g, h, f, p = A.g, A.h, A.f, A.p
    xs = np.arange(n)
    X, Y = xs[:, None], xs[None, :]

    single = ("x",)
    pair = ("x", "y")

    axioms = [
        ("T1", (xs == A.top) & ((g != A.bot) | (h != A.bot)), single),
        ("T2", (xs == A.bot) & ((f != A.top) | (p != A.top)), single),
        (
            "T3",
            (g[meet] != join[g[X], g[Y]]) | (h[meet] != join[h[X], h[Y]]),
            pair,
        ),
        (
            "T4",
            (f[join] != meet[f[X], f[Y]]) | (p[join] != meet[p[X], p[Y]]),
            pair,
        ),
        ("T5", ~leq[g[h], xs] | ~leq[h[g], xs], single),
        ("T6", ~leq[xs, p[f]] | ~leq[xs, f[p]], single),
        (
            "T7",
            ~leq[meet[g[X], f[Y]], g[join]] | ~leq[meet[h[X], p[Y]], h[join]],
            pair,
        ),
        (
            "T8",
            ~leq[f[meet], join[f[X], g[Y]]] | ~leq[p[meet], join[p[X], h[Y]]],
            pair,
        ),
    ]

    return AxiomReport(_scan(A, check, bad, variables) for check, bad, variables in axioms)


def check_derived_laws(A: TenseHAlgebra) -> AxiomReport:
    """Scan of T9 to T14. On an algebra passing T1 to T8 these cannot fail."""
    leq, meet, imp = A.leq, A.meet_table, A.imp_table
    g, h, f, p = A.g, A.h, A.f, A.p
    xs = np.arange(A.n)
    X, Y = xs[:, None], xs[None, :]

    pair = ("x", "y")

    laws = [
        ("T9", leq[X, Y] & (~leq[g[Y], g[X]] | ~leq[h[Y], h[X]]), pair),
        ("T10", leq[X, Y] & (~leq[f[Y], f[X]] | ~leq[p[Y], p[X]]), pair),
        ("T11", leq[g[X], Y] != leq[h[Y], X], pair),
        ("T12", leq[X, p[Y]] != leq[Y, f[X]], pair),
        (
            "T13",
            ~leq[h[imp[imp[g[X], Y], Y]], X] | ~leq[g[imp[imp[h[X], Y], Y]], X],
            pair,
        ),
        (
            "T14",
            ~leq[Y, f[meet[X, p[Y]]]] | ~leq[Y, p[meet[X, f[Y]]]],
            pair,
        ),
    ]

    return AxiomReport(_scan(A, check, bad, variables) for check, bad, variables in laws)


def is_tense_h_algebra(A: TenseHAlgebra) -> bool:
    return check_axioms(A).passed


def filter_name(A: HeytingAlgebra, f: Filter) -> str:
    """``^x`` names the principal filter generated by ``x``."""
    return "^" + A.name(A.meet_all(f))


def preimage(A: TenseHAlgebra, u: Operator, members: Bits) -> Bits:
    table = A.ops[u]
    return bitsets.bits_of(x for x in range(A.n) if bitsets.contains(members, int(table[x])))


def check_prime_preimages(A: TenseHAlgebra) -> Report:
    """f and p pull filters back to ideals; outside g and h, primes pull back to filters."""
    filters = enumerate_filters(A)
    everything = bitsets.full(A.n)

    def first_bad(
        candidates: list[Filter], u: Operator, test: Callable[[Bits], bool]
    ) -> dict[str, str] | None:
        for s in candidates:
            if not test(preimage(A, u, s.members)):
                return {"S": filter_name(A, s)}
        return None

    primes = [s for s in filters if is_prime_filter(A, s)]

    def is_ideal_of(bits: Bits) -> bool:
        return is_ideal(A, bits)

    def is_co_filter(bits: Bits) -> bool:
        return is_filter(A, everything & ~bits)

    checks = [
        ("IDEAL-f", first_bad(filters, "f", is_ideal_of)),
        ("IDEAL-p", first_bad(filters, "p", is_ideal_of)),
        ("FILTER-g", first_bad(primes, "g", is_co_filter)),
        ("FILTER-h", first_bad(primes, "h", is_co_filter)),
    ]

    return Report(from_witness(check, witness) for check, witness in checks)


def check_classical_definability(A: TenseHAlgebra) -> Report:
    """Whether ``f = ~g~`` and ``p = ~h~``. Both hold on Boolean algebras."""
    neg = A.neg_table
    single = ("x",)

    return Report(
        [
            _scan(A, "CLASSICAL-f", A.f != neg[A.g[neg]], single),
            _scan(A, "CLASSICAL-p", A.p != neg[A.h[neg]], single),
        ]
    )


def relational_operators(
    carrier: Sequence[Bits], succ: Sequence[Bits], pred: Sequence[Bits], points: int
) -> Mapping[Operator, list[Bits]]:
    """g_R, h_R, f_R, p_R on each subset of points in ``carrier``.

    ``succ[x]`` is R(x) and ``pred[x]`` is the converse image.
    """
    everything = bitsets.full(points)
    out: dict[Operator, list[Bits]] = {u: [] for u in OPERATORS}

    for U in carrier:
        outside = everything & ~U
        g = h = f = p = 0
        for x in range(points):
            bit = 1 << x
            if succ[x] & outside:
                g |= bit
            if pred[x] & outside:
                h |= bit
            if not succ[x] & U:
                f |= bit
            if not pred[x] & U:
                p |= bit

        out["g"].append(g)
        out["h"].append(h)
        out["f"].append(f)
        out["p"].append(p)

    return out
