# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from tensaheyt import bitsets
from tensaheyt.constraints import ensure
from tensaheyt.reports import Report, from_witness
from tensaheyt.tense import TenseHAlgebra, first_witness
from tensaheyt.types import OPERATORS, Bits, Element, FormatError, NotAHomomorphism


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """A map between the carriers of two tense H-algebras, by element id."""

    source: TenseHAlgebra
    target: TenseHAlgebra
    mapping: tuple[Element, ...]

    def __post_init__(self) -> None:
        ensure(
            len(self.mapping) == self.source.n,
            FormatError,
            f"map needs {self.source.n} entries, got {len(self.mapping)}",
        )
        ensure(
            all(0 <= y < self.target.n for y in self.mapping),
            FormatError,
            "map leaves the target carrier",
        )

    @classmethod
    def from_names(
        cls, source: TenseHAlgebra, target: TenseHAlgebra, names: Mapping[str, str]
    ) -> "AlgebraMorphism":
        missing = [x for x in source.names if x not in names]
        ensure(not missing, FormatError, f"map misses {' '.join(missing)}")

        unknown = [x for x in names if x not in source.names]
        ensure(not unknown, FormatError, f"map names unknown elements {' '.join(unknown)}")

        return cls(source, target, tuple(target.index(names[x]) for x in source.names))

    def __call__(self, x: Element) -> Element:
        return self.mapping[x]

    def preimage(self, bits: Bits) -> Bits:
        return bitsets.bits_of(
            x for x, y in enumerate(self.mapping) if bitsets.contains(bits, y)
        )

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(set(self.mapping)) == self.source.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraMorphism):
            return NotImplemented

        return (
            self.source is other.source
            and self.target is other.target
            and self.mapping == other.mapping
        )

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.mapping))

    def __repr__(self) -> str:
        pairs = " ".join(
            f"{self.source.name(x)}->{self.target.name(y)}" for x, y in enumerate(self.mapping)
        )
        return f"AlgebraMorphism({pairs})"


def identity(A: TenseHAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, tuple(range(A.n)))


def compose(second: AlgebraMorphism, first: AlgebraMorphism) -> AlgebraMorphism:
    """``second`` after ``first``."""
    ensure(
        first.target.names == second.source.names,
        FormatError,
        "morphisms do not compose",
    )
    return AlgebraMorphism(
        first.source, second.target, tuple(second(first(x)) for x in range(first.source.n))
    )


def check_homomorphism(k: AlgebraMorphism) -> Report:
    """Preservation of 0, 1, meet, join, implication and each tense operator."""
    A, B = k.source, k.target
    m = np.array(k.mapping, dtype=np.int64)
    xs = np.arange(A.n)
    X, Y = xs[:, None], xs[None, :]
    pair, single = ("x", "y"), ("x",)

    scans = [
        ("HOM-bot", (xs == A.bot) & (m[xs] != B.bot), single),
        ("HOM-top", (xs == A.top) & (m[xs] != B.top), single),
        ("HOM-meet", m[A.meet_table] != B.meet_table[m[X], m[Y]], pair),
        ("HOM-join", m[A.join_table] != B.join_table[m[X], m[Y]], pair),
        ("HOM-imp", m[A.imp_table] != B.imp_table[m[X], m[Y]], pair),
    ]
    for u in OPERATORS:
        scans.append((f"HOM-{u}", m[A.ops[u]] != B.ops[u][m], single))

    return Report(
        from_witness(check, first_witness(A, bad, variables))
        for check, bad, variables in scans
    )


def is_homomorphism(k: AlgebraMorphism) -> bool:
    return check_homomorphism(k).passed


def require_homomorphism(k: AlgebraMorphism) -> None:
    failures = check_homomorphism(k).failures()
    if failures:
        raise NotAHomomorphism(str(failures[0]))
