# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
Line-oriented text formats for algebras, spaces and maps.

An algebra::

    elements: 0 a b c d 1
    leq: 0<a 0<b a<c b<c b<d c<1 d<1
    op g: 0->d a->d b->d c->b d->d 1->0
    op h: ...
    op f: ...
    op p: ...

A space::

    points: ^a ^b ^d
    leq: ^d<^b
    rel R: ^b->^a ^b->^d ^d->^a ^d->^b

A map is a list of ``x->y`` entries, any number per line. ``#`` starts a
comment everywhere; the order is given by covering pairs (any pairs will do,
the reflexive-transitive closure is taken).
"""

from collections.abc import Iterator, Mapping

import numpy as np

import tensaheyt.deployment as d
from tensaheyt.constraints import ensure, valid_name
from tensaheyt.duality import TenseHSpace
from tensaheyt.lattices import FinitePoset, HeytingAlgebra, build_lattice, heyting_implication
from tensaheyt.tense import TenseHAlgebra
from tensaheyt.types import OPERATORS, FormatError

LOGGER = d.LOGGER

ALGEBRA_KEYS = ("elements", "leq", *(f"op {u}" for u in OPERATORS))
SPACE_KEYS = ("points", "leq", "rel R")


def _entries(text: str, allowed: tuple[str, ...]) -> dict[str, tuple[int, list[str]]]:
    """``key: tokens`` lines by key, each with its line number."""
    found: dict[str, tuple[int, list[str]]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        key, sep, rest = line.partition(":")
        key = " ".join(key.split())
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key: values'")
        if key not in allowed:
            raise FormatError(f"line {lineno}: unknown key {key!r}")
        if key in found:
            raise FormatError(f"line {lineno}: duplicate key {key!r}")

        found[key] = (lineno, rest.split())

    return found


def _arrows(tokens: list[str], lineno: int) -> Iterator[tuple[str, str]]:
    for token in tokens:
        left, sep, right = token.partition("->")
        if not sep or not left or not right:
            raise FormatError(f"line {lineno}: expected x->y, got {token!r}")
        yield left, right


def _names(entries: dict[str, tuple[int, list[str]]], key: str) -> list[str]:
    if key not in entries:
        raise FormatError(f"missing {key!r} line")

    lineno, names = entries[key]
    ensure(len(names) > 0, FormatError, f"line {lineno}: no {key}")
    for name in names:
        ensure(valid_name(name), FormatError, f"line {lineno}: invalid name {name!r}")
    ensure(len(set(names)) == len(names), FormatError, f"line {lineno}: repeated name")

    return names


def _poset(entries: dict[str, tuple[int, list[str]]], key: str) -> FinitePoset:
    names = _names(entries, key)
    index = {name: i for i, name in enumerate(names)}

    lineno, tokens = entries.get("leq", (0, []))
    covers = []
    for token in tokens:
        lower, sep, upper = token.partition("<")
        if not sep or lower not in index or upper not in index:
            raise FormatError(f"line {lineno}: bad order pair {token!r}")
        covers.append((index[lower], index[upper]))

    return FinitePoset.from_covers(names, covers)


def parse_heyting(text: str) -> HeytingAlgebra:
    """The Heyting algebra of an algebra file; operator lines are ignored."""
    entries = _entries(text, ALGEBRA_KEYS)
    return heyting_implication(build_lattice(_poset(entries, "elements")))


def parse_algebra(text: str) -> TenseHAlgebra:
    """All four operator lines must be present, each naming every element once."""
    entries = _entries(text, ALGEBRA_KEYS)
    H = heyting_implication(build_lattice(_poset(entries, "elements")))

    given = [u for u in OPERATORS if f"op {u}" in entries]
    if len(given) != len(OPERATORS):
        missing = " ".join(u for u in OPERATORS if u not in given)
        raise FormatError(f"missing operator lines: {missing}")

    tables = {}
    for u in OPERATORS:
        lineno, tokens = entries[f"op {u}"]
        table = [-1] * H.n
        for left, right in _arrows(tokens, lineno):
            x = H.index(left)
            if table[x] >= 0:
                raise FormatError(f"line {lineno}: {left} given twice for {u}")
            table[x] = H.index(right)

        missing = [H.name(x) for x in range(H.n) if table[x] < 0]
        ensure(not missing, FormatError, f"line {lineno}: {u} misses {' '.join(missing)}")
        tables[u] = table

    return TenseHAlgebra(H, **tables)


def dump_algebra(A: TenseHAlgebra) -> str:
    lines = [
        "elements: " + " ".join(A.names),
        "leq: " + " ".join(f"{A.name(x)}<{A.name(y)}" for x, y in A.poset.cover_pairs()),
        *A.op_lines(),
    ]

    return "".join(f"{line.rstrip()}\n" for line in lines)


def parse_space(text: str) -> TenseHSpace:
    entries = _entries(text, SPACE_KEYS)
    poset = _poset(entries, "points")

    relation = np.zeros((poset.n, poset.n), dtype=bool)
    lineno, tokens = entries.get("rel R", (0, []))
    for left, right in _arrows(tokens, lineno):
        relation[poset.index(left), poset.index(right)] = True

    return TenseHSpace(poset, relation)


def dump_space(X: TenseHSpace) -> str:
    lines = [
        "points: " + " ".join(X.names),
        "leq: " + " ".join(f"{X.name(x)}<{X.name(y)}" for x, y in X.poset.cover_pairs()),
        "rel R: " + " ".join(f"{X.name(x)}->{X.name(y)}" for x, y in X.relation_pairs()),
    ]

    return "".join(f"{line.rstrip()}\n" for line in lines)


def parse_map(text: str) -> Mapping[str, str]:
    """``x->y`` entries over display names; a source named twice is an error."""
    mapping: dict[str, str] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for left, right in _arrows(line.split(), lineno):
            if left in mapping:
                raise FormatError(f"line {lineno}: {left} mapped twice")
            mapping[left] = right

    return mapping
