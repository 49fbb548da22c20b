# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
The propositional language of intuitionistic logic with Galois negations.

Formulas are built from variables ``x0, x1, ...``, the constants ``bot`` and
``top``, the binary connectives ``&``, ``|``, ``->`` and the prefix operators
``~``, ``g``, ``h``, ``f``, ``p``. Negation is not a node of its own: ``~a``
is ``a -> bot``.

A formula is valid in an algebra when it evaluates to the top element under
every assignment. Validity is decided by exhaustive evaluation over the
whole assignment space, vectorized with numpy; the least falsifying
assignment in lexicographic order is the countermodel.
"""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal, cast

import numpy as np
import numpy.typing as npt
from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

import tensaheyt.deployment as d
from tensaheyt import bitsets
from tensaheyt.examples import build_frame_algebra, iter_corpus, iter_frames
from tensaheyt.filters import box_N_iterates, generated_tense_filter
from tensaheyt.lattices import format_set
from tensaheyt.reports import Finding, Report, from_witness, passing
from tensaheyt.tense import TenseHAlgebra, first_witness
from tensaheyt.types import (
    AssignmentSpaceTooLarge,
    Bits,
    Element,
    EquivalenceMismatch,
    FormatError,
    FormulaSyntaxError,
    Operator,
    UnboundVariable,
    UnknownSymbol,
)

LOGGER = d.LOGGER

Connective = Literal["&", "|", "->"]
Assignment = Mapping[int, Element]


class Formula:
    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Var(Formula):
    index: int


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Unary(Formula):
    op: Operator
    arg: Formula


@dataclass(frozen=True)
class Binary(Formula):
    op: Connective
    left: Formula
    right: Formula


def neg(phi: Formula) -> Formula:
    return Binary("->", phi, Bot())


def iff(phi: Formula, psi: Formula) -> Formula:
    return Binary("&", Binary("->", phi, psi), Binary("->", psi, phi))


def variables(phi: Formula) -> tuple[int, ...]:
    found: set[int] = set()
    stack = [phi]
    while stack:
        match stack.pop():
            case Var(index):
                found.add(index)
            case Unary(_, arg):
                stack.append(arg)
            case Binary(_, left, right):
                stack.extend((left, right))

    return tuple(sorted(found))


def depth(phi: Formula) -> int:
    match phi:
        case Unary(_, arg):
            return 1 + depth(arg)
        case Binary(_, left, right):
            return 1 + max(depth(left), depth(right))
        case _:
            return 0


# ── Concrete syntax ─────────────────────────────────────────────────

GRAMMAR = r"""
    ?start: implication

    ?implication: disjunction
        | disjunction "->" implication    -> implies

    ?disjunction: conjunction
        | disjunction "|" conjunction     -> disj

    ?conjunction: unary
        | conjunction "&" unary           -> conj

    ?unary: "~" unary                     -> negation
        | OPERATOR unary                  -> modal
        | atom

    ?atom: "bot"                          -> bot
        | "top"                           -> top
        | VARIABLE                        -> variable
        | "(" implication ")"

    OPERATOR: "g" | "h" | "f" | "p"
    VARIABLE: /x[0-9]+/

    %import common.WS
    %ignore WS
"""


@v_args(inline=True)
class ToFormula(Transformer):  # type: ignore[type-arg]
    def implies(self, left: Formula, right: Formula) -> Formula:
        return Binary("->", left, right)

    def disj(self, left: Formula, right: Formula) -> Formula:
        return Binary("|", left, right)

    def conj(self, left: Formula, right: Formula) -> Formula:
        return Binary("&", left, right)

    def negation(self, arg: Formula) -> Formula:
        return neg(arg)

    def modal(self, op: str, arg: Formula) -> Formula:
        return Unary(str(op), arg)  # type: ignore[arg-type]

    def variable(self, token: str) -> Formula:
        return Var(int(token[1:]))

    def bot(self) -> Formula:
        return Bot()

    def top(self) -> Formula:
        return Top()


PARSER = Lark(GRAMMAR, parser="lalr", lexer="basic", transformer=ToFormula())


def parse(text: str) -> Formula:
    """Precedence, tightest first: prefix operators, ``&``, ``|``, ``->`` (right associative)."""
    try:
        phi = PARSER.parse(text)
    except UnexpectedCharacters as exc:
        offset = exc.pos_in_stream
        raise UnknownSymbol(f"unknown symbol {text[offset]!r}", offset) from None
    except UnexpectedToken as exc:
        if exc.token.type == "$END":
            raise FormulaSyntaxError("unexpected end of formula", len(text)) from None
        raise FormulaSyntaxError(f"unexpected {str(exc.token)!r}", exc.token.start_pos or 0) from None
    except UnexpectedInput as exc:
        raise FormulaSyntaxError("malformed formula", max(exc.pos_in_stream or 0, 0)) from None

    return cast(Formula, phi)


# binding strength: -> 1, | 2, & 3, prefix 4, atoms 5
LEVEL: dict[str, int] = {"->": 1, "|": 2, "&": 3}


def _level(phi: Formula) -> int:
    match phi:
        case Binary("->", _, Bot()):
            return 4
        case Binary(op, _, _):
            return LEVEL[op]
        case Unary():
            return 4
        case _:
            return 5


def _render_at(phi: Formula, needed: int) -> str:
    text = render(phi)
    return f"({text})" if _level(phi) < needed else text


def render(phi: Formula) -> str:
    """Text form with as few parentheses as the grammar allows."""
    match phi:
        case Var(index):
            return f"x{index}"
        case Bot():
            return "bot"
        case Top():
            return "top"
        case Binary("->", arg, Bot()):
            return "~" + _render_at(arg, 4)
        case Unary(op, arg):
            return f"{op} {_render_at(arg, 4)}"
        case Binary("->", left, right):
            return f"{_render_at(left, 2)} -> {_render_at(right, 1)}"
        case Binary(op, left, right):
            level = LEVEL[op]
            return f"{_render_at(left, level)} {op} {_render_at(right, level + 1)}"

    raise FormatError(f"not a formula: {phi!r}")


# ── Algebraic semantics ─────────────────────────────────────────────


def evaluate(phi: Formula, A: TenseHAlgebra, assignment: Assignment) -> Element:
    """Homomorphic evaluation, one node at a time."""
    match phi:
        case Var(index):
            if index not in assignment:
                raise UnboundVariable(f"x{index} has no value")
            return assignment[index]
        case Bot():
            return A.bot
        case Top():
            return A.top
        case Unary(op, arg):
            return int(A.ops[op][evaluate(arg, A, assignment)])
        case Binary(op, left, right):
            x, y = evaluate(left, A, assignment), evaluate(right, A, assignment)
            match op:
                case "&":
                    return A.meet(x, y)
                case "|":
                    return A.join(x, y)
                case "->":
                    return A.implies(x, y)

    raise FormatError(f"not a formula: {phi!r}")


def assignment_grid(n: int, k: int) -> npt.NDArray[np.int64]:
    """All ``n ** k`` assignments as columns, in lexicographic order."""
    return np.indices((n,) * k, dtype=np.int64).reshape(k, n**k)


def evaluate_all(
    phi: Formula, A: TenseHAlgebra, columns: Mapping[int, npt.NDArray[np.int64]], size: int
) -> npt.NDArray[np.int64]:
    """Evaluate under many assignments at once; ``columns[i]`` holds the values of ``x<i>``."""
    match phi:
        case Var(index):
            if index not in columns:
                raise UnboundVariable(f"x{index} has no value")
            return columns[index]
        case Bot():
            return np.full(size, A.bot, dtype=np.int64)
        case Top():
            return np.full(size, A.top, dtype=np.int64)
        case Unary(op, arg):
            return A.ops[op][evaluate_all(arg, A, columns, size)]
        case Binary(op, left, right):
            x = evaluate_all(left, A, columns, size)
            y = evaluate_all(right, A, columns, size)
            table = {"&": A.meet_table, "|": A.join_table, "->": A.imp_table}[op]
            return table[x, y]

    raise FormatError(f"not a formula: {phi!r}")


@dataclass(frozen=True)
class Validity:
    valid: bool
    countermodel: tuple[tuple[int, Element], ...] = ()

    def __bool__(self) -> bool:
        return self.valid

    def assignment(self) -> dict[int, Element]:
        return dict(self.countermodel)

    def witness(self, A: TenseHAlgebra) -> dict[str, str]:
        return {f"x{i}": A.name(x) for i, x in self.countermodel}

    def finding(self, A: TenseHAlgebra, check: str = "VALID") -> Finding:
        return from_witness(check, None if self.valid else self.witness(A))


def is_valid(phi: Formula, A: TenseHAlgebra) -> Validity:
    """Evaluates to 1 under all ``|A| ** |vars|`` assignments.

    Raises AssignmentSpaceTooLarge beyond the configured evaluation cap; the
    space is never sampled.
    """
    order = variables(phi)
    size = A.n ** len(order)
    cap = d.max_evaluations()
    if size > cap:
        raise AssignmentSpaceTooLarge(
            f"{A.n}^{len(order)} assignments exceed the cap of {cap} evaluations"
        )
    if 2 * size > cap:
        LOGGER.warning("%d assignments use more than half of the cap of %d", size, cap)

    grid = assignment_grid(A.n, len(order))
    values = evaluate_all(phi, A, dict(zip(order, grid)), size)

    falsified = np.flatnonzero(values != A.top)
    if len(falsified) == 0:
        return Validity(True)

    first = int(falsified[0])
    return Validity(False, tuple((i, int(grid[j, first])) for j, i in enumerate(order)))


@dataclass(frozen=True, eq=False)
class Countermodel:
    name: str
    algebra: TenseHAlgebra
    validity: Validity

    def witness(self) -> dict[str, str]:
        return {"algebra": self.name, **self.validity.witness(self.algebra)}


def frame_corpus(max_points: int) -> Iterator[tuple[str, TenseHAlgebra]]:
    """Every frame algebra on at most ``max_points`` points."""
    return iter_frames(max_points)


def countermodel_search(
    phi: Formula, algebras: Iterable[tuple[str, TenseHAlgebra]] | None = None
) -> Countermodel | None:
    """First falsifying algebra and assignment in corpus order, or ``None``."""
    searched = 0
    for name, A in algebras if algebras is not None else iter_corpus():
        searched += 1
        validity = is_valid(phi, A)
        if not validity:
            LOGGER.debug("countermodel for %s in %s after %d algebras", phi, name, searched)
            return Countermodel(name, A, validity)

    LOGGER.debug("no countermodel for %s in %d algebras", phi, searched)
    return None


# ── Soundness ───────────────────────────────────────────────────────

IPL_AXIOMS: tuple[tuple[str, str], ...] = (
    ("IPL-1", "x1 -> x2 -> x1"),
    ("IPL-2", "(x1 -> x2 -> x3) -> (x1 -> x2) -> x1 -> x3"),
    ("IPL-3", "x1 & x2 -> x1"),
    ("IPL-4", "x1 & x2 -> x2"),
    ("IPL-5", "x1 -> x2 -> x1 & x2"),
    ("IPL-6", "x1 -> x1 | x2"),
    ("IPL-7", "x2 -> x1 | x2"),
    ("IPL-8", "(x1 -> x3) -> (x2 -> x3) -> x1 | x2 -> x3"),
    ("IPL-9", "bot -> x1"),
)

IGN_AXIOMS: tuple[tuple[str, str], ...] = (
    ("IGN-2", "g x1 & f x2 -> g (x1 | x2)"),
    ("IGN-3", "f (x1 & x2) -> f x1 | g x2"),
    ("IGN-4", "h x1 & p x2 -> h (x1 | x2)"),
    ("IGN-5", "p (x1 & x2) -> p x1 | h x2"),
)


def check_axiom_soundness(A: TenseHAlgebra) -> Report:
    """Every axiom scheme instance is valid in ``A``."""
    return Report(
        is_valid(parse(text), A).finding(A, check) for check, text in (*IPL_AXIOMS, *IGN_AXIOMS)
    )


def check_rules_soundness(A: TenseHAlgebra) -> Report:
    """Modus ponens and the two negation rules, read on elements.

    MP: ``a = 1`` and ``a -> b = 1`` give ``b = 1``.
    RN1: ``a -> f(b) = 1`` gives ``b -> p(a) = 1``.
    RN2: ``g(a) -> b = 1`` gives ``h(b) -> a = 1``.
    """
    xs = np.arange(A.n)
    a, b = xs[:, None], xs[None, :]
    imp, top = A.imp_table, A.top
    pair = ("a", "b")

    scans = [
        ("MP", (a == top) & (imp[a, b] == top) & (b != top)),
        ("RN1", (imp[a, A.f[b]] == top) & (imp[b, A.p[a]] != top)),
        ("RN2", (imp[A.g[a], b] == top) & (imp[A.h[b], a] != top)),
    ]

    return Report(from_witness(check, first_witness(A, bad, pair)) for check, bad in scans)


def check_transformers(A: TenseHAlgebra) -> Report:
    """``a = b`` exactly when ``a -> b`` and ``b -> a`` both evaluate to 1."""
    xs = np.arange(A.n)
    imp = A.imp_table
    equal = xs[:, None] == xs[None, :]
    mutual = (imp == A.top) & (imp.T == A.top)

    return Report([from_witness("TRANSFORMERS", first_witness(A, equal != mutual, ("a", "b")))])


# ── Relational semantics ────────────────────────────────────────────


def satisfies(
    points: int,
    relation: Iterable[tuple[int, int]],
    valuation: Mapping[int, Bits],
    point: int,
    phi: Formula,
) -> bool:
    """Truth at ``point`` of a relational frame over a classical base.

    ``g a`` holds where some successor refutes ``a``, ``h a`` where some
    predecessor does; ``f a`` holds where no successor satisfies ``a`` and
    ``p a`` where no predecessor does.
    """
    pairs = frozenset(relation)
    succ = [[y for y in range(points) if (x, y) in pairs] for x in range(points)]
    pred = [[y for y in range(points) if (y, x) in pairs] for x in range(points)]

    def holds(x: int, psi: Formula) -> bool:
        match psi:
            case Var(index):
                if index not in valuation:
                    raise UnboundVariable(f"x{index} has no value")
                return bitsets.contains(valuation[index], x)
            case Bot():
                return False
            case Top():
                return True
            case Unary("g", arg):
                return any(not holds(y, arg) for y in succ[x])
            case Unary("h", arg):
                return any(not holds(y, arg) for y in pred[x])
            case Unary("f", arg):
                return not any(holds(y, arg) for y in succ[x])
            case Unary("p", arg):
                return not any(holds(y, arg) for y in pred[x])
            case Binary("&", left, right):
                return holds(x, left) and holds(x, right)
            case Binary("|", left, right):
                return holds(x, left) or holds(x, right)
            case Binary("->", left, right):
                return not holds(x, left) or holds(x, right)

        raise FormatError(f"not a formula: {psi!r}")

    return holds(point, phi)


def check_frame_semantics(points: int, relation: Sequence[tuple[int, int]], phi: Formula) -> Report:
    """Pointwise truth against evaluation in the frame algebra, over every valuation."""
    A = build_frame_algebra(points, relation)
    order = variables(phi)
    size = A.n ** len(order)
    if size > d.max_evaluations():
        raise AssignmentSpaceTooLarge(f"{A.n}^{len(order)} valuations exceed the cap")

    grid = assignment_grid(A.n, len(order))
    values = evaluate_all(phi, A, dict(zip(order, grid)), size)

    for column in range(size):
        valuation = {i: int(grid[j, column]) for j, i in enumerate(order)}
        truth = bitsets.bits_of(
            x for x in range(points) if satisfies(points, relation, valuation, x, phi)
        )
        if truth != int(values[column]):
            witness = {f"x{i}": A.name(v) for i, v in valuation.items()}
            return Report([from_witness("KRIPKE", witness)])

    return Report([passing("KRIPKE")])


# ── Local deduction ─────────────────────────────────────────────────


@dataclass(frozen=True)
class DeductionCheck:
    """Both sides of the local deduction equivalence for one ``(gamma, delta, psi)``.

    ``k`` and ``subset`` witness the right-hand side: the least ``k`` and the
    first subset of ``delta`` (in bitmask order) for that ``k``.
    """

    lhs: bool
    rhs: bool
    degenerate: bool
    k: int | None = None
    subset: tuple[Element, ...] = ()

    def report(self, A: TenseHAlgebra) -> Report:
        lines = [
            f"lhs {str(self.lhs).lower()}",
            f"rhs {str(self.rhs).lower()}",
        ]
        if self.k is not None:
            lines.append(f"witness k={self.k} delta={format_set(A.name(x) for x in self.subset)}")
        if self.degenerate:
            lines.append("empty delta")

        return Report([passing("LDDT")], lines)


def lddt_check(
    A: TenseHAlgebra,
    gamma: Iterable[Element],
    delta: Iterable[Element],
    psi: Element,
) -> DeductionCheck:
    """``psi`` lies in the tense filter generated by ``gamma`` and ``delta`` exactly
    when ``[N]^(k)(meet of some nonempty delta') -> psi`` lies in the one generated
    by ``gamma``, for some ``k <= |A|``.

    With ``delta`` empty both sides reduce to ``psi`` in the filter of ``gamma``;
    that case is flagged as degenerate. Raises EquivalenceMismatch if the sides differ.
    """
    premises = sorted(set(gamma))
    extra = sorted(set(delta))

    lhs = psi in generated_tense_filter(A, [*premises, *extra])
    base = generated_tense_filter(A, premises)

    if not extra:
        return DeductionCheck(lhs=lhs, rhs=psi in base, degenerate=True)

    found: tuple[int, tuple[Element, ...]] | None = None
    for k in range(A.n + 1):
        for mask in bitsets.subsets(bitsets.full(len(extra))):
            if mask == 0:
                continue
            subset = tuple(extra[i] for i in bitsets.members_of(mask))
            premise = box_N_iterates(A, A.meet_all(subset), k)
            if A.implies(premise, psi) in base:
                found = (k, subset)
                break
        if found is not None:
            break

    rhs = found is not None
    if lhs != rhs:
        raise EquivalenceMismatch(f"deduction sides differ: lhs={lhs} rhs={rhs}")

    if found is None:
        return DeductionCheck(lhs=lhs, rhs=rhs, degenerate=False)

    return DeductionCheck(lhs=lhs, rhs=rhs, degenerate=False, k=found[0], subset=found[1])
