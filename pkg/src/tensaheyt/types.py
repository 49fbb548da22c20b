# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

from typing import Literal, TypeAlias

Element: TypeAlias = int
Bits: TypeAlias = int
Operator: TypeAlias = Literal["g", "h", "f", "p"]
Witness: TypeAlias = tuple[tuple[str, str], ...]

OPERATORS: tuple[Operator, ...] = ("g", "h", "f", "p")


class TensaheytError(Exception):
    """Base class for every error raised on bad input or exhausted caps."""


class FormatError(TensaheytError):
    pass


class NotAPartialOrder(TensaheytError):
    pass


class NotALattice(TensaheytError):
    pass


class NotDistributive(TensaheytError):
    pass


class NoRelativePseudocomplement(TensaheytError):
    pass


class DegenerateAlgebra(TensaheytError):
    pass


class NotDisjoint(TensaheytError):
    pass


class CarrierTooLarge(TensaheytError):
    pass


class ConfigurationError(TensaheytError):
    pass


class UnboundVariable(TensaheytError):
    pass


class AssignmentSpaceTooLarge(TensaheytError):
    pass


class FormulaSyntaxError(TensaheytError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownSymbol(FormulaSyntaxError):
    pass


class NotATenseFilter(TensaheytError):
    pass


class NotACongruence(TensaheytError):
    pass


class NotAHomomorphism(TensaheytError):
    pass


class SpaceAxiomViolation(TensaheytError):
    def __init__(self, clause: str, witness: Witness) -> None:
        rendered = " ".join(f"{k}={v}" for k, v in witness)
        super().__init__(f"{clause} FAIL {rendered}".rstrip())
        self.clause = clause
        self.witness = witness


class ImplementationBug(Exception):
    """A cross-check backed by a theorem disagreed. Never caused by input."""


class CharacterizationMismatch(ImplementationBug):
    pass


class IsomorphismFailure(ImplementationBug):
    pass


class EquivalenceMismatch(ImplementationBug):
    pass
