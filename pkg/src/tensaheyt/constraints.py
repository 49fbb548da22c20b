# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
This file intends to provide (1) a simple replacement for raw `assert`s and (2) checks for
names used in the text formats.
"""

FORBIDDEN_NAME_CHARS = set("#:<")


def valid_name(x: str) -> bool:
    if not isinstance(x, str) or x == "":
        return False  # type: ignore[unreachable]

    if "->" in x:
        return False

    for ch in x:
        if ch.isspace() or ch in FORBIDDEN_NAME_CHARS:
            return False

    return True


def ensure(
    condition: bool,
    exctype: type[Exception] = ValueError,
    msg: str | None = None,
) -> None:
    if not condition:
        if msg:
            msg = "Constraint violation: " + msg
        else:
            msg = "Constraint violation"

        raise exctype(msg)
