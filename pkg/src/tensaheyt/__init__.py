# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""Finite tense H-algebras: Heyting algebras with the negative tense operators
g, h, f and p, their negative tense filters and congruences, the IGN logic
front end, and the finite Priestley-style duality with tense H-spaces."""

__version_info__ = 0, 1, 0
__version__ = ".".join(map(str, __version_info__))
__author__ = "The tensaheyt authors"
