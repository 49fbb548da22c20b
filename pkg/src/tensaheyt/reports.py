# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
Check results as data. Every verification routine returns :class:`Finding`
records collected into a :class:`Report`; the command line prints them one per
line as ``<CHECK> PASS`` or ``<CHECK> FAIL k=v ...``.
"""

from collections.abc import Iterable, Mapping
from typing import Any

import orjson
from pydantic.dataclasses import dataclass as validated_dataclass

from tensaheyt.types import Witness


@validated_dataclass(frozen=True)
class Finding:
    check: str
    passed: bool
    witness: Witness = ()

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        rendered = " ".join(f"{k}={v}" for k, v in self.witness)

        return f"{self.check} {verdict} {rendered}".rstrip()

    def as_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "passed": self.passed,
            "witness": dict(self.witness),
        }


def passing(check: str, **witness: object) -> Finding:
    """A passing finding may still carry the evidence that made it pass."""
    return Finding(
        check=check,
        passed=True,
        witness=tuple((k, str(v)) for k, v in witness.items()),
    )


def failing(check: str, **witness: object) -> Finding:
    return Finding(
        check=check,
        passed=False,
        witness=tuple((k, str(v)) for k, v in witness.items()),
    )


def from_witness(check: str, witness: Mapping[str, object] | None) -> Finding:
    """``None`` means no counterexample was found."""
    if witness is None:
        return passing(check)

    return failing(check, **witness)


class Report:
    def __init__(
        self,
        findings: Iterable[Finding] = (),
        lines: Iterable[str] = (),
    ) -> None:
        self.findings: list[Finding] = list(findings)
        self.lines: list[str] = list(lines)

    @property
    def passed(self) -> bool:
        return all(finding.passed for finding in self.findings)

    def __getitem__(self, check: str) -> Finding:
        for finding in self.findings:
            if finding.check == check:
                return finding

        raise KeyError(check)

    def __iter__(self) -> Any:
        return iter(self.findings)

    def __len__(self) -> int:
        return len(self.findings)

    def extend(self, other: "Report") -> "Report":
        self.findings.extend(other.findings)
        self.lines.extend(other.lines)

        return self

    def failures(self) -> list[Finding]:
        return [finding for finding in self.findings if not finding.passed]

    def render_text(self) -> str:
        out = [*self.lines, *(str(finding) for finding in self.findings)]

        return "".join(f"{line}\n" for line in out)

    def render_json(self) -> str:
        payload = {
            "passed": self.passed,
            "lines": self.lines,
            "findings": [finding.as_dict() for finding in self.findings],
        }

        return orjson.dumps(
            payload, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS
        ).decode("utf-8")

    def __repr__(self) -> str:
        return f"Report({len(self.findings)} findings, passed={self.passed})"


class AxiomReport(Report):
    """Findings for the axioms T1 to T8 or the derived laws T9 to T14."""
