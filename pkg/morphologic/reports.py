"""morphologic - Report values

Every check of a law returns one of these instead of raising, so a failed
law travels to the command line together with the witness that refutes it.

Copyright (c) 2024 morphologic developers
"""

from dataclasses import dataclass, field
from typing import Any, Optional, Tuple


@dataclass(frozen=True)
class Report:
    """Verdict of a single law, with the witness of its first violation"""
    name: str
    passed: bool
    law: Optional[str] = None
    witness: Tuple[Any, ...] = ()
    notes: Tuple[str, ...] = field(default=())

    def __bool__(self):
        return self.passed

    @classmethod
    def ok(cls, name, notes=()):
        return cls(name=name, passed=True, notes=tuple(notes))

    @classmethod
    def fail(cls, name, law, *witness, notes=()):
        return cls(
            name=name,
            passed=False,
            law=law,
            witness=tuple(witness),
            notes=tuple(notes),
        )

    def with_notes(self, *notes):
        return Report(
            name=self.name,
            passed=self.passed,
            law=self.law,
            witness=self.witness,
            notes=self.notes + tuple(notes),
        )


def first_failure(name, reports):
    """Fold several reports into one, keeping the first failing law"""
    notes = []
    for report in reports:
        notes.extend(report.notes)
        if not report.passed:
            return Report.fail(
                name, report.law, *report.witness, notes=notes,
            )
    return Report.ok(name, notes=notes)
