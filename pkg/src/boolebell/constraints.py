"""Parser for the line-oriented constraint file format.

::

    # three events, pairwise data
    events 3
    P(1) = 1/2
    P(1,2) = 0.375

Each line is blank, a ``#`` comment, ``events N`` or ``P(i,j,...) = VALUE``
where VALUE is an integer, ``a/b`` or a decimal (converted exactly). Indices
are 1-based and strictly increasing. Problems are collected with line and
column rather than stopping at the first one.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import EventScenario, ProbabilityAssignment

E_NO_EVENTS = "E001"
E_REDECLARED = "E002"
E_DUPLICATE = "E003"
E_RANGE = "E004"
E_ORDER = "E005"
E_INDEX = "E006"
E_SYNTAX = "E007"
E_NUMBER = "E008"

_EVENTS = re.compile(r"^\s*events\s+(?P<n>\d+)\s*$")
_ASSIGN = re.compile(
    r"^\s*P\(\s*(?P<idx>\d+(?:\s*,\s*\d+)*)\s*\)\s*=\s*"
    r"(?P<value>-?(?:\d+\s*/\s*\d+|\d+\.\d+|\d+))\s*$"
)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    line: int
    column: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.code} {self.message}"


class ConstraintError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class ConstraintEntry:
    subset: tuple[int, ...]
    value: Fraction
    line: int
    column: int


@dataclass(frozen=True)
class ConstraintFile:
    n: int
    entries: tuple[ConstraintEntry, ...]
    events_line: int

    def to_assignment(self) -> ProbabilityAssignment:
        scenario = EventScenario(self.n, tuple(e.subset for e in self.entries))
        lookup = {e.subset: e.value for e in self.entries}
        return ProbabilityAssignment(scenario, tuple(lookup[s] for s in scenario.family))


def parse_constraints(text: str) -> ConstraintFile:
    """Parse constraint text; raises :class:`ConstraintError` with every diagnostic."""
    diags: list[Diagnostic] = []
    n = None
    events_line = 0
    entries: list[ConstraintEntry] = []
    seen: dict[tuple[int, ...], int] = {}

    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        col0 = len(line) - len(line.lstrip()) + 1

        m = _EVENTS.match(line)
        if m:
            if n is not None:
                diags.append(Diagnostic(E_REDECLARED, lineno, col0,
                                        f"events redeclared (first declared on line {events_line})"))
                continue
            count = int(m["n"])
            if count < 1:
                diags.append(Diagnostic(E_NUMBER, lineno, m.start("n") + 1,
                                        "event count must be at least 1"))
                continue
            n, events_line = count, lineno
            continue

        m = _ASSIGN.match(line)
        if not m:
            diags.append(Diagnostic(E_SYNTAX, lineno, col0,
                                    "expected 'events N' or 'P(i,...) = value'"))
            continue
        if n is None:
            diags.append(Diagnostic(E_NO_EVENTS, lineno, col0, "events not declared"))
            continue

        idx_col = m.start("idx") + 1
        subset = tuple(int(tok) for tok in m["idx"].split(","))
        bad = [i for i in subset if not 1 <= i <= n]
        if bad:
            diags.append(Diagnostic(E_INDEX, lineno, idx_col,
                                    f"index {bad[0]} outside 1..{n}"))
            continue
        if any(b <= a for a, b in zip(subset, subset[1:])):
            diags.append(Diagnostic(E_ORDER, lineno, idx_col,
                                    "indices must be strictly increasing"))
            continue

        val_col = m.start("value") + 1
        literal = re.sub(r"\s+", "", m["value"])
        try:
            value = Fraction(literal)
        except ZeroDivisionError:
            diags.append(Diagnostic(E_NUMBER, lineno, val_col, f"zero denominator in {literal}"))
            continue
        if not 0 <= value <= 1:
            diags.append(Diagnostic(E_RANGE, lineno, val_col,
                                    f"value {literal} outside [0, 1]"))
            continue
        if subset in seen:
            diags.append(Diagnostic(E_DUPLICATE, lineno, col0,
                                    f"duplicate subset P({','.join(map(str, subset))}), "
                                    f"first given on line {seen[subset]}"))
            continue
        seen[subset] = lineno
        entries.append(ConstraintEntry(subset, value, lineno, col0))

    if n is None and not diags:
        diags.append(Diagnostic(E_NO_EVENTS, 1, 1, "events not declared"))
    if diags:
        raise ConstraintError(diags)
    return ConstraintFile(n, tuple(entries), events_line)
