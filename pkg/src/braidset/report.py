"""Report records returned by predicates, condition checks and suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

DEFAULT_WITNESS_CAP = 10


def _plain(value: Any) -> Any:
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return value


@dataclass(frozen=True)
class Witness:
    """A concrete violation: the arguments and the two sides that differ."""

    args: tuple
    lhs: Any
    rhs: Any
    note: str = ""

    def to_dict(self) -> dict:
        out = {"args": _plain(self.args), "lhs": _plain(self.lhs), "rhs": _plain(self.rhs)}
        if self.note:
            out["note"] = self.note
        return out

    def __str__(self) -> str:
        text = f"{_show(self.args)}: {_show(self.lhs)} != {_show(self.rhs)}"
        return f"{text} [{self.note}]" if self.note else text


def _show(value: Any) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(_show(v) for v in value) + ")"
    return str(value)


@dataclass
class ConditionReport:
    """Outcome of one condition. ``holds`` is true exactly when no violation exists.

    ``witnesses`` keeps the first ``cap`` violations in enumeration order and
    ``violations`` counts all of them.
    """

    condition: str
    holds: bool
    witnesses: list[Witness] = field(default_factory=list)
    violations: int = 0
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        out = {
            "condition": self.condition,
            "holds": self.holds,
            "violations": self.violations,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }
        if self.note:
            out["note"] = self.note
        return out

    def summary(self) -> str:
        if self.holds:
            return f"{self.condition}: holds" + (f" ({self.note})" if self.note else "")
        first = f"; first witness {self.witnesses[0]}" if self.witnesses else ""
        return f"{self.condition}: FAILS ({self.violations} violations{first})"


class Collector:
    """Accumulates violations for a :class:`ConditionReport`."""

    def __init__(self, condition: str, cap: int = DEFAULT_WITNESS_CAP):
        self.condition = condition
        self.cap = cap
        self.witnesses: list[Witness] = []
        self.count = 0

    def add(self, args, lhs, rhs, note: str = "") -> None:
        self.count += 1
        if len(self.witnesses) < self.cap:
            self.witnesses.append(Witness(tuple(args), lhs, rhs, note))

    def report(self, note: str = "") -> ConditionReport:
        return ConditionReport(self.condition, self.count == 0, self.witnesses, self.count, note)


@dataclass
class Clause:
    """One implication or equivalence inside a suite."""

    name: str
    verdict: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    subject: str
    hypotheses_met: bool
    hypotheses: dict[str, bool] = field(default_factory=dict)
    clauses: list[Clause] = field(default_factory=list)
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.verdict for c in self.clauses)

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "subject": self.subject,
            "hypotheses_met": self.hypotheses_met,
            "hypotheses": dict(self.hypotheses),
            "verdicts": dict(self.verdicts),
            "clauses": [c.to_dict() for c in self.clauses],
            "passed": self.passed,
        }

    def __str__(self) -> str:
        lines = [f"suite {self.suite} on {self.subject}: hypotheses_met={self.hypotheses_met}"]
        lines += [f"  hypothesis {k}: {v}" for k, v in self.hypotheses.items()]
        lines += [f"  {k} = {v}" for k, v in self.verdicts.items()]
        for c in self.clauses:
            mark = "ok " if c.verdict else "BAD"
            lines.append(f"  [{mark}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        return "\n".join(lines)
