"""Check verdicts and reports, with deterministic JSON/text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def jsonable(obj: Any) -> Any:
    """Convert Fractions and nested containers into JSON-safe values."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Any = None

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": jsonable(self.witness)}


# alternate name for a single verdict
CheckVerdict = Check


@dataclass
class CheckReport:
    instance: str = ""
    checks: list[Check] = field(default_factory=list)
    points: list[dict] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Any = None) -> Check:
        c = Check(name, bool(passed), witness)
        self.checks.append(c)
        return c

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.checks.extend(other.checks)
        if not self.points:
            self.points = list(other.points)
        self.notes.extend(other.notes)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def verdicts(self) -> dict[str, bool]:
        return {c.name: c.passed for c in self.checks}

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        d = {
            "instance": self.instance,
            "checks": [c.to_json() for c in self.checks],
            "points": jsonable(self.points),
        }
        if self.notes:
            d["notes"] = jsonable(self.notes)
        return d


def emit_report(report: CheckReport, fmt: str = "json") -> bytes:
    """Deterministic serialization; JSON keys are sorted."""
    if fmt == "json":
        return (json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n").encode()
    if fmt == "text":
        lines = [f"instance {report.instance}"]
        for c in report.checks:
            lines.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}")
            if c.witness is not None and not c.passed:
                lines.append("    witness: " + json.dumps(jsonable(c.witness), sort_keys=True))
        for n in report.notes:
            lines.append("note: " + json.dumps(jsonable(n), sort_keys=True))
        lines.append(f"points: {len(report.points)}")
        lines.append("ALL PASS" if report.passed else f"{len(report.failures())} FAILED")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")
