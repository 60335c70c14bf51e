"""Verdicts with structured, independently checkable certificates."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any


class Outcome(str, enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    UNDECIDED = "undecided"
    # a sampled necessary condition held everywhere it was tested
    CONSISTENT = "consistent"


PASS = "pass"
FAIL = "fail"
UNKNOWN = "undecided"
VACUOUS = "vacuous"
NOT_APPLICABLE = "not_applicable"
ZERO_MINOR = "zero_minor"


@dataclass
class Check:
    condition: str
    result: str
    index_set: tuple[int, ...] = ()
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.result == FAIL

    def to_json(self) -> dict[str, Any]:
        return {
            "index_set": list(self.index_set),
            "condition": self.condition,
            "result": self.result,
            "witness": self.witness,
        }


@dataclass
class Verdict:
    outcome: Outcome
    checks: list[Check] = field(default_factory=list)
    # typed payload for library callers (representation, factors, ...); not serialized
    data: Any = None

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.ACCEPT

    @property
    def rejected(self) -> bool:
        return self.outcome is Outcome.REJECT

    @property
    def undecided(self) -> bool:
        return self.outcome is Outcome.UNDECIDED

    def first_failure(self) -> Check | None:
        for c in self.checks:
            if c.failed:
                return c
        return None

    def to_json(self) -> dict[str, Any]:
        return {"outcome": self.outcome.value, "checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"outcome: {self.outcome.value}"]
        for c in self.checks:
            where = f" {list(c.index_set)}" if c.index_set else ""
            extra = ", ".join(f"{k}={_short(v)}" for k, v in c.witness.items())
            lines.append(f"  [{c.result}] {c.condition}{where}" + (f": {extra}" if extra else ""))
        return "\n".join(lines)


def _short(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def from_checks(checks: list[Check], data: Any = None) -> Verdict:
    """Reject on any failure, else undecided on any unknown, else accept."""
    if any(c.result == FAIL for c in checks):
        return Verdict(Outcome.REJECT, checks, data)
    if any(c.result == UNKNOWN for c in checks):
        return Verdict(Outcome.UNDECIDED, checks, data)
    return Verdict(Outcome.ACCEPT, checks, data)
