from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

MAX_VIOLATIONS = 25


@dataclass
class Report:
    """Outcome of a validation or theorem check; empty ``violations`` means pass."""

    name: str
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, msg: str) -> None:
        if len(self.violations) < MAX_VIOLATIONS:
            self.violations.append(msg)
        elif len(self.violations) == MAX_VIOLATIONS:
            self.violations.append("... further violations suppressed")

    def extend(self, other: "Report", prefix: str = "") -> None:
        for v in other.violations:
            self.fail(prefix + v)
        self.warnings.extend(prefix + w for w in other.warnings)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "status": "pass" if self.ok else "fail",
            "violations": list(self.violations),
            "warnings": list(self.warnings),
            "data": self.data,
        }
