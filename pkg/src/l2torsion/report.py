"""Pass/fail bookkeeping shared by the verification suites."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INDET = "INDET"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    params: dict
    status: Status
    witness: str = ""

    def line(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        text = f"{self.status.value} {self.check_id}({args})"
        if self.witness and self.status is not Status.PASS:
            text += f"  {self.witness}"
        return text

    def to_record(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "parameters": dict(self.params),
            "pass": {Status.PASS: True, Status.FAIL: False}.get(self.status),
            "status": self.status.value,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check_id: str, params: dict, ok: Optional[bool], witness: str = "") -> CheckResult:
        """Record a check; ``ok=None`` means the comparison was indeterminate."""
        status = Status.INDET if ok is None else (Status.PASS if ok else Status.FAIL)
        result = CheckResult(check_id, dict(params), status, witness)
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    def count(self, status: Status) -> int:
        return sum(1 for c in self.checks if c.status is status)

    @property
    def passed(self) -> bool:
        return all(c.status is Status.PASS for c in self.checks)

    @property
    def exit_code(self) -> int:
        if self.count(Status.FAIL):
            return 1
        if self.count(Status.INDET):
            return 3
        return 0

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status is not Status.PASS]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def to_records(self) -> list[dict[str, Any]]:
        return [c.to_record() for c in self.checks]
