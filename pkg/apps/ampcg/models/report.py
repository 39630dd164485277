from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field, model_validator


class CheckResult(BaseModel):
    name: str
    passed: bool
    witness: Optional[str] = None

    @model_validator(mode="after")
    def _failure_has_witness(self) -> "CheckResult":
        if not self.passed and not self.witness:
            raise ValueError(f"failed check {self.name!r} must carry a witness")
        return self

    def render(self) -> str:
        line = f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'}"
        if self.witness and not self.passed:
            line += f" [witness: {self.witness}]"
        return line


class VerificationReport(BaseModel):
    checks: list[CheckResult] = Field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Optional[str] = None) -> None:
        self.checks.append(CheckResult(name=name, passed=passed, witness=witness))

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(check.model_copy(update={"name": prefix + check.name}))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        return "\n".join(c.render() for c in self.checks)


class QueryStats(BaseModel):
    """Oracle usage; `total` always equals the sum of `by_size`"""

    total: int = 0
    by_size: dict[int, int] = Field(default_factory=dict)

    def record(self, conditioning_size: int) -> None:
        self.total += 1
        self.by_size[conditioning_size] = self.by_size.get(conditioning_size, 0) + 1
