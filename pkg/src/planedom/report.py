"""Pass/fail evidence shared by the validators and certifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Finding:
    check: str
    message: str

    def __str__(self) -> str:
        return f"[{self.check}] {self.message}"


@dataclass
class VerificationReport:
    """Outcome of a batch of checks.

    ``checks`` lists every check that ran; ``findings`` holds one entry per
    violation. The report passes iff there are no findings.
    """

    subject: str
    checks: list[str] = field(default_factory=list)
    findings: list[Finding] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.findings

    def __bool__(self) -> bool:
        return self.passed

    def ran(self, check: str) -> None:
        if check not in self.checks:
            self.checks.append(check)

    def fail(self, check: str, message: str) -> None:
        self.ran(check)
        self.findings.append(Finding(check, message))

    def failed(self, check: str) -> bool:
        return any(f.check == check for f in self.findings)

    def messages(self) -> list[str]:
        return [str(f) for f in self.findings]

    def summary(self) -> str:
        status = "pass" if self.passed else "fail"
        lines = [f"{self.subject}: {status} ({len(self.checks)} checks, {len(self.findings)} findings)"]
        lines.extend("  " + m for m in self.messages())
        return "\n".join(lines)
