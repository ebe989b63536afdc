"""Pass/fail reports for validation and theorem suites.

A condition passes iff its residual is structurally zero; the witness of a
failing condition is the rendered nonzero residual.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Condition:
    label: str
    passed: bool
    witness: str = ""


@dataclass
class Report:
    suite: str
    target: str = ""
    conditions: list[Condition] = field(default_factory=list)

    def add(self, label: str, passed: bool, witness: str = "") -> None:
        self.conditions.append(Condition(label, passed, witness if not passed else ""))

    def add_residual(self, label: str, residual) -> None:
        """Record a condition that passes iff ``residual`` is zero."""
        zero = residual.is_zero() if hasattr(residual, "is_zero") else not residual
        self.add(label, zero, "" if zero else f"residual = {residual}")

    def merge(self, other: "Report", prefix: str = "") -> None:
        for c in other.conditions:
            self.conditions.append(Condition(prefix + c.label, c.passed, c.witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def render_text(self) -> str:
        head = f"suite {self.suite}" + (f" on {self.target}" if self.target else "")
        lines = [head]
        for c in self.conditions:
            status = "pass" if c.passed else "FAIL"
            line = f"  {c.label}: {status}"
            if c.witness:
                line += f"  [{c.witness}]"
            lines.append(line)
        n_ok = sum(1 for c in self.conditions if c.passed)
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'} ({n_ok}/{len(self.conditions)})")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "target": self.target,
            "passed": self.passed,
            "conditions": [
                {"label": c.label, "status": "pass" if c.passed else "fail", "residual": c.witness}
                for c in self.conditions
            ],
        }
