"""JSON reports with one named pass/fail entry per check."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": bool(self.passed)}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, name: str, passed: bool, detail=None) -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            **self.data,
        }

    def to_text(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail is not None else ""))
        for k in sorted(self.data):
            v = self.data[k]
            if isinstance(v, (str, int)):
                lines.append(f"  {k} = {v}")
        return "\n".join(lines)
