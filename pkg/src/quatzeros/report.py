"""Pass/fail reports emitted by the verification harnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self):
        out = {"name": self.name, "pass": self.passed}
        out.update(self.detail)
        return out


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, **detail):
        self.checks.append(Check(name, bool(passed), detail))
        return self.checks[-1]

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"name": self.name, "pass": self.passed,
                "checks": [c.to_json() for c in self.checks]}

    def lines(self):
        out = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            extra = "".join(f"  {k}={v}" for k, v in c.detail.items())
            out.append(f"{tag}  {self.name}:{c.name}{extra}")
        return out
