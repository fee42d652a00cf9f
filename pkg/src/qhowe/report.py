"""Pass/fail reports shared by every verifier."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: str | None = None, **details) -> CheckResult:
        c = CheckResult(name, bool(passed), witness, details)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str | None = None) -> "Report":
        for c in other.checks:
            name = f"{prefix}/{c.name}" if prefix else c.name
            self.checks.append(CheckResult(name, c.passed, c.witness, c.details))
        for k, v in other.timing.items():
            self.timing[f"{prefix}/{k}" if prefix else k] = v
        return self

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @contextmanager
    def timed(self, key: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timing[key] = round(time.perf_counter() - t0, 4)

    def to_json(self, include_timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "config": self.config,
            "checks": [c.to_json() for c in self.checks],
        }
        if include_timing:
            out["timing"] = self.timing
        return out

    def dumps(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_json(include_timing), indent=2, sort_keys=True)

    def render(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} "
                 f"({sum(c.passed for c in self.checks)}/{len(self.checks)} checks)"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.witness:
                line += f"  -- {c.witness}"
            lines.append(line)
        return "\n".join(lines)

    def __bool__(self):
        return self.passed
