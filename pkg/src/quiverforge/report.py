"""Check reports: one line per identity with both sides printed."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


def _show(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_show(y) for y in x) + "]"
    return str(x)


@dataclass
class Check:
    name: str
    left: object
    right: object
    ok: bool

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"{verdict}  {self.name}: {_show(self.left)} vs {_show(self.right)}"


@dataclass
class Report:
    command: str
    subject: str = ""
    checks: list = field(default_factory=list)
    info: list = field(default_factory=list)

    def add(self, name: str, left, right, ok: bool | None = None) -> Check:
        c = Check(name, left, right, left == right if ok is None else ok)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.left, c.right, c.ok))
        self.info.extend(other.info)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_text(self) -> str:
        head = f"{self.command}" + (f" {self.subject}" if self.subject else "")
        lines = [head]
        lines += [f"  {c.line()}" for c in self.checks]
        lines += [f"  note: {s}" for s in self.info]
        lines.append(f"  overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "subject": self.subject,
            "checks": [{"name": c.name, "left": _show(c.left), "right": _show(c.right), "ok": c.ok}
                       for c in self.checks],
            "info": list(self.info),
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
