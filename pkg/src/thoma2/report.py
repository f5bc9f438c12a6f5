"""Check reports shared by the validators."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

DEFAULT_BUDGET = 50_000


class BudgetExceeded(RuntimeError):
    """An enumeration grew past the configured cell budget."""


def cell_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("THOMA2_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class Failure:
    check: str
    where: Any
    detail: str = ""

    def __str__(self):
        s = f"{self.check} at {self.where!r}"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class Report:
    """Outcome of an exhaustive check: counts per check family and located failures."""

    name: str
    counts: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    max_failures: int = 50

    def tick(self, check: str, ok: bool, where: Any = None, detail: str = "") -> bool:
        self.counts[check] = self.counts.get(check, 0) + 1
        if not ok:
            self.counts.setdefault(check + ":failed", 0)
            self.counts[check + ":failed"] += 1
            if len(self.failures) < self.max_failures:
                self.failures.append(Failure(check, where, detail))
        return ok

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for k, v in other.counts.items():
            key = prefix + k
            self.counts[key] = self.counts.get(key, 0) + v
        for f in other.failures:
            if len(self.failures) < self.max_failures:
                self.failures.append(Failure(prefix + f.check, f.where, f.detail))
        self.notes.extend(other.notes)
        return self

    @property
    def ok(self) -> bool:
        return not any(k.endswith(":failed") for k in self.counts)

    def failed_checks(self) -> set[str]:
        return {k[: -len(":failed")] for k in self.counts if k.endswith(":failed")}

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{self.name}: {status}"]
        for k in sorted(self.counts):
            if not k.endswith(":failed"):
                bad = self.counts.get(k + ":failed", 0)
                lines.append(f"  {k}: {self.counts[k]} checked, {bad} failed")
        lines += [f"  ! {f}" for f in self.failures[:10]]
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": "PASS" if self.ok else "FAIL",
            "counts": dict(sorted(self.counts.items())),
            "failures": [
                {"check": f.check, "where": repr(f.where), "detail": f.detail}
                for f in self.failures
            ],
            "notes": list(self.notes),
        }
