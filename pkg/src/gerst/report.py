"""CheckReport: outcome of an axiom or theorem verification run."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check: str
    algebra: str
    params: dict = field(default_factory=dict)
    items: list = field(default_factory=list)
    counterexample: dict | None = None
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(it["passed"] for it in self.items)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def mode(self) -> str | None:
        if not self.passed:
            return None
        return "coboundary witness found" if self.witnesses else "exact identity"

    def add(self, name: str, passed: bool, **extra) -> None:
        self.items.append({"name": name, "passed": bool(passed), **extra})

    def fail_item(self, name: str) -> dict | None:
        return next((it for it in self.items if it["name"] == name and not it["passed"]), None)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "algebra": self.algebra,
            "params": self.params,
            "verdict": self.verdict,
            "mode": self.mode,
            "items": self.items,
            "counterexample": self.counterexample,
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.check} on {self.algebra}: {self.verdict.upper()}"]
        if self.params:
            lines.append("  params: " + ", ".join(f"{k}={v}" for k, v in sorted(self.params.items())))
        width = max((len(it["name"]) for it in self.items), default=0)
        for it in self.items:
            extra = {k: v for k, v in it.items() if k not in ("name", "passed")}
            tail = "  " + " ".join(f"{k}={v}" for k, v in sorted(extra.items())) if extra else ""
            mark = "ok  " if it["passed"] else "FAIL"
            lines.append(f"  [{mark}] {it['name'].ljust(width)}{tail}".rstrip())
        if self.passed and self.mode:
            lines.append(f"  mode: {self.mode}")
        if self.counterexample:
            lines.append("  counterexample:")
            for k, v in sorted(self.counterexample.items()):
                lines.append(f"    {k}: {v}")
        return "\n".join(lines) + "\n"
