from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    name: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    command: str
    parameters: dict[str, Any]
    results: dict[str, Any]
    verdicts: list[Verdict] = field(default_factory=list)
    version: str = ""
    timing_seconds: float | None = None

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict:
        data = {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "version": self.version,
        }
        if self.timing_seconds is not None:
            data["timing_seconds"] = round(self.timing_seconds, 3)
        return data
