"""Run reports: canonical JSON with timing fields kept apart."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

VERDICTS = ("Trivial", "Nontrivial", "Inconclusive", "NotApplicable")
TIMING_KEYS = frozenset({"timings", "elapsed_s"})


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: list[dict] = field(default_factory=list)
    seed: int | None = None
    version: str = ""
    warnings: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"tool": "b0kit", "version": self.version, "command": self.command,
                "inputs": self.inputs, "seed": self.seed, "results": self.results,
                "summary": self.summary, "warnings": self.warnings, "timings": self.timings}

    @classmethod
    def from_dict(cls, doc: dict) -> "RunReport":
        return cls(doc["command"], doc["inputs"], doc["results"], doc.get("seed"),
                   doc.get("version", ""), doc.get("warnings", []), doc.get("summary", {}),
                   doc.get("timings", {}))

    def to_json(self, timings: bool = True) -> str:
        doc = self.to_dict()
        if not timings:
            doc = strip_timings(doc)
        return canonical_json(doc)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def strip_timings(doc: Any) -> Any:
    """Drop every timing field, recursively."""
    if isinstance(doc, dict):
        return {k: strip_timings(v) for k, v in doc.items() if k not in TIMING_KEYS}
    if isinstance(doc, list):
        return [strip_timings(v) for v in doc]
    return doc


def check_verdicts(doc: Any) -> list[str]:
    """Paths of `verdict` fields holding something outside VERDICTS."""
    bad = []

    def walk(x, path):
        if isinstance(x, dict):
            for k, v in x.items():
                if k == "verdict" and v not in VERDICTS:
                    bad.append(f"{path}.{k}={v!r}")
                walk(v, f"{path}.{k}")
        elif isinstance(x, list):
            for i, v in enumerate(x):
                walk(v, f"{path}[{i}]")

    walk(doc, "$")
    return bad
