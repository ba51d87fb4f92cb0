"""Structured outcome of verification runs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .rings import RingElement, render_element

PASS, FAIL, SKIP = "pass", "fail", "skip"


def render_value(x):
    """Lossless text for witnesses: ring elements, series, numbers."""
    if isinstance(x, RingElement):
        return render_element(x)
    if isinstance(x, (list, tuple)):
        return [render_value(v) for v in x]
    if isinstance(x, dict):
        return {str(k): render_value(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


@dataclass
class Check:
    name: str
    status: str
    witnesses: dict = field(default_factory=dict)

    def as_dict(self):
        return {"name": self.name, "status": self.status,
                "witnesses": render_value(self.witnesses)}


@dataclass
class VerificationReport:
    command: str
    ring: str
    precision: int
    seed: int | None = None
    checks: list = field(default_factory=list)

    def add(self, name, ok, **witnesses):
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        self.checks.append(Check(name, status, witnesses))
        return status

    @property
    def status(self):
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def ok(self):
        return self.status == PASS

    def as_dict(self):
        return {"command": self.command, "ring": self.ring, "precision": self.precision,
                "checks": [c.as_dict() for c in self.checks],
                "status": self.status, "seed": self.seed}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def to_text(self):
        lines = [f"command: {self.command}", f"ring: {self.ring}",
                 f"precision: {self.precision}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        for c in self.checks:
            lines.append(f"[{c.status}] {c.name}")
            for k, v in c.as_dict()["witnesses"].items():
                lines.append(f"    {k} = {v}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines)
