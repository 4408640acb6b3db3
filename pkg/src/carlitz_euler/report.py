"""Check records and canonical JSON reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction

SCHEMA = "carlitz-euler-report/1"
VERSION = "0.1.0"
PLACEHOLDER = "—"


@dataclass
class Check:
    name: str
    lhs: str
    rhs: str
    passed: bool
    timing: float | None = None

    def as_dict(self, deterministic: bool = False) -> dict:
        if deterministic or self.timing is None:
            t = PLACEHOLDER
        else:
            t = f"{self.timing:.3f}s"
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": bool(self.passed), "timing": t}


def timed(fn, *args, **kwargs) -> Check:
    """Run a function returning a Check and record its wall time."""
    t0 = time.perf_counter()
    c = fn(*args, **kwargs)
    c.timing = time.perf_counter() - t0
    return c


def jsonable(x):
    """Rationals become "num/den" strings; containers are converted recursively."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def build_report(command: str, config: dict, checks: list[Check], deterministic: bool = False,
                 extra: dict | None = None) -> dict:
    passed = sum(1 for c in checks if c.passed)
    out = {
        "schema": SCHEMA,
        "tool_version": VERSION,
        "command": command,
        "config": jsonable(config),
        "checks": [c.as_dict(deterministic) for c in checks],
        "summary": {"total": len(checks), "passed": passed, "failed": len(checks) - passed},
    }
    if extra:
        out.update(jsonable(extra))
    return out


def dumps(report: dict) -> str:
    """Canonical serialization: sorted keys, fixed indentation, UTF-8."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
