"""Check reports with stable field names."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any


def sub_seed(seed: int, *labels) -> int:
    """Derive a 64-bit seed from a master seed and a label path.

    sha256 of "seed:label1:label2:..." truncated to its first 8 bytes,
    read big-endian.
    """
    text = ":".join([str(seed), *map(str, labels)])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def show(x) -> str:
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(show(v) for v in x) + ")"
    return str(x)


@dataclass
class Report:
    check: str
    passed: bool
    pairs: int = 0
    violations: int = 0
    seed: int | None = None
    counterexample: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_record(self) -> dict:
        rec = {
            "check": self.check,
            "passed": self.passed,
            "pairs": self.pairs,
            "violations": self.violations,
            "seed": self.seed,
        }
        if self.counterexample is not None:
            rec["counterexample"] = show(self.counterexample)
        if self.details:
            rec["details"] = {k: _plain(v) for k, v in self.details.items()}
        return rec

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" counterexample={show(self.counterexample)}" if self.counterexample is not None else ""
        return f"{status} {self.check}: pairs={self.pairs} violations={self.violations}{tail}"


def _plain(v):
    if isinstance(v, (bool, int, str, type(None))):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)
