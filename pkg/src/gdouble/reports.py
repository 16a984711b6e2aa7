"""Verification report schema shared by all check runners."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Report:
    check: str
    algebra: str
    params: dict
    status: str  # "pass" | "fail" | "inconclusive"
    domain: dict
    witness: Optional[dict] = None
    term_counts: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "algebra": self.algebra,
            "params": self.params,
            "status": self.status,
            "domain": self.domain,
            "term_counts": self.term_counts,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=str)


class timer:
    """Context manager measuring wall time in integer milliseconds."""

    def __enter__(self):
        self._t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.monotonic() - self._t0) * 1000)
        return False


def make_report(check: str, algebra: str, params: dict, domain: dict, fn) -> Report:
    """Run fn() -> (ok, witness, term_counts) under a timer."""
    with timer() as t:
        ok, witness, counts = fn()
    return Report(
        check=check,
        algebra=algebra,
        params=params,
        status="pass" if ok else "fail",
        domain=domain,
        witness=witness,
        term_counts=counts,
        elapsed_ms=t.ms,
    )
