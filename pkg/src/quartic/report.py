"""Pass/fail record shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Report:
    """Outcome of an identity check or conjecture probe.

    ``witness`` holds the first failing instance (with both computed sides) and
    is always present when ``passed`` is false. ``details`` carries extra
    evidence such as a probe's minimum value.
    """

    id: str
    params: dict
    passed: bool
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.passed and self.witness is None:
            raise ValueError(f"failed report {self.id!r} needs a witness")

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"id": self.id, "passed": self.passed, "range": self.params}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out
