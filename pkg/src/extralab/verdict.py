"""Pass/fail records used by every check in the package."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a numerical check.

    ``passed`` is always ``max_violation <= tolerance``; it is derived, never
    supplied, so the two cannot disagree.
    """

    max_violation: float
    tolerance: float
    witness: Any = None
    label: str = ""
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_violation < 0:
            object.__setattr__(self, "max_violation", 0.0)

    @property
    def passed(self) -> bool:
        return bool(self.max_violation <= self.tolerance)

    def to_dict(self) -> dict:
        witness = self.witness
        if isinstance(witness, complex):
            witness = [witness.real, witness.imag]
        elif isinstance(witness, tuple):
            witness = [
                [w.real, w.imag] if isinstance(w, complex) else w for w in witness
            ]
        return {
            "label": self.label,
            "passed": self.passed,
            "max_violation": float(self.max_violation),
            "tolerance": float(self.tolerance),
            "witness": witness,
            "notes": list(self.notes),
        }

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.label or 'verdict'}: max violation "
            f"{self.max_violation:.3e} (tol {self.tolerance:.1e})"
        )
