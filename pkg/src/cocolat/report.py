from __future__ import annotations

from dataclasses import dataclass
from typing import Any

__all__ = [
    "VerificationReport",
    "PreconditionError",
    "NotMaximalError",
    "CapExceededError",
]


@dataclass(frozen=True)
class VerificationReport:
    """Verdict of a check, with a counterexample whenever the verdict is false.

    Truthiness follows the verdict, so reports can be used directly in ``if``
    statements and ``assert``s.  ``certificate`` optionally backs a positive
    verdict (e.g. the ordering found by a recognition search).
    """

    verdict: bool
    checked: str
    witness: Any = None
    certificate: Any = None

    def __post_init__(self):
        if self.verdict and self.witness is not None:
            raise ValueError("a passing report carries no counterexample")
        if not self.verdict and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def __bool__(self) -> bool:
        return self.verdict

    def tap(self, labels=None) -> str:
        """One-line TAP-style record: ``ok <criterion>`` / ``not ok <criterion> <witness>``."""
        if self.verdict:
            return f"ok {self.checked}"
        return f"not ok {self.checked} {_render(self.witness, labels)}"


def _render(w, labels) -> str:
    lab = (lambda v: labels(v)) if labels is not None else str
    if isinstance(w, int):
        return lab(w)
    if isinstance(w, (frozenset, set)):
        return "{" + ",".join(_render(x, labels) for x in sorted(w)) + "}"
    if isinstance(w, (tuple, list)):
        return "(" + " ".join(_render(x, labels) for x in w) + ")"
    return str(w).replace("\n", " ")


class PreconditionError(ValueError):
    """An input failed a checked precondition; ``witness`` explains why."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class NotMaximalError(PreconditionError):
    """An antichain argument is not a maximal antichain."""


class CapExceededError(RuntimeError):
    """An enumeration or exhaustive search would exceed its configured size cap."""
