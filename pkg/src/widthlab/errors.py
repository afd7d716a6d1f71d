"""Exception hierarchy and verifier verdicts shared by every module."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class WidthLabError(Exception):
    """Base class for all errors raised by widthlab."""


class GraphFormatError(WidthLabError, ValueError):
    """Serialized input does not match the expected schema.

    ``path`` locates the offending element, e.g. ``"edges[3]"``.
    """

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class SubdivisionError(WidthLabError, ValueError):
    pass


class PreconditionError(WidthLabError, ValueError):
    pass


class InvalidCertificate(WidthLabError, ValueError):
    def __init__(self, violation: "Violation"):
        super().__init__(str(violation))
        self.violation = violation


class CapExceeded(WidthLabError):
    """An exact oracle was asked to handle a graph above its size cap."""

    def __init__(self, oracle: str, n: int, cap: int):
        super().__init__(f"{oracle}: graph has {n} vertices, cap is {cap}")
        self.oracle, self.n, self.cap = oracle, n, cap


class BudgetExceeded(WidthLabError):
    """A construction would exceed its vertex budget."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: predicted {size} vertices exceeds budget {budget}")
        self.what, self.size, self.budget = what, size, budget


class ConstructionError(WidthLabError, AssertionError):
    """A construction that is guaranteed to succeed did not. Always a bug."""


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    where: dict[str, Any] = field(default_factory=dict)

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"

    def to_obj(self) -> dict:
        return {"code": self.code, "message": self.message, "where": self.where}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verifier: either valid (with an optional width) or the first violation."""

    valid: bool
    width: int | None = None
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.valid

    @classmethod
    def ok(cls, width: int | None = None) -> "Verdict":
        return cls(True, width, None)

    @classmethod
    def fail(cls, code: str, message: str, **where: Any) -> "Verdict":
        return cls(False, None, Violation(code, message, where))

    def raise_if_invalid(self) -> "Verdict":
        if not self.valid:
            raise InvalidCertificate(self.violation)
        return self

    def to_obj(self) -> dict:
        out: dict[str, Any] = {"valid": self.valid}
        if self.width is not None:
            out["width"] = self.width
        if self.violation is not None:
            out["violation"] = self.violation.to_obj()
        return out
