"""Validation reports shared by every module.

A report is a list of violations plus free-form data. ``ok`` is derived,
so a report can never claim success while carrying a witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class BudgetExceeded(RuntimeError):
    """Raised when a brute-force phase would exceed its size budget."""

    def __init__(self, what: str, limit: int, needed: int | None = None):
        self.what = what
        self.limit = limit
        self.needed = needed
        msg = f"budget exceeded in {what} (limit {limit}"
        msg += f", needed at least {needed})" if needed is not None else ")"
        super().__init__(msg)


class Budget:
    """A countdown shared by the enumeration loops of one computation."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit: int | None = None, what: str = "enumeration"):
        self.limit = limit
        self.used = 0
        self.what = what

    def spend(self, n: int = 1, what: str | None = None) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(what or self.what, self.limit, self.used)

    def check(self, n: int, what: str | None = None) -> None:
        # raise without spending, for up-front size estimates
        if self.limit is not None and n > self.limit:
            raise BudgetExceeded(what or self.what, self.limit, n)


def as_budget(b: "Budget | int | None", what: str = "enumeration") -> Budget:
    if isinstance(b, Budget):
        return b
    return Budget(b, what)


@dataclass
class Violation:
    law: str
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"law": self.law, "witness": plain(self.witness), "detail": self.detail}


@dataclass
class Report:
    subject: str = ""
    violations: list[Violation] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, witness: Any = None, detail: str = "") -> None:
        self.violations.append(Violation(law, witness, detail))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.witness, v.detail))

    def laws(self) -> list[str]:
        return [v.law for v in self.violations]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
            "data": plain(self.data),
        }

    def __bool__(self) -> bool:  # pragma: no cover - guard against `if report:`
        raise TypeError("use report.ok")


def plain(x: Any) -> Any:
    """Convert ids and containers into JSON-friendly values with stable order."""
    if isinstance(x, dict):
        return {fmt_id(k) if not isinstance(k, str) else k: plain(v)
                for k, v in sorted(x.items(), key=lambda kv: order_key(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [plain(v) for v in sorted(x, key=order_key)]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return repr(x)


def fmt_id(x: Any) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(fmt_id(e) for e in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(fmt_id(e) for e in sorted(x, key=order_key)) + "}"
    return str(x)


def order_key(x: Any):
    """Total order on ids: ints before strings before tuples, tuples lexicographic."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(order_key(e) for e in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(order_key(e) for e in x)))
    if x is None:
        return (-1,)
    return (4, repr(x))
