"""Machine-readable pass/fail certificates and enumeration budgets."""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_BUDGET = 10_000_000

# Violation kinds.  "structural" means a malformed table (dangling id,
# missing entry); "axiom" a failed law with a witness; "flag" a declared
# property that the tables contradict; "inconsistent" a redundant law whose
# failure indicates corrupted input rather than a fresh axiom violation.
KINDS = ("structural", "axiom", "flag", "inconsistent")


class BudgetExceeded(Exception):
    """Raised when an enumeration exceeds its candidate budget."""


class InsufficientTruncation(Exception):
    """Raised when an operation needs more simplicial levels than materialized."""


@dataclass
class Budget:
    limit: int = DEFAULT_BUDGET
    used: int = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"enumeration budget exceeded ({self.used} > {self.limit})")


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple
    kind: str = "axiom"
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "witness": [repr(w) for w in self.witness],
            "kind": self.kind,
            "detail": self.detail,
        }


@dataclass
class CheckReport:
    """Outcome of one validation: empty violation list means valid."""

    subject: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def add(self, rule: str, witness: tuple, kind: str = "axiom", detail: str = "") -> None:
        assert kind in KINDS
        self.violations.append(Violation(rule, witness, kind, detail))

    def structural(self) -> list[Violation]:
        return [v for v in self.violations if v.kind == "structural"]

    def merge(self, other: CheckReport) -> None:
        self.violations.extend(other.violations)
        self.checked += other.checked
        for key, val in other.notes.items():
            self.notes.setdefault(key, val)

    def raise_if_failed(self) -> CheckReport:
        if not self.ok:
            first = self.violations[0]
            raise ValueError(f"{self.subject}: {first.rule} at {first.witness!r} {first.detail}")
        return self

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "status": self.status,
            "checked": self.checked,
            "violations": [v.to_json() for v in sorted(
                self.violations, key=lambda v: (v.rule, repr(v.witness)))],
            "notes": {k: self.notes[k] for k in sorted(self.notes, key=repr)},
        }
