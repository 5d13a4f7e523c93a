"""Validator contract, accepted-theory records and minimality pruning."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .alphabet import Theory, canonical, render_theory

__all__ = [
    "ValidationFailure",
    "ValidationOutcome",
    "ValidationRecord",
    "Validator",
    "is_antichain",
    "prune_supersets",
    "trivial_validator",
]


@dataclass(frozen=True)
class ValidationOutcome:
    """Verdict on one theory.

    ``coefficients`` follow the canonical member order and are present only
    for accepted theories; the entry of largest magnitude is exactly 1.
    """

    accepted: bool
    coefficients: tuple[float, ...] | None = None
    diagnostics: str | None = None

    def __post_init__(self):
        if self.coefficients is not None and not self.accepted:
            raise ValueError("coefficients are only allowed on accepted outcomes")


@dataclass(frozen=True)
class ValidationRecord:
    q: int
    theory: Theory
    outcome: ValidationOutcome

    @property
    def key(self) -> tuple[int, tuple[str, ...]]:
        return self.q, canonical(self.theory)


Validator = Callable[[Theory], ValidationOutcome]


class ValidationFailure(RuntimeError):
    """A validator raised while checking ``theory`` at level ``q``."""

    def __init__(self, q: int, theory: Theory, cause: BaseException):
        self.q = q
        self.theory = theory
        self.cause = cause
        super().__init__(f"validator failed on {render_theory(theory)} at q={q}: {cause}")


_ACCEPT = ValidationOutcome(True)


def trivial_validator() -> Validator:
    """Accept everything."""

    def valid(theory: Theory) -> ValidationOutcome:
        return _ACCEPT

    return valid


def prune_supersets(records: Iterable[ValidationRecord]) -> list[ValidationRecord]:
    """Keep records whose theory has no proper subset among earlier kept records.

    Records are visited in ascending ``q`` (stable). Weights are positive, so a
    proper subset always sits at a strictly lower level and one pass suffices.
    """
    kept: list[ValidationRecord] = []
    for rec in sorted(records, key=lambda r: r.q):
        if not any(k.theory < rec.theory for k in kept):
            kept.append(rec)
    return kept


def is_antichain(theories: Iterable[Theory]) -> bool:
    ts = list(theories)
    return not any(a < b for a in ts for b in ts)
