"""One-sided feasibility outcomes shared by the form and design tests."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Reason(str, Enum):
    NON_SQUARE = "non-square"
    LOCAL_INVARIANT = "local-invariant"
    INADMISSIBLE = "inadmissible"
    POSITIVITY = "positivity"
    NOT_TWO_SQUARES = "not-two-squares"


@dataclass(frozen=True)
class Verdict:
    """``Excluded`` with a reason and witness, or ``NotExcluded``.

    ``witness`` is the offending value for square/positivity failures and the
    prime for local-invariant failures; ``symbol`` then holds the Hilbert
    symbol arguments that evaluated to -1 there.  ``parts`` carries named
    sub-verdicts for composite tests.
    """

    excluded: bool
    reason: Reason | None = None
    witness: int | None = None
    rule: str | None = None
    symbol: tuple[int, int] | None = None
    note: str | None = None
    parts: tuple[tuple[str, Verdict], ...] = ()

    def __post_init__(self):
        if self.excluded and self.reason is None:
            raise ValueError("an excluded verdict needs a reason")
        if not self.excluded and self.reason is not None:
            raise ValueError("a not-excluded verdict carries no reason")

    @classmethod
    def passed(cls, note: str | None = None, parts=()) -> Verdict:
        return cls(False, note=note, parts=tuple(parts))

    @classmethod
    def exclude(cls, reason: Reason, witness: int | None = None, **kw) -> Verdict:
        return cls(True, reason, witness, **kw)

    @property
    def outcome(self) -> str:
        return "excluded" if self.excluded else "not-excluded"

    def __str__(self) -> str:
        if not self.excluded:
            return "not-excluded" + (f" ({self.note})" if self.note else "")
        if self.reason is Reason.LOCAL_INVARIANT:
            detail = f"p={self.witness}"
            if self.symbol:
                detail += f", ({self.symbol[0]},{self.symbol[1]})_{self.witness}=-1"
        else:
            detail = "" if self.witness is None else str(self.witness)
        if self.rule:
            detail = f"{self.rule}: {detail}" if detail else self.rule
        return f"excluded [{self.reason.value}] {detail}".rstrip()
