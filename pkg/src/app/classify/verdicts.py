from __future__ import annotations

from dataclasses import dataclass
import json
from typing import Iterable, Optional, Tuple

from src.app.errors import InvalidInputError


REP_FINITE = "rep_finite"
TAME_CONCEALED = "tame_concealed"
TAME_NONCONCEALED = "tame_nonconcealed"
WILD = "wild"
TAU_FINITE = "tau_finite"
TAU_INFINITE = "tau_infinite"
INCONCLUSIVE = "inconclusive"

STATUSES = (REP_FINITE, TAME_CONCEALED, TAME_NONCONCEALED, WILD, TAU_FINITE, TAU_INFINITE, INCONCLUSIVE)

_LABELS = {
    REP_FINITE: "representation-finite",
    TAME_CONCEALED: "tame concealed",
    TAME_NONCONCEALED: "tame non-concealed",
    WILD: "wild",
    TAU_FINITE: "tau-finite",
    TAU_INFINITE: "tau-infinite",
    INCONCLUSIVE: "inconclusive",
}


@dataclass(frozen=True)
class Evidence:
    """One step of a verdict's justification.

    ``rule`` is a stable identifier, ``anchor`` the human-readable statement
    of the rule that fired, ``certificates`` any vectors the rule produced.
    """

    rule: str
    anchor: str
    certificates: Tuple[Tuple[int, ...], ...] = ()
    children: Tuple["RepTypeVerdict", ...] = ()
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "anchor": self.anchor,
            "certificates": [list(c) for c in self.certificates],
            "children": [c.to_dict() for c in self.children],
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Evidence":
        return cls(
            rule=data["rule"],
            anchor=data["anchor"],
            certificates=tuple(tuple(int(x) for x in c) for c in data.get("certificates", ())),
            children=tuple(RepTypeVerdict.from_dict(c) for c in data.get("children", ())),
            note=data.get("note", ""),
        )


@dataclass(frozen=True)
class RepTypeVerdict:
    subject: str
    status: str
    tau_finite: Optional[bool]
    evidence: Tuple[Evidence, ...]

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise InvalidInputError(f"unknown verdict status {self.status!r}")
        if not self.evidence:
            raise InvalidInputError("a verdict needs at least one piece of evidence")

    @property
    def label(self) -> str:
        return _LABELS[self.status]

    def summary(self) -> str:
        """``"tau-infinite (staircase exception list)"``."""
        return f"{self.label} ({self.evidence[0].anchor})"

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "status": self.status,
            "tau_finite": self.tau_finite,
            "evidence": [e.to_dict() for e in self.evidence],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RepTypeVerdict":
        try:
            return cls(
                subject=data["subject"],
                status=data["status"],
                tau_finite=data["tau_finite"],
                evidence=tuple(Evidence.from_dict(e) for e in data["evidence"]),
            )
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"malformed verdict document: {e}") from e


def verdict(
    subject: str,
    status: str,
    rule: str,
    anchor: str,
    certificates: Iterable[Iterable[int]] = (),
    children: Iterable[RepTypeVerdict] = (),
    note: str = "",
    tau_finite: Optional[bool] = None,
) -> RepTypeVerdict:
    """Single-evidence verdict; ``tau_finite`` defaults from the status where it is implied."""
    if tau_finite is None:
        tau_finite = {REP_FINITE: True, TAU_FINITE: True}.get(status)
        if status in (TAME_CONCEALED, TAME_NONCONCEALED, WILD, TAU_INFINITE):
            tau_finite = False
    evidence = Evidence(
        rule,
        anchor,
        tuple(tuple(int(x) for x in c) for c in certificates),
        tuple(children),
        note,
    )
    return RepTypeVerdict(subject, status, tau_finite, (evidence,))


def verdict_to_json(v: RepTypeVerdict) -> str:
    return json.dumps(v.to_dict(), sort_keys=True)


def verdict_from_json(text: str) -> RepTypeVerdict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"verdict is not valid JSON: {e}") from e
    return RepTypeVerdict.from_dict(data)
