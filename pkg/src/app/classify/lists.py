from __future__ import annotations

import logging
from typing import FrozenSet, Sequence, Tuple

from src.app.classify.verdicts import (
    REP_FINITE,
    TAME_CONCEALED,
    TAME_NONCONCEALED,
    TAU_FINITE,
    TAU_INFINITE,
    WILD,
    RepTypeVerdict,
    verdict,
)
from src.app.errors import InvalidInputError
from src.app.quiver.partitions import Partition, ShiftedPartition


logger = logging.getLogger(__name__)

STAIRCASE_EXCEPTIONS: FrozenSet[Tuple[int, ...]] = frozenset({
    (4, 3, 1), (3, 3, 2), (3, 2, 2, 1), (4, 2, 1, 1),
})

SHIFTED_REP_FINITE: FrozenSet[Tuple[int, ...]] = frozenset({
    (3, 2), (4, 2), (5, 2), (6, 2), (4, 3), (5, 3), (5, 4), (3, 2, 1), (4, 2, 1),
})
SHIFTED_TAME_CONCEALED: FrozenSet[Tuple[int, ...]] = frozenset({(6, 3), (7, 2), (5, 2, 1)})
SHIFTED_TAME_NONCONCEALED: FrozenSet[Tuple[int, ...]] = frozenset({
    (6, 4), (4, 3, 1), (4, 3, 2), (4, 3, 2, 1),
})

GRID_TAU_FINITE: FrozenSet[Tuple[int, int]] = frozenset({(2, 2), (2, 3), (2, 4)})


def classify_staircase(lam: Partition) -> RepTypeVerdict:
    """tau-finiteness of ``staircase(lam)`` from the staircase list.

    Finite exactly for hooks, ``(n-2, 2)``, ``(2^2, 1^(n-4))`` and every
    partition of at most 8 outside the exception list. The list is closed
    under transposition.
    """
    parts = lam.parts
    n = lam.size
    subject = f"staircase({lam})"
    if len(parts) == 1 or parts[1] == 1:
        return verdict(subject, TAU_FINITE, "staircase-hook", "staircase hook (n-k,1^k)")
    if parts == (n - 2, 2):
        return verdict(subject, TAU_FINITE, "staircase-two-row", "staircase (n-2,2)")
    if parts[:2] == (2, 2) and all(p == 1 for p in parts[2:]):
        return verdict(subject, TAU_FINITE, "staircase-two-column", "staircase (2^2,1^(n-4))")
    if parts in STAIRCASE_EXCEPTIONS:
        return verdict(subject, TAU_INFINITE, "staircase-exception", "staircase exception list")
    if n <= 8:
        return verdict(subject, TAU_FINITE, "staircase-small", "staircase with at most 8 boxes")
    return verdict(
        subject, TAU_INFINITE, "staircase-large",
        "staircase with more than 8 boxes outside the finite families",
    )


def shifted_type(lam: ShiftedPartition) -> str:
    parts = lam.parts
    if len(parts) == 1 or (len(parts) == 2 and parts[1] == 1 and parts[0] >= 2):
        return REP_FINITE
    if parts in SHIFTED_REP_FINITE:
        return REP_FINITE
    if parts in SHIFTED_TAME_CONCEALED:
        return TAME_CONCEALED
    if parts in SHIFTED_TAME_NONCONCEALED:
        return TAME_NONCONCEALED
    return WILD


_SHIFTED_ANCHORS = {
    REP_FINITE: ("shifted-rep-finite", "shifted representation-finite list"),
    TAME_CONCEALED: ("shifted-tame-concealed", "shifted tame concealed list"),
    TAME_NONCONCEALED: ("shifted-tame-nonconcealed", "shifted tame non-concealed list"),
    WILD: ("shifted-wild", "shifted partition outside the finite and tame lists"),
}


def classify_shifted(lam: ShiftedPartition) -> RepTypeVerdict:
    """Representation type of ``shifted_staircase(lam)``; tau-finite exactly when representation-finite."""
    kind = shifted_type(lam)
    rule, anchor = _SHIFTED_ANCHORS[kind]
    note = ""
    if kind == TAME_NONCONCEALED:
        note = "tameness rests on published critical-algebra identifications; recorded, not recomputed"
    return verdict(f"shifted_staircase({lam})", kind, rule, anchor, note=note)


def classify_grid(m: int, n: int) -> RepTypeVerdict:
    subject = f"grid({m},{n})"
    child = classify_staircase(Partition((m,) * n))
    pair = (min(m, n), max(m, n))
    if pair[0] == 1 or pair in GRID_TAU_FINITE:
        return verdict(subject, TAU_FINITE, "grid-list", "grid (1,k),(2,2),(2,3),(2,4)", children=[child])
    return verdict(subject, TAU_INFINITE, "grid-list", "grid outside (1,k),(2,2),(2,3),(2,4)", children=[child])


def classify_triangle(n: int) -> RepTypeVerdict:
    subject = f"triangle({n})"
    child = classify_shifted(ShiftedPartition(tuple(range(n, 0, -1))))
    if n <= 3:
        return verdict(subject, TAU_FINITE, "triangle-list", "triangle with n <= 3", children=[child])
    return verdict(subject, TAU_INFINITE, "triangle-list", "triangle with n >= 4", children=[child])


_ENUMERATED_FAMILIES = {
    "linear_a": "path algebra of type A: a_s given by the closed formula",
    "d": "path algebra of type D: finite Hasse diagram",
    "a1": "linear quiver with one zero relation: finite Hasse diagram",
    "lambda": "commutative-square family: finite Hasse diagram",
}


def classify_family(family: str, params: Sequence[int]) -> RepTypeVerdict:
    """Verdict for a named family; ``auslander_a`` goes through the Tits route (see ``reduction``)."""
    key = family.strip().lower()
    params = tuple(int(p) for p in params)
    if key == "grid":
        if len(params) != 2:
            raise InvalidInputError("grid takes two parameters")
        return classify_grid(*params)
    if key == "triangle":
        if len(params) != 1:
            raise InvalidInputError("triangle takes one parameter")
        return classify_triangle(params[0])
    if key in _ENUMERATED_FAMILIES:
        subject = f"{key}({','.join(str(p) for p in params)})"
        return verdict(subject, TAU_FINITE, f"{key}-enumerated", _ENUMERATED_FAMILIES[key])
    if key == "auslander_a":
        from src.app.classify.reduction import tau_finiteness_via_tits
        from src.app.quiver.families import named_family

        return tau_finiteness_via_tits(named_family(key, params), "separation", subject=f"auslander_a({params[0]})")
    raise InvalidInputError(f"no classification rule for family {family!r}")
