from __future__ import annotations

from dataclasses import dataclass
import itertools
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.app.config.settings import get_settings
from src.app.errors import CertificationError, InvalidInputError, SearchTooLargeError
from src.app.tits.form import TitsForm, evaluate


logger = logging.getLogger(__name__)

WEAKLY_POSITIVE = "weakly_positive"
NOT_WEAKLY_POSITIVE = "not_weakly_positive"

Vector = Tuple[int, ...]

# Largest tail block scanned in one vectorised step.
_TAIL_BLOCK = 1 << 18


@dataclass(frozen=True)
class PositivityVerdict:
    status: str
    certificate: Optional[Vector]
    bound: int
    minimality_verified: bool = True

    @property
    def weakly_positive(self) -> bool:
        return self.status == WEAKLY_POSITIVE

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "certificate": list(self.certificate) if self.certificate is not None else None,
            "bound": self.bound,
            "minimality_verified": self.minimality_verified,
        }


def is_weakly_positive(
    q: TitsForm,
    bound: int | None = None,
    search_cap: int | None = None,
) -> PositivityVerdict:
    """Decide ``q(v) > 0`` on ``{0..bound}^n \\ {0}`` by growing positive roots.

    Starting from the simple roots, each layer adds one unit vector to the
    previous layer's roots. Vectors reaching ``q <= 0`` are violations; only
    vectors with ``q == 1`` are extended. A minimal non-positive vector is a
    radical vector of a critical restriction, so removing any unit of its
    support leaves a root that this growth reaches.

    Returns:
        The verdict; when negative, the certificate is the violation with the
        smallest coordinate sum, then lexicographically smallest.
    """
    settings = get_settings()
    bound = settings.positivity_bound if bound is None else bound
    cap = settings.search_cap if search_cap is None else search_cap
    if bound < 1:
        raise InvalidInputError("search bound must be >= 1")
    n = q.n
    if n > cap:
        raise SearchTooLargeError(f"search too large: {n} variables exceed the cap of {cap}")

    gram = q.matrix()
    layer: Dict[Vector, np.ndarray] = {}
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        layer[tuple(unit)] = gram[:, i].copy()
    seen = set(layer)
    depth = 1

    while layer:
        violations: List[Vector] = []
        grown: Dict[Vector, np.ndarray] = {}
        for v in sorted(layer):
            gv = layer[v]
            for j in range(n):
                if v[j] >= bound:
                    continue
                w = v[:j] + (v[j] + 1,) + v[j + 1:]
                if w in seen or w in grown:
                    continue
                # q(v + e_j) = q(v) + (G v)_j + 1 with q(v) = 1.
                value = 2 + int(gv[j])
                if value <= 0:
                    violations.append(w)
                elif value == 1:
                    grown[w] = gv + gram[:, j]
        if violations:
            witness = min(violations)
            return _negative(q, witness, bound)
        seen.update(grown)
        layer = grown
        depth += 1
        logger.debug("root layer %d: %d roots", depth, len(layer))

    return PositivityVerdict(WEAKLY_POSITIVE, None, bound, q.minimality_verified)


def _negative(q: TitsForm, witness: Vector, bound: int) -> PositivityVerdict:
    if any(x < 0 for x in witness) or not any(witness) or evaluate(q, witness) > 0:
        raise CertificationError(f"positivity certificate {witness} failed re-evaluation")
    return PositivityVerdict(NOT_WEAKLY_POSITIVE, witness, bound, q.minimality_verified)


def search_nonnegativity_violation(
    q: TitsForm,
    bound: int,
    box_cap: int | None = None,
) -> Optional[Vector]:
    """Look for ``v`` in ``{0..bound}^n`` with ``q(v) < 0``.

    A quick pass walks vectors with ``q`` in ``{0, 1}``; if that finds nothing
    the whole box is scanned in lexicographic order. ``None`` only says no
    negative vector lives in the box, not that ``q`` is weakly non-negative.
    """
    if bound < 1:
        raise InvalidInputError("search bound must be >= 1")
    cap = get_settings().box_cap if box_cap is None else box_cap

    quick = _low_value_walk(q, bound)
    if quick is not None:
        return quick

    box = (bound + 1) ** q.n
    if box > cap:
        raise SearchTooLargeError(
            f"search too large: box of {box} vectors exceeds the cap of {cap}"
        )
    logger.info("scanning %d vectors for a negative value", box)
    return _scan_box(q, bound)


def _low_value_walk(q: TitsForm, bound: int) -> Optional[Vector]:
    n = q.n
    gram = q.matrix()
    layer: Dict[Vector, Tuple[int, np.ndarray]] = {}
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        layer[tuple(unit)] = (1, gram[:, i].copy())
    seen = set(layer)
    while layer:
        grown: Dict[Vector, Tuple[int, np.ndarray]] = {}
        hits: List[Vector] = []
        for v in sorted(layer):
            qv, gv = layer[v]
            for j in range(n):
                if v[j] >= bound:
                    continue
                w = v[:j] + (v[j] + 1,) + v[j + 1:]
                if w in seen or w in grown:
                    continue
                value = qv + int(gv[j]) + 1
                if value < 0:
                    hits.append(w)
                elif value <= 1:
                    grown[w] = (value, gv + gram[:, j])
        if hits:
            return min(hits)
        seen.update(grown)
        layer = grown
    return None


def _scan_box(q: TitsForm, bound: int) -> Optional[Vector]:
    n = q.n
    gram = q.matrix()
    k = n
    while k > 0 and (bound + 1) ** k > _TAIL_BLOCK:
        k -= 1
    head = n - k
    tail = np.array(list(itertools.product(range(bound + 1), repeat=k)), dtype=np.int64).reshape(-1, k)
    g_hh = gram[:head, :head]
    g_ht = gram[:head, head:]
    g_tt = gram[head:, head:]
    tail_values = np.einsum("ij,jk,ik->i", tail, g_tt, tail)

    for prefix in itertools.product(range(bound + 1), repeat=head):
        p = np.array(prefix, dtype=np.int64)
        doubled = int(p @ g_hh @ p) + 2 * (tail @ (g_ht.T @ p)) + tail_values
        negative = np.flatnonzero(doubled < 0)
        if negative.size:
            return tuple(int(x) for x in prefix) + tuple(int(x) for x in tail[negative[0]])
    return None
