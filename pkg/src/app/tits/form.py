from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Sequence, Tuple

import numpy as np

from src.app.errors import InvalidInputError
from src.app.quiver.algebra import BoundQuiverAlgebra


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TitsForm:
    """Unit quadratic form ``q(v) = v G vᵀ`` with ``G`` stored doubled as integers.

    ``gram2[i][j]`` is ``2`` on the diagonal and ``r(i,j) + r(j,i) - #arrows``
    between ``i`` and ``j`` otherwise.
    """

    n: int
    gram2: Tuple[Tuple[int, ...], ...]
    relation_counts: Tuple[Tuple[int, ...], ...]
    arrow_counts: Tuple[Tuple[int, ...], ...]
    minimality_verified: bool = True

    def matrix(self) -> np.ndarray:
        return np.array(self.gram2, dtype=np.int64).reshape(self.n, self.n)

    def __str__(self) -> str:
        return gram_matrix_text(self)


def tits_form(algebra: BoundQuiverAlgebra) -> TitsForm:
    n = algebra.n
    rel = np.zeros((n, n), dtype=np.int64)
    arr = np.zeros((n, n), dtype=np.int64)
    for a in algebra.quiver.arrows:
        arr[a.source - 1, a.target - 1] += 1
    for r in algebra.relations:
        rel[r.source - 1, r.target - 1] += 1

    gram2 = rel + rel.T - arr - arr.T
    np.fill_diagonal(gram2, 2)
    if not algebra.relations.minimality_trusted:
        logger.warning("relation set is not known to be minimal; r(i,j) counts are unverified")
    return TitsForm(
        n=n,
        gram2=_freeze(gram2),
        relation_counts=_freeze(rel),
        arrow_counts=_freeze(arr),
        minimality_verified=algebra.relations.minimality_trusted,
    )


def _freeze(m: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


def evaluate(q: TitsForm, v: Sequence[int]) -> int:
    if len(v) != q.n:
        raise InvalidInputError(f"vector has {len(v)} entries, form has {q.n} variables")
    vec = np.asarray(v, dtype=np.int64)
    return int(vec @ q.matrix() @ vec) // 2


def evaluate_by_formula(q: TitsForm, v: Sequence[int]) -> int:
    """``sum v_i^2 - sum_arrows v_i v_j + sum r(i,j) v_i v_j``, term by term."""
    if len(v) != q.n:
        raise InvalidInputError(f"vector has {len(v)} entries, form has {q.n} variables")
    total = sum(x * x for x in v)
    for i in range(q.n):
        for j in range(q.n):
            total -= q.arrow_counts[i][j] * v[i] * v[j]
            total += q.relation_counts[i][j] * v[i] * v[j]
    return total


def gram_matrix_text(q: TitsForm) -> str:
    """Doubled Gram matrix, right-aligned columns, one row per line."""
    width = max(len(str(x)) for row in q.gram2 for x in row)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in q.gram2)
