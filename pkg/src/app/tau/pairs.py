from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import FrozenSet, Iterable, Tuple

from src.app.errors import CertificationError
from src.app.modules.presentation import GVector, complement_g_vector
from src.app.modules.representation import Representation
from src.app.tau.catalog import ModuleCatalog


PairKey = Tuple[GVector, ...]


@dataclass(frozen=True)
class SupportTauTiltingPair:
    """``(M, P)`` with ``M`` basic, recorded by the g-vectors of its summands.

    ``summands`` is sorted; ``complement`` lists the vertices of ``P``. The
    modules themselves live in the ``catalog`` that produced the pair.
    """

    n: int
    summands: Tuple[GVector, ...]
    complement: FrozenSet[int]
    support: FrozenSet[int]
    catalog: ModuleCatalog = field(compare=False, repr=False, hash=False)

    @property
    def key(self) -> PairKey:
        """Sorted g-vectors of the summands and of the complement projectives (as ``-e_i``)."""
        gs = list(self.summands) + [complement_g_vector(self.n, v) for v in self.complement]
        return tuple(sorted(gs))

    @property
    def support_rank(self) -> int:
        return len(self.support)

    def module(self, index: int) -> Representation:
        return self.catalog.module(self.summands[index])

    def modules(self) -> Tuple[Representation, ...]:
        return tuple(self.catalog.module(g) for g in self.summands)

    def dims(self) -> Tuple[Tuple[int, ...], ...]:
        """Dimension vectors of the summands of ``M`` in key order."""
        return tuple(m.dims for m in self.modules())

    def rest(self, index: int) -> Tuple[GVector, ...]:
        return self.summands[:index] + self.summands[index + 1:]


def make_pair(
    catalog: ModuleCatalog,
    summands: Iterable[GVector],
    complement: Iterable[int],
) -> SupportTauTiltingPair:
    gs = tuple(sorted(set(summands)))
    support: FrozenSet[int] = frozenset()
    for g in gs:
        support |= catalog.module(g).support
    return SupportTauTiltingPair(catalog.algebra.n, gs, frozenset(complement), support, catalog)


def validate_pair(pair: SupportTauTiltingPair) -> None:
    """Check the counting, support and rigidity conditions of a support tau-tilting pair.

    Raises:
        CertificationError: any condition fails.
    """
    if len(pair.summands) + len(pair.complement) != pair.n:
        raise CertificationError(
            f"pair {pair.key} has {len(pair.summands)} summands and "
            f"{len(pair.complement)} complement vertices for {pair.n} vertices"
        )
    if pair.support & pair.complement:
        raise CertificationError(f"pair {pair.key}: complement meets the support")
    if pair.support_rank != len(pair.summands):
        raise CertificationError(
            f"pair {pair.key}: support-rank {pair.support_rank} differs from {len(pair.summands)} summands"
        )
    for a, b in combinations_with_replacement(pair.summands, 2):
        if not pair.catalog.rigid(a, b):
            raise CertificationError(f"pair {pair.key}: summands {a} and {b} are not tau-rigid together")
