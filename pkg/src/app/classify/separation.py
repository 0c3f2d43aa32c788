from __future__ import annotations

from collections import deque
from dataclasses import dataclass
import logging
from typing import Dict, FrozenSet, List, Tuple

from src.app.modules.decompose import decompose
from src.app.modules.presentation import radical_and_top
from src.app.modules.standard import indecomposable_projective
from src.app.quiver.algebra import BoundQuiverAlgebra
from src.app.quiver.quiver import Quiver


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VertexSeparation:
    """What the check saw at one vertex ``i``.

    ``components`` are the connected components of ``Q(i)``; ``placements[k]``
    is the index of the component holding the support of the ``k``-th summand
    of ``rad P_i`` (``-1`` when the support spans several).
    """

    vertex: int
    components: Tuple[Tuple[int, ...], ...]
    summand_dims: Tuple[Tuple[int, ...], ...]
    multiplicities: Tuple[int, ...]
    placements: Tuple[int, ...]

    @property
    def separated(self) -> bool:
        if any(m > 1 for m in self.multiplicities) or -1 in self.placements:
            return False
        return len(set(self.placements)) == len(self.placements)


@dataclass(frozen=True)
class SeparationReport:
    vertices: Tuple[VertexSeparation, ...]

    @property
    def holds(self) -> bool:
        return all(v.separated for v in self.vertices)

    def failures(self) -> List[int]:
        return [v.vertex for v in self.vertices if not v.separated]


def predecessor_free_components(quiver: Quiver, vertex: int) -> List[Tuple[int, ...]]:
    """Components of ``Q(i)``: the quiver without every vertex that has a path to ``i`` (``i`` included)."""
    keep = set(quiver.vertices) - quiver.reaching(vertex)
    neighbours: Dict[int, List[int]] = {v: [] for v in keep}
    for a in quiver.arrows:
        if a.source in keep and a.target in keep:
            neighbours[a.source].append(a.target)
            neighbours[a.target].append(a.source)
    seen: set[int] = set()
    components = []
    for start in sorted(keep):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        components.append(tuple(sorted(comp)))
    return components


def _placement(support: FrozenSet[int], components: List[Tuple[int, ...]]) -> int:
    for k, comp in enumerate(components):
        if support <= set(comp):
            return k
    return -1


def separation_property(algebra: BoundQuiverAlgebra, prime: int | None = None) -> SeparationReport:
    """At each vertex ``i``, the summands of ``rad P_i`` must be pairwise
    non-isomorphic with supports in distinct components of ``Q(i)``.
    """
    records = []
    for i in algebra.vertices:
        components = predecessor_free_components(algebra.quiver, i)
        rad, _ = radical_and_top(indecomposable_projective(algebra, i, prime))
        factors = decompose(rad)
        records.append(VertexSeparation(
            vertex=i,
            components=tuple(components),
            summand_dims=tuple(m.dims for m, _ in factors),
            multiplicities=tuple(k for _, k in factors),
            placements=tuple(_placement(m.support, components) for m, _ in factors),
        ))
    report = SeparationReport(tuple(records))
    if not report.holds:
        logger.info("separation fails at vertices %s", report.failures())
    return report
