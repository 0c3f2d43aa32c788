from __future__ import annotations

from fractions import Fraction
import logging
from typing import Dict, Iterable, List, Sequence

from src.app.errors import InvalidInputError, NonConvexError
from src.app.quiver.algebra import BoundQuiverAlgebra, build_algebra
from src.app.quiver.quiver import Arrow, Path, Quiver, Relation, RelationIdeal


logger = logging.getLogger(__name__)


def find_nonconvex_path(algebra: BoundQuiverAlgebra, vertices: Iterable[int]) -> Path | None:
    """A path between two vertices of the set that visits a vertex outside it, if any."""
    quiver = algebra.quiver
    keep = set(vertices)
    outside = set(quiver.vertices) - keep
    for s in sorted(keep):
        forward = quiver.reachable_from(s)
        leaving = forward & outside
        if not leaving:
            continue
        for t in sorted(keep & forward):
            through = [v for v in sorted(leaving) if t in quiver.reachable_from(v)]
            if through:
                return quiver.find_path(s, t, through=through)
    return None


def is_convex(algebra: BoundQuiverAlgebra, vertices: Iterable[int]) -> bool:
    return find_nonconvex_path(algebra, vertices) is None


def convex_restriction(algebra: BoundQuiverAlgebra, vertices: Iterable[int]) -> BoundQuiverAlgebra:
    """The full convex subcategory on ``vertices``, renumbered densely in increasing order."""
    keep = sorted(set(vertices))
    if not keep:
        raise InvalidInputError("convex restriction needs a nonempty vertex set")
    unknown = [v for v in keep if v not in algebra.vertices]
    if unknown:
        raise InvalidInputError(f"vertices {unknown} are not in the quiver")
    witness = find_nonconvex_path(algebra, keep)
    if witness is not None:
        raise NonConvexError(witness.arrows, algebra.quiver.path_vertices(witness))
    return _restrict(algebra, keep, partial_relations=False, require_connected=False)


def vertex_quotient(algebra: BoundQuiverAlgebra, vertex: int) -> List[BoundQuiverAlgebra]:
    """``A / A e_i A`` split into connected components (ordered by least original vertex)."""
    if vertex not in algebra.vertices:
        raise InvalidInputError(f"vertex {vertex} is not in the quiver")
    keep = [v for v in algebra.vertices if v != vertex]
    if not keep:
        return []
    whole = _restrict(algebra, keep, partial_relations=True, require_connected=False)
    components = whole.quiver.components()
    if len(components) == 1:
        return [whole]
    return [
        _restrict(whole, comp, partial_relations=False, require_connected=True)
        for comp in components
    ]


def restrict_disconnected(algebra: BoundQuiverAlgebra, vertex: int) -> BoundQuiverAlgebra:
    """``A / A e_i A`` as a single, possibly disconnected algebra."""
    keep = [v for v in algebra.vertices if v != vertex]
    return _restrict(algebra, keep, partial_relations=True, require_connected=False)


def _restrict(
    algebra: BoundQuiverAlgebra,
    keep: Sequence[int],
    partial_relations: bool,
    require_connected: bool,
) -> BoundQuiverAlgebra:
    quiver = algebra.quiver
    renumber: Dict[int, int] = {old: new for new, old in enumerate(keep, 1)}
    arrows = tuple(
        Arrow(a.id, renumber[a.source], renumber[a.target])
        for a in quiver.arrows
        if a.source in renumber and a.target in renumber
    )
    labels = tuple(quiver.label(v) for v in keep) if quiver.labels else ()
    restricted = Quiver(len(keep), arrows, labels)

    gens: List[Relation] = []
    for rel in algebra.relations:
        surviving = [
            (c, p) for c, p in rel.terms
            if all(v in renumber for v in quiver.path_vertices(p))
        ]
        if not surviving:
            continue
        if len(surviving) < len(rel.terms) and not partial_relations:
            continue
        if len(surviving) == 1:
            surviving = [(Fraction(1), surviving[0][1])]
        moved = Relation(tuple(
            (c, Path(renumber[p.source], renumber[p.target], p.arrows)) for c, p in surviving
        ))
        if moved not in gens:
            gens.append(moved)

    ideal = RelationIdeal(tuple(gens), algebra.relations.minimality_trusted)
    logger.debug("restricting to %d of %d vertices", len(keep), algebra.n)
    return build_algebra(restricted, ideal, require_connected=require_connected)
