from __future__ import annotations

import logging
from typing import Callable, Dict, List, Sequence, Tuple

from src.app.errors import InvalidInputError
from src.app.quiver.algebra import BoundQuiverAlgebra, build_algebra
from src.app.quiver.partitions import Box, Partition, ShiftedPartition, transpose_partition
from src.app.quiver.quiver import Arrow, Path, Quiver, Relation, RelationIdeal, relation


logger = logging.getLogger(__name__)


def _box_algebra(boxes: Sequence[Box], extra_zero: Sequence[Tuple[Box, Box, Box]] = ()) -> BoundQuiverAlgebra:
    """Grid-shaped algebra on ``boxes``: arrows right and down, commutative unit squares.

    Vertices are numbered in row-major order; arrows from ``(i,j)`` are named
    ``a{i}_{j}`` (right) and ``b{i}_{j}`` (down). ``extra_zero`` adds monomial
    relations along the given box triples.
    """
    index = {box: k for k, box in enumerate(boxes, 1)}
    arrows: List[Arrow] = []
    for (i, j) in boxes:
        if (i, j + 1) in index:
            arrows.append(Arrow(f"a{i}_{j}", index[(i, j)], index[(i, j + 1)]))
        if (i + 1, j) in index:
            arrows.append(Arrow(f"b{i}_{j}", index[(i, j)], index[(i + 1, j)]))
    quiver = Quiver(len(boxes), tuple(arrows), tuple(f"({i},{j})" for i, j in boxes))

    gens: List[Relation] = []
    for (i, j) in boxes:
        if {(i, j + 1), (i + 1, j), (i + 1, j + 1)} <= index.keys():
            gens.append(relation(
                (1, quiver.path((f"a{i}_{j}", f"b{i}_{j + 1}"))),
                (-1, quiver.path((f"b{i}_{j}", f"a{i + 1}_{j}"))),
            ))
    for first, mid, last in extra_zero:
        gens.append(relation((1, quiver.path((_arrow_between(first, mid), _arrow_between(mid, last))))))
    return build_algebra(quiver, RelationIdeal(tuple(gens)))


def _arrow_between(a: Box, b: Box) -> str:
    if b == (a[0], a[1] + 1):
        return f"a{a[0]}_{a[1]}"
    if b == (a[0] + 1, a[1]):
        return f"b{a[0]}_{a[1]}"
    raise ValueError(f"no arrow between boxes {a} and {b}")


def staircase(lam: Partition) -> BoundQuiverAlgebra:
    return _box_algebra(lam.boxes())


def shifted_staircase(lam: ShiftedPartition) -> BoundQuiverAlgebra:
    return _box_algebra(lam.boxes())


def _linear_arrows(n: int, start: int = 1) -> List[Arrow]:
    return [Arrow(f"a{k}", k, k + 1) for k in range(start, n)]


def linear_a(n: int) -> BoundQuiverAlgebra:
    """Path algebra of ``1 -> 2 -> ... -> n``."""
    return build_algebra(Quiver(n, tuple(_linear_arrows(n))))


def type_d(n: int) -> BoundQuiverAlgebra:
    """Path algebra of ``1 -> 3 <- 2`` followed by ``3 -> 4 -> ... -> n``."""
    arrows = [Arrow("a1", 1, 3), Arrow("a2", 2, 3)] + _linear_arrows(n, start=3)
    return build_algebra(Quiver(n, tuple(arrows)))


def lambda_algebra(n: int) -> BoundQuiverAlgebra:
    """The commutative-square family: ``alpha*mu = beta*nu`` over ``1 -> {2,3} -> 4 -> ... -> n``."""
    if n == 3:
        return build_algebra(Quiver(3, (Arrow("alpha", 1, 2), Arrow("beta", 1, 3))))
    arrows = [
        Arrow("alpha", 1, 2),
        Arrow("beta", 1, 3),
        Arrow("mu", 2, 4),
        Arrow("nu", 3, 4),
    ] + [Arrow(f"gamma{k}", k, k + 1) for k in range(4, n)]
    quiver = Quiver(n, tuple(arrows))
    comm = relation(
        (1, quiver.path(("alpha", "mu"))),
        (-1, quiver.path(("beta", "nu"))),
    )
    return build_algebra(quiver, RelationIdeal((comm,)))


def a1_algebra(n: int) -> BoundQuiverAlgebra:
    """Linear quiver with the first two arrows composing to zero."""
    quiver = Quiver(n, tuple(_linear_arrows(n)))
    if n == 2:
        return build_algebra(quiver)
    zero = relation((1, quiver.path(("a1", "a2"))))
    return build_algebra(quiver, RelationIdeal((zero,)))


def grid(m: int, n: int) -> BoundQuiverAlgebra:
    """Commutative ``n x m`` grid: the staircase of the partition ``(m^n)``."""
    return staircase(Partition((m,) * n))


def triangle(n: int) -> BoundQuiverAlgebra:
    return shifted_staircase(ShiftedPartition(tuple(range(n, 0, -1))))


def auslander_a(m: int) -> BoundQuiverAlgebra:
    """Auslander algebra of the linear ``A_m`` quiver, as the triangle with mesh zero relations."""
    shape = ShiftedPartition(tuple(range(m, 0, -1)))
    zeros = [((i, i), (i, i + 1), (i + 1, i + 1)) for i in range(1, m)]
    return _box_algebra(shape.boxes(), extra_zero=zeros)


_FAMILIES: Dict[str, Tuple[Callable[..., BoundQuiverAlgebra], Tuple[int, ...]]] = {
    "linear_a": (linear_a, (1,)),
    "d": (type_d, (3,)),
    "lambda": (lambda_algebra, (3,)),
    "a1": (a1_algebra, (2,)),
    "grid": (grid, (1, 1)),
    "triangle": (triangle, (1,)),
    "auslander_a": (auslander_a, (1,)),
}

FAMILY_NAMES = tuple(_FAMILIES)


def named_family(family: str, params: Sequence[int]) -> BoundQuiverAlgebra:
    """Build one of the named families, e.g. ``named_family("lambda", (4,))``."""
    key = family.strip().lower()
    try:
        builder, minima = _FAMILIES[key]
    except KeyError:
        raise InvalidInputError(
            f"unknown family {family!r}; expected one of {', '.join(FAMILY_NAMES)}"
        ) from None
    params = tuple(int(p) for p in params)
    if len(params) != len(minima):
        raise InvalidInputError(f"family {key} takes {len(minima)} parameter(s), got {len(params)}")
    for value, lowest in zip(params, minima):
        if value < lowest:
            raise InvalidInputError(f"family {key} needs parameters >= {minima}, got {params}")
    logger.debug("building family %s%s", key, params)
    return builder(*params)


def parse_family(text: str) -> Tuple[str, Tuple[int, ...]]:
    """Split ``"grid:2,4"`` into ``("grid", (2, 4))``."""
    name, _, raw = text.partition(":")
    if not raw:
        raise InvalidInputError(f"family spec {text!r} needs parameters, e.g. lambda:4")
    try:
        params = tuple(int(x) for x in raw.split(","))
    except ValueError:
        raise InvalidInputError(f"bad family parameters in {text!r}") from None
    return name.strip().lower(), params


def transpose_relabelling(lam: Partition) -> Dict[int, int]:
    """Vertex of box ``(i,j)`` in ``staircase(lam)`` mapped to box ``(j,i)`` of the transpose.

    Under this map the right arrow ``a{i}_{j}`` corresponds to the down arrow
    ``b{j}_{i}`` and vice versa.
    """
    transposed = transpose_partition(lam).boxes()
    return {k: transposed.index((j, i)) + 1 for k, (i, j) in enumerate(lam.boxes(), 1)}


def box_vertex(lam: Partition | ShiftedPartition, box: Box) -> int:
    """Vertex number of ``box`` in the (shifted) staircase of ``lam``."""
    return lam.boxes().index(box) + 1


def arrow_path(quiver: Quiver, *vertices: int) -> Path:
    """The path through consecutive ``vertices`` using the unique arrows between them."""
    ids = []
    for a, b in zip(vertices, vertices[1:]):
        found = [arr.id for arr in quiver.outgoing(a) if arr.target == b]
        if len(found) != 1:
            raise InvalidInputError(f"no unique arrow {a} -> {b}")
        ids.append(found[0])
    return quiver.path(ids, source=vertices[0])
