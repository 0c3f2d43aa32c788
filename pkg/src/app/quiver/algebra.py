from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
import logging
from typing import Dict, List, Mapping, Tuple

import sympy

from src.app.errors import InvalidRelationError
from src.app.quiver.quiver import Path, Quiver, Relation, RelationIdeal, trivial_path


logger = logging.getLogger(__name__)

LinearCombination = Dict[Path, Fraction]


class BoundQuiverAlgebra:
    """``KQ/I`` for a triangular quiver with a homogeneous admissible ideal.

    ``basis[(i, j)]`` lists the normal-form paths spanning ``e_i A e_j`` and
    ``normal_form(p)`` rewrites any path into them. Instances are immutable.
    """

    def __init__(
        self,
        quiver: Quiver,
        relations: RelationIdeal,
        basis: Mapping[Tuple[int, int], Tuple[Path, ...]],
        normal_forms: Mapping[Path, LinearCombination],
    ) -> None:
        self._quiver = quiver
        self._relations = relations
        self._basis = dict(basis)
        self._normal_forms = dict(normal_forms)

    @property
    def quiver(self) -> Quiver:
        return self._quiver

    @property
    def relations(self) -> RelationIdeal:
        return self._relations

    @property
    def n(self) -> int:
        return self._quiver.n

    @property
    def vertices(self) -> range:
        return self._quiver.vertices

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self._basis.values())

    def basis(self, i: int, j: int) -> Tuple[Path, ...]:
        """Basis paths of ``e_i A e_j`` (paths from ``i`` to ``j``)."""
        return self._basis.get((i, j), ())

    def dim_between(self, i: int, j: int) -> int:
        return len(self.basis(i, j))

    def normal_form(self, path: Path) -> LinearCombination:
        try:
            return self._normal_forms[path]
        except KeyError:
            raise InvalidRelationError(f"{path} is not a path of the quiver") from None

    def multiply(self, p: Path, q: Path) -> LinearCombination:
        if p.target != q.source:
            return {}
        return self.normal_form(p + q)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoundQuiverAlgebra):
            return NotImplemented
        return (
            self._quiver == other._quiver
            and self._relations.generators == other._relations.generators
        )

    def __hash__(self) -> int:
        return hash((self._quiver, self._relations.generators))

    def __repr__(self) -> str:
        return (
            f"BoundQuiverAlgebra(vertices={self.n}, arrows={len(self._quiver.arrows)}, "
            f"relations={len(self._relations)}, dimension={self.dimension})"
        )


def check_relations(quiver: Quiver, relations: RelationIdeal) -> None:
    for rel in relations:
        if not rel.terms:
            raise InvalidRelationError("empty relation")
        seen = set()
        for coeff, path in rel.terms:
            if coeff == 0:
                raise InvalidRelationError(f"zero coefficient in relation {rel}")
            if path.length < 2:
                raise InvalidRelationError(f"relation path {path} has length < 2")
            built = quiver.path(path.arrows)
            if (built.source, built.target) != (path.source, path.target):
                raise InvalidRelationError(f"path {path} has wrong endpoints")
            if (path.source, path.target) != (rel.source, rel.target):
                raise InvalidRelationError(f"relation {rel} is not parallel")
            if path.length != rel.degree:
                raise InvalidRelationError(f"relation {rel} is not length-homogeneous")
            if path in seen:
                raise InvalidRelationError(f"path {path} repeated in relation {rel}")
            seen.add(path)


def build_algebra(
    quiver: Quiver,
    relations: RelationIdeal | None = None,
    *,
    require_connected: bool = True,
) -> BoundQuiverAlgebra:
    """Compute the path basis of ``KQ/I`` degree by degree.

    Args:
        quiver: a loop-free acyclic quiver.
        relations: generators of the ideal; every generator must be parallel and
            length-homogeneous with paths of length at least 2.
        require_connected: reject disconnected quivers (vertex quotients opt out).

    Returns:
        The algebra with normal forms for every path of ``quiver``.
    """
    relations = relations if relations is not None else RelationIdeal()
    quiver.validate(require_connected=require_connected)
    check_relations(quiver, relations)

    slices: Dict[Tuple[int, int, int], List[Path]] = defaultdict(list)
    for v in quiver.vertices:
        for p in quiver.paths_from(v):
            slices[(p.source, p.target, p.length)].append(p)
    for paths in slices.values():
        paths.sort()

    by_endpoints: Dict[Tuple[int, int, int], List[Relation]] = defaultdict(list)
    for rel in relations:
        by_endpoints[(rel.source, rel.target, rel.degree)].append(rel)

    basis: Dict[Tuple[int, int], List[Path]] = defaultdict(list)
    normal_forms: Dict[Path, LinearCombination] = {}

    for (i, j, d), paths in sorted(slices.items()):
        index = {p: k for k, p in enumerate(paths)}
        rows = _ideal_rows(slices, by_endpoints, i, j, d, index)
        pivots: Tuple[int, ...] = ()
        reduced = None
        if rows:
            reduced, pivots = sympy.Matrix(rows).rref()
        pivot_set = set(pivots)
        for k, p in enumerate(paths):
            if k not in pivot_set:
                basis[(i, j)].append(p)
                normal_forms[p] = {p: Fraction(1)}
        for r, c in enumerate(pivots):
            combo: LinearCombination = {}
            for k in range(len(paths)):
                if k in pivot_set:
                    continue
                entry = reduced[r, k]
                if entry != 0:
                    combo[paths[k]] = -Fraction(int(entry.p), int(entry.q))
            normal_forms[paths[c]] = combo

    for v in quiver.vertices:
        assert trivial_path(v) in normal_forms

    algebra = BoundQuiverAlgebra(
        quiver,
        relations,
        {key: tuple(sorted(paths, key=lambda p: (p.length, p))) for key, paths in basis.items()},
        normal_forms,
    )
    logger.debug("built %r", algebra)
    return algebra


def _ideal_rows(
    slices: Mapping[Tuple[int, int, int], List[Path]],
    by_endpoints: Mapping[Tuple[int, int, int], List[Relation]],
    i: int,
    j: int,
    d: int,
    index: Mapping[Path, int],
) -> List[List[sympy.Rational]]:
    """Coefficient rows of ``u * rho * w`` for every generator ``rho`` landing in slice (i, j, d)."""
    rows: List[List[sympy.Rational]] = []
    for (s, t, e), rels in by_endpoints.items():
        if e > d:
            continue
        for a in range(d - e + 1):
            heads = slices.get((i, s, a), [])
            tails = slices.get((t, j, d - e - a), [])
            for u in heads:
                for w in tails:
                    for rel in rels:
                        row = [sympy.Integer(0)] * len(index)
                        for coeff, p in rel.terms:
                            row[index[u + p + w]] += sympy.Rational(coeff.numerator, coeff.denominator)
                        rows.append(row)
    return rows
