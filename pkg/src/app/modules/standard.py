from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Tuple

import galois

from src.app.config.settings import get_settings
from src.app.errors import InvalidInputError
from src.app.modules.field import PrimeField, prime_field
from src.app.modules.representation import Representation
from src.app.quiver.algebra import BoundQuiverAlgebra, LinearCombination
from src.app.quiver.quiver import Path


def _check_vertex(algebra: BoundQuiverAlgebra, i: int) -> None:
    if i not in algebra.vertices:
        raise InvalidInputError(f"vertex {i} is not in the quiver (1..{algebra.n})")


def _coordinates(field: PrimeField, combo: LinearCombination, basis: Tuple[Path, ...]) -> list:
    index = {p: k for k, p in enumerate(basis)}
    column = [0] * len(basis)
    for path, coeff in combo.items():
        column[index[path]] = field.scalar(coeff)
    return column


def _prime(prime: int | None) -> int:
    return get_settings().field_prime if prime is None else prime


def indecomposable_projective(algebra: BoundQuiverAlgebra, i: int, prime: int | None = None) -> Representation:
    """``P_i = e_i A``: at ``j`` the basis paths ``i -> j``; arrows act by right multiplication."""
    _check_vertex(algebra, i)
    return _projective(algebra, i, _prime(prime))


@lru_cache(maxsize=4096)
def _projective(algebra: BoundQuiverAlgebra, i: int, prime: int) -> Representation:
    field = prime_field(prime)
    dims = [algebra.dim_between(i, j) for j in algebra.vertices]
    maps: Dict[str, galois.FieldArray] = {}
    for arrow in algebra.quiver.arrows:
        source_basis = algebra.basis(i, arrow.source)
        target_basis = algebra.basis(i, arrow.target)
        step = Path(arrow.source, arrow.target, (arrow.id,))
        columns = [
            _coordinates(field, algebra.normal_form(x + step), target_basis)
            for x in source_basis
        ]
        maps[arrow.id] = _from_columns(field, columns, len(target_basis))
    return Representation(algebra, prime, dims, maps)


def indecomposable_injective(algebra: BoundQuiverAlgebra, i: int, prime: int | None = None) -> Representation:
    """``I_i = D(A e_i)``: at ``j`` the dual of the paths ``j -> i``."""
    _check_vertex(algebra, i)
    return _injective(algebra, i, _prime(prime))


@lru_cache(maxsize=4096)
def _injective(algebra: BoundQuiverAlgebra, i: int, prime: int) -> Representation:
    field = prime_field(prime)
    dims = [algebra.dim_between(j, i) for j in algebra.vertices]
    maps: Dict[str, galois.FieldArray] = {}
    for arrow in algebra.quiver.arrows:
        # dual of e_t A e_i -> e_s A e_i, y -> arrow * y
        near = algebra.basis(arrow.source, i)
        far = algebra.basis(arrow.target, i)
        step = Path(arrow.source, arrow.target, (arrow.id,))
        columns = [_coordinates(field, algebra.normal_form(step + y), near) for y in far]
        left = _from_columns(field, columns, len(near))
        maps[arrow.id] = left.T if left.size else field.zeros(len(far), len(near))
    return Representation(algebra, prime, dims, maps)


def simple_module(algebra: BoundQuiverAlgebra, i: int, prime: int | None = None) -> Representation:
    _check_vertex(algebra, i)
    dims = [1 if v == i else 0 for v in algebra.vertices]
    return Representation(algebra, _prime(prime), dims, {})


def thin_module(algebra: BoundQuiverAlgebra, support: Iterable[int], prime: int | None = None) -> Representation:
    """One-dimensional at each vertex of ``support``; arrows inside the support act as 1."""
    keep = set(support)
    for v in keep:
        _check_vertex(algebra, v)
    field = prime_field(_prime(prime))
    dims = [1 if v in keep else 0 for v in algebra.vertices]
    maps = {
        a.id: field.matrix([[1]])
        for a in algebra.quiver.arrows
        if a.source in keep and a.target in keep
    }
    return Representation(algebra, field.prime, dims, maps)


def interval_module(algebra: BoundQuiverAlgebra, a: int, b: int, prime: int | None = None) -> Representation:
    """The thin module on the vertices ``a..b`` of a linear quiver."""
    if a > b:
        raise InvalidInputError(f"empty interval [{a}, {b}]")
    return thin_module(algebra, range(a, b + 1), prime)


def _from_columns(field: PrimeField, columns: list, rows: int) -> galois.FieldArray:
    if not columns or rows == 0:
        return field.zeros(rows, len(columns))
    return field.matrix(columns).T
