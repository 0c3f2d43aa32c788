from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import galois
import numpy as np

from src.app.errors import InvalidInputError
from src.app.modules.field import PrimeField
from src.app.modules.representation import ModuleMap, Representation


def _same_algebra(m: Representation, n: Representation) -> None:
    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise InvalidInputError("modules live over different algebras")
    if m.prime != n.prime:
        raise InvalidInputError(f"modules live over different fields ({m.prime}, {n.prime})")


def _offsets(m: Representation, n: Representation) -> Tuple[Dict[int, int], int]:
    offsets: Dict[int, int] = {}
    total = 0
    for v in m.algebra.vertices:
        offsets[v] = total
        total += n.dim_at(v) * m.dim_at(v)
    return offsets, total


def _intertwining_system(m: Representation, n: Representation) -> Tuple[galois.FieldArray, Dict[int, int], int]:
    """Rows ``N_a f_s - f_t M_a = 0`` for every arrow, unknowns ``f_v`` flattened row-major."""
    field = m.field
    p = field.prime
    offsets, unknowns = _offsets(m, n)
    blocks: List[np.ndarray] = []
    for arrow in m.algebra.quiver.arrows:
        s, t = arrow.source, arrow.target
        rows = n.dim_at(t) * m.dim_at(s)
        if rows == 0:
            continue
        block = np.zeros((rows, unknowns), dtype=np.int64)
        n_a = n.arrow_map(arrow.id).view(np.ndarray).astype(np.int64)
        m_a = m.arrow_map(arrow.id).view(np.ndarray).astype(np.int64)
        width_s = n.dim_at(s) * m.dim_at(s)
        width_t = n.dim_at(t) * m.dim_at(t)
        if width_s:
            block[:, offsets[s]:offsets[s] + width_s] += np.kron(n_a, np.eye(m.dim_at(s), dtype=np.int64))
        if width_t:
            block[:, offsets[t]:offsets[t] + width_t] -= np.kron(np.eye(n.dim_at(t), dtype=np.int64), m_a.T)
        blocks.append(np.mod(block, p))
    if not blocks:
        return field.zeros(0, unknowns), offsets, unknowns
    return field.GF(np.vstack(blocks)), offsets, unknowns


def hom_basis(m: Representation, n: Representation) -> List[ModuleMap]:
    """A basis of ``Hom(M, N)``, read off the null space of the intertwining system."""
    _same_algebra(m, n)
    field = m.field
    system, offsets, unknowns = _intertwining_system(m, n)
    if unknowns == 0:
        return []
    kernel = field.kernel_basis(system)
    maps = []
    for c in range(kernel.shape[1]):
        column = kernel[:, c]
        components = {}
        for v in m.algebra.vertices:
            rows, cols = n.dim_at(v), m.dim_at(v)
            start = offsets[v]
            components[v] = field.GF(column[start:start + rows * cols].view(np.ndarray).reshape(rows, cols))
        maps.append(ModuleMap(m, n, components))
    return maps


def hom_dim(m: Representation, n: Representation) -> int:
    _same_algebra(m, n)
    system, _, unknowns = _intertwining_system(m, n)
    return unknowns - m.field.rank(system)


def combine(field: PrimeField, maps: Sequence[ModuleMap], coefficients: Sequence[int]) -> ModuleMap:
    """``sum c_i f_i`` for maps sharing source and target."""
    first = maps[0]
    components = {}
    for v in first.components:
        total = field.zeros(*first[v].shape)
        for c, f in zip(coefficients, maps):
            if c:
                total = total + field.GF(int(c) % field.prime) * f[v]
        components[v] = total
    return ModuleMap(first.source, first.target, components)


def trace_dims(m: Representation, n: Representation) -> Tuple[int, ...]:
    """Dimension vector of the trace of ``N`` in ``M`` (sum of images of all maps ``N -> M``)."""
    field = m.field
    maps = hom_basis(n, m)
    dims = []
    for v in m.algebra.vertices:
        if not maps or m.dim_at(v) == 0:
            dims.append(0)
            continue
        dims.append(field.rank(field.hstack([f[v] for f in maps], m.dim_at(v))))
    return tuple(dims)


def fac_membership(m: Representation, n: Representation) -> bool:
    """Whether ``M`` is a quotient of a direct sum of copies of ``N``."""
    _same_algebra(m, n)
    if m.is_zero:
        return True
    return trace_dims(m, n) == m.dims
