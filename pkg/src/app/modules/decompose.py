from __future__ import annotations

import itertools
import logging
from typing import Dict, List, Sequence, Tuple

import galois
import numpy as np

from src.app.config.settings import get_settings
from src.app.errors import DecompositionUncertifiedError
from src.app.modules.field import PrimeField
from src.app.modules.homs import combine, hom_basis
from src.app.modules.representation import Representation, subrepresentation


logger = logging.getLogger(__name__)

# Below this many candidate combinations the isomorphism search is exhaustive.
EXHAUSTIVE_LIMIT = 4096

Endomorphism = Dict[int, galois.FieldArray]


def decompose(module: Representation, retry_budget: int | None = None) -> List[Tuple[Representation, int]]:
    """Split ``module`` into indecomposables, grouped up to isomorphism.

    Each factor is certified by a local endomorphism algebra (its non-unit part
    is a nilpotent ideal of codimension 1). Splitting uses Fitting's lemma on
    endomorphisms: basis elements first, then seeded random combinations.

    Raises:
        DecompositionUncertifiedError: a factor is neither certified local nor
            split within the retry budget.
    """
    if module.is_zero:
        return []
    budget = get_settings().retry_budget if retry_budget is None else retry_budget
    pieces = _split(module, budget)

    grouped: List[List] = []
    for piece in pieces:
        for entry in grouped:
            if is_isomorphic(entry[0], piece, budget):
                entry[1] += 1
                break
        else:
            grouped.append([piece, 1])
    logger.debug("decomposed %s into %s", module.dims, [(p.dims, k) for p, k in grouped])
    return [(p, k) for p, k in grouped]


def is_indecomposable(module: Representation, retry_budget: int | None = None) -> bool:
    if module.is_zero:
        return False
    factors = decompose(module, retry_budget)
    return len(factors) == 1 and factors[0][1] == 1


def _split(module: Representation, budget: int) -> List[Representation]:
    field = module.field
    ends = [f.components for f in hom_basis(module, module)]
    if len(ends) <= 1 or _is_local(module, ends):
        return [module]

    for phi in _candidates(module, ends, budget):
        parts = _fitting_split(module, phi)
        if parts is not None:
            kernel, image = parts
            return _split(kernel, budget) + _split(image, budget)
    raise DecompositionUncertifiedError(
        f"decomposition uncertified: module {module.dims} with {len(ends)}-dimensional "
        f"endomorphism algebra over GF({field.prime}) neither local nor split"
    )


def _candidates(module: Representation, ends: Sequence[Endomorphism], budget: int):
    field = module.field
    yield from ends
    rng = np.random.default_rng(module.seed)
    for _ in range(budget):
        coeffs = field.random((len(ends),), rng)
        yield _combine(field, ends, [int(c) for c in coeffs])


def _combine(field: PrimeField, ends: Sequence[Endomorphism], coeffs: Sequence[int]) -> Endomorphism:
    out = {}
    for v in ends[0]:
        total = field.zeros(*ends[0][v].shape)
        for c, e in zip(coeffs, ends):
            if c:
                total = total + field.GF(c) * e[v]
        out[v] = total
    return out


def _fitting_split(module: Representation, phi: Endomorphism):
    """``M = ker (phi - t)^D + im (phi - t)^D`` for an eigenvalue ``t`` giving two nonzero parts."""
    field = module.field
    power = module.total_dim
    eigen = sorted({t for v, m in phi.items() for t in field.eigenvalues(m)})
    for t in eigen:
        shifted = {
            v: field.power(m - field.GF(t) * field.identity(m.shape[0]), power) if m.shape[0] else m
            for v, m in phi.items()
        }
        kernel = {v: field.kernel_basis(m) if m.shape[0] else m for v, m in shifted.items()}
        image = {v: field.column_space_basis(m) for v, m in shifted.items()}
        k_dim = sum(b.shape[1] for b in kernel.values())
        if 0 < k_dim < module.total_dim:
            left, _ = subrepresentation(module, kernel)
            right, _ = subrepresentation(module, image)
            return left, right
    return None


def _flatten(field: PrimeField, e: Endomorphism) -> galois.FieldArray:
    parts = [m.view(np.ndarray).reshape(-1) for m in e.values() if m.size]
    if not parts:
        return field.zeros(1, 0)
    return field.GF(np.concatenate(parts)).reshape(1, -1)


def _product(field: PrimeField, a: Endomorphism, b: Endomorphism) -> Endomorphism:
    return {v: field.matmul(a[v], b[v]) for v in a}


def _span_rank(field: PrimeField, rows: Sequence[galois.FieldArray], width: int) -> int:
    return field.rank(field.vstack(list(rows), width))


def _is_local(module: Representation, ends: Sequence[Endomorphism]) -> bool:
    """Whether ``End(M)`` is ``K * 1 + N`` with ``N`` a nilpotent ideal.

    The candidate ``N`` is spanned by ``b - s(b) 1`` over the basis, where
    ``s(b)`` is ``tr b / d``. When ``p`` divides ``d`` the trace says nothing:
    small endomorphism algebras are then checked element by element, larger
    ones take ``s(b)`` as the single eigenvalue of ``b``.
    """
    field = module.field
    d = module.total_dim
    divisible = d % field.prime == 0
    if divisible and field.prime ** len(ends) <= EXHAUSTIVE_LIMIT:
        return _is_local_exhaustive(module, ends)
    inv_d = None if divisible else pow(d, -1, field.prime)
    radical: List[Endomorphism] = []
    for e in ends:
        scale = _unit_part(field, e, inv_d)
        if scale is None:
            return False
        radical.append({
            v: m - field.GF(scale) * field.identity(m.shape[0]) if m.shape[0] else m
            for v, m in e.items()
        })

    width = _flatten(field, ends[0]).shape[1]
    rows = [_flatten(field, e) for e in radical]
    if _span_rank(field, rows, width) != len(ends) - 1:
        return False

    basis = _row_basis(field, rows, width)
    elements = [_unflatten(field, ends[0], r) for r in basis]
    products = [_flatten(field, _product(field, a, b)) for a in elements for b in elements]
    if _span_rank(field, rows + products, width) != len(ends) - 1:
        return False

    # N^k must reach zero
    layer = elements
    for _ in range(d + 1):
        if not layer:
            return True
        nxt = [_flatten(field, _product(field, a, b)) for a in layer for b in elements]
        nxt_basis = _row_basis(field, nxt, width)
        if len(nxt_basis) >= len(layer):
            return False
        layer = [_unflatten(field, ends[0], r) for r in nxt_basis]
    return not layer


def _unit_part(field: PrimeField, e: Endomorphism, inv_d: int | None) -> int | None:
    """Scalar ``s`` with ``e - s 1`` nilpotent if ``e`` lies in a local algebra; ``None`` when no such ``s`` exists."""
    if inv_d is not None:
        trace = sum(int(np.trace(m.view(np.ndarray).astype(np.int64))) for m in e.values() if m.size)
        return trace % field.prime * inv_d % field.prime
    eigen = {t for m in e.values() if m.size for t in field.eigenvalues(m)}
    return eigen.pop() if len(eigen) == 1 else None


def _is_local_exhaustive(module: Representation, ends: Sequence[Endomorphism]) -> bool:
    """Every endomorphism is invertible or nilpotent."""
    field = module.field
    d = module.total_dim
    for coeffs in itertools.product(range(field.prime), repeat=len(ends)):
        if not any(coeffs):
            continue
        e = _combine(field, ends, coeffs)
        if all(field.is_invertible(m) for m in e.values() if m.size):
            continue
        if not all(field.is_zero(field.power(m, d)) for m in e.values() if m.size):
            return False
    return True


def _row_basis(field: PrimeField, rows: Sequence[galois.FieldArray], width: int) -> List[galois.FieldArray]:
    stacked = field.vstack(list(rows), width)
    if stacked.shape[0] == 0:
        return []
    cols = field.column_space_basis(stacked.T)
    return [cols[:, k].reshape(1, -1) for k in range(cols.shape[1])]


def _unflatten(field: PrimeField, like: Endomorphism, row: galois.FieldArray) -> Endomorphism:
    flat = row.view(np.ndarray).reshape(-1)
    out = {}
    start = 0
    for v, m in like.items():
        size = m.size
        out[v] = field.GF(flat[start:start + size].reshape(m.shape))
        start += size
    return out


def is_isomorphic(m: Representation, n: Representation, retry_budget: int | None = None) -> bool:
    """Search ``Hom(M, N)`` for a map that is invertible at every vertex.

    Tries the basis, then every combination when the space is small, otherwise
    seeded random combinations.
    """
    if m.dims != n.dims:
        return False
    if m.is_zero:
        return True
    field = m.field
    budget = get_settings().retry_budget if retry_budget is None else retry_budget
    maps = hom_basis(m, n)
    if not maps:
        return False
    for f in maps:
        if f.is_isomorphism():
            return True
    k = len(maps)
    if field.prime ** k <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(field.prime), repeat=k):
            if any(coeffs) and combine(field, maps, coeffs).is_isomorphism():
                return True
        return False
    rng = np.random.default_rng(m.seed ^ n.seed)
    for _ in range(budget):
        coeffs = [int(c) for c in field.random((k,), rng)]
        if combine(field, maps, coeffs).is_isomorphism():
            return True
    return False

