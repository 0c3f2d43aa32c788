from __future__ import annotations

from functools import cached_property
import hashlib
from typing import Dict, FrozenSet, List, Mapping, Sequence, Tuple

import galois
import numpy as np

from src.app.config.settings import get_settings
from src.app.errors import CertificationError, InvalidInputError
from src.app.modules.field import PrimeField, prime_field
from src.app.quiver.algebra import BoundQuiverAlgebra, LinearCombination
from src.app.quiver.quiver import Path


class Representation:
    """A finite-dimensional right module: one space per vertex, one matrix per arrow.

    The matrix of an arrow ``a: s -> t`` has shape ``(dims[t], dims[s])``; a
    path ``a1 ... ak`` acts as ``M_ak @ ... @ M_a1``.
    """

    def __init__(
        self,
        algebra: BoundQuiverAlgebra,
        prime: int,
        dims: Sequence[int],
        maps: Mapping[str, galois.FieldArray],
        check: bool | None = None,
    ) -> None:
        self.algebra = algebra
        self.field: PrimeField = prime_field(prime)
        self.dims: Tuple[int, ...] = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n or any(d < 0 for d in self.dims):
            raise InvalidInputError(f"bad dimension vector {self.dims} for {algebra.n} vertices")
        self._maps: Dict[str, galois.FieldArray] = {}
        for arrow in algebra.quiver.arrows:
            shape = (self.dims[arrow.target - 1], self.dims[arrow.source - 1])
            m = maps.get(arrow.id)
            if m is None:
                m = self.field.zeros(*shape)
            if tuple(m.shape) != shape:
                raise InvalidInputError(f"map of arrow {arrow.id} has shape {m.shape}, expected {shape}")
            self._maps[arrow.id] = m
        if check is None:
            check = get_settings().validate_nodes
        if check:
            self.check_relations()

    @property
    def prime(self) -> int:
        return self.field.prime

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(v for v in self.algebra.vertices if self.dims[v - 1] > 0)

    @property
    def is_sincere(self) -> bool:
        return all(self.dims)

    def dim_at(self, v: int) -> int:
        return self.dims[v - 1]

    def arrow_map(self, arrow_id: str) -> galois.FieldArray:
        return self._maps[arrow_id]

    def path_map(self, path: Path) -> galois.FieldArray:
        result = self.field.identity(self.dim_at(path.source))
        for arrow_id in path.arrows:
            result = self.field.matmul(self._maps[arrow_id], result)
        return result

    def element_map(self, combo: LinearCombination, source: int, target: int) -> galois.FieldArray:
        """Matrix by which ``sum c_p p`` acts from ``source`` to ``target``."""
        total = self.field.zeros(self.dim_at(target), self.dim_at(source))
        for path, coeff in combo.items():
            total = total + self.field.GF(self.field.scalar(coeff)) * self.path_map(path)
        return total

    def check_relations(self) -> None:
        for rel in self.algebra.relations:
            value = self.element_map(dict((p, c) for c, p in rel.terms), rel.source, rel.target)
            if not self.field.is_zero(value):
                raise CertificationError(f"relation {rel} does not vanish on module {self.dims}")

    @cached_property
    def content_hash(self) -> str:
        digest = hashlib.sha256()
        digest.update(f"{self.prime}|{self.dims}".encode())
        for arrow in self.algebra.quiver.arrows:
            m = self._maps[arrow.id]
            digest.update(arrow.id.encode())
            digest.update(np.ascontiguousarray(m.view(np.ndarray), dtype=np.int64).tobytes())
        return digest.hexdigest()

    @property
    def seed(self) -> int:
        return int(self.content_hash[:16], 16)

    def debug_dump(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {
                arrow_id: m.view(np.ndarray).astype(np.int64).tolist()
                for arrow_id, m in self._maps.items()
            },
        }

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


class ModuleMap:
    """Homomorphism given by per-vertex matrices ``components[v]`` of shape ``(N_v, M_v)``."""

    def __init__(
        self,
        source: Representation,
        target: Representation,
        components: Mapping[int, galois.FieldArray],
    ) -> None:
        self.source = source
        self.target = target
        field = source.field
        self.components: Dict[int, galois.FieldArray] = {}
        for v in source.algebra.vertices:
            m = components.get(v)
            if m is None:
                m = field.zeros(target.dim_at(v), source.dim_at(v))
            self.components[v] = m

    @property
    def field(self) -> PrimeField:
        return self.source.field

    def __getitem__(self, v: int) -> galois.FieldArray:
        return self.components[v]

    def is_homomorphism(self) -> bool:
        f = self.field
        for arrow in self.source.algebra.quiver.arrows:
            left = f.matmul(self.target.arrow_map(arrow.id), self.components[arrow.source])
            right = f.matmul(self.components[arrow.target], self.source.arrow_map(arrow.id))
            if not f.is_zero(left - right):
                return False
        return True

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.components.values())

    def is_isomorphism(self) -> bool:
        return all(self.field.is_invertible(m) for m in self.components.values())

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self ∘ other``."""
        return ModuleMap(
            other.source,
            self.target,
            {v: self.field.matmul(self.components[v], other.components[v]) for v in self.components},
        )

    def image_bases(self) -> Dict[int, galois.FieldArray]:
        return {v: self.field.column_space_basis(m) for v, m in self.components.items()}

    def kernel_bases(self) -> Dict[int, galois.FieldArray]:
        return {v: self.field.kernel_basis(m) for v, m in self.components.items()}


def zero_module(algebra: BoundQuiverAlgebra, prime: int) -> Representation:
    return Representation(algebra, prime, [0] * algebra.n, {}, check=False)


def direct_sum(modules: Sequence[Representation], algebra: BoundQuiverAlgebra | None = None,
               prime: int | None = None) -> Representation:
    if not modules:
        if algebra is None or prime is None:
            raise InvalidInputError("empty direct sum needs the algebra and prime")
        return zero_module(algebra, prime)
    first = modules[0]
    field = first.field
    dims = [sum(m.dims[k] for m in modules) for k in range(first.algebra.n)]
    maps = {
        arrow.id: field.block_diag([m.arrow_map(arrow.id) for m in modules])
        for arrow in first.algebra.quiver.arrows
    }
    return Representation(first.algebra, first.prime, dims, maps, check=False)


def subrepresentation(
    module: Representation,
    bases: Mapping[int, galois.FieldArray],
) -> Tuple[Representation, ModuleMap]:
    """Submodule spanned at each vertex by the columns of ``bases[v]`` (independent, invariant)."""
    field = module.field
    full = {v: bases.get(v, field.zeros(module.dim_at(v), 0)) for v in module.algebra.vertices}
    dims = [full[v].shape[1] for v in module.algebra.vertices]
    maps = {}
    for arrow in module.algebra.quiver.arrows:
        moved = field.matmul(module.arrow_map(arrow.id), full[arrow.source])
        maps[arrow.id] = field.find_coordinates(full[arrow.target], moved)
    sub = Representation(module.algebra, module.prime, dims, maps, check=False)
    return sub, ModuleMap(sub, module, full)


def quotient_representation(
    module: Representation,
    bases: Mapping[int, galois.FieldArray],
) -> Tuple[Representation, ModuleMap]:
    """``module / sub`` where ``sub`` is spanned by ``bases``; returns the projection too."""
    field = module.field
    projections: Dict[int, galois.FieldArray] = {}
    lifts: Dict[int, galois.FieldArray] = {}
    dims: List[int] = []
    for v in module.algebra.vertices:
        d = module.dim_at(v)
        span = bases.get(v, field.zeros(d, 0))
        rest = field.complement_indices(span, d)
        lift = field.identity(d)[:, rest] if d else field.zeros(0, 0)
        change = field.hstack([span, lift], d)
        inverse = field.inverse(change)
        projections[v] = inverse[span.shape[1]:, :]
        lifts[v] = lift
        dims.append(len(rest))
    maps = {
        arrow.id: field.matmul(
            projections[arrow.target],
            field.matmul(module.arrow_map(arrow.id), lifts[arrow.source]),
        )
        for arrow in module.algebra.quiver.arrows
    }
    quotient = Representation(module.algebra, module.prime, dims, maps, check=False)
    return quotient, ModuleMap(module, quotient, projections)


def conjugate(module: Representation, changes: Mapping[int, galois.FieldArray]) -> Representation:
    """The same module in new bases: arrow ``a: s -> t`` becomes ``C_t^{-1} M_a C_s``."""
    field = module.field
    maps = {
        arrow.id: field.matmul(
            field.inverse(changes[arrow.target]),
            field.matmul(module.arrow_map(arrow.id), changes[arrow.source]),
        )
        for arrow in module.algebra.quiver.arrows
    }
    return Representation(module.algebra, module.prime, module.dims, maps)
