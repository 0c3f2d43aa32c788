from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Dict, List, Tuple

import galois

from src.app.config.settings import get_settings
from src.app.errors import InvalidInputError
from src.app.modules.homs import hom_dim
from src.app.modules.representation import (
    ModuleMap,
    Representation,
    direct_sum,
    subrepresentation,
    zero_module,
)
from src.app.modules.standard import indecomposable_injective, indecomposable_projective


logger = logging.getLogger(__name__)

GVector = Tuple[int, ...]


def radical_bases(module: Representation) -> Dict[int, galois.FieldArray]:
    """At each vertex, a basis of the sum of the images of the incoming arrows."""
    field = module.field
    bases = {}
    for v in module.algebra.vertices:
        d = module.dim_at(v)
        images = [module.arrow_map(a.id) for a in module.algebra.quiver.incoming(v)]
        bases[v] = field.column_space_basis(field.hstack(images, d))
    return bases


def radical_and_top(module: Representation) -> Tuple[Representation, Tuple[int, ...]]:
    """``rad M`` as a subrepresentation, and the multiplicity of each simple in ``top M``."""
    bases = radical_bases(module)
    rad, _ = subrepresentation(module, bases)
    top = tuple(module.dims[k] - rad.dims[k] for k in range(module.algebra.n))
    return rad, top


@dataclass(frozen=True)
class ProjectivePresentation:
    """``P1 -> P0 -> M -> 0`` with ``P0`` a projective cover of ``M`` and ``P1`` one of the kernel.

    ``cover_vertices[k]`` is the vertex of the ``k``-th summand of ``P0`` and
    ``generators[k]`` the image of its top in ``M``. ``relation_vertices[l]``
    is the vertex of the ``l``-th summand of ``P1`` and ``relations[l]`` its
    image in ``P0``, in the coordinates of ``P0`` at that vertex.
    """

    module: Representation
    cover_vertices: Tuple[int, ...]
    generators: Tuple[galois.FieldArray, ...]
    relation_vertices: Tuple[int, ...]
    relations: Tuple[galois.FieldArray, ...]

    @property
    def p0(self) -> Representation:
        return _projective_sum(self.module, self.cover_vertices)

    @property
    def p1(self) -> Representation:
        return _projective_sum(self.module, self.relation_vertices)

    @property
    def g_vector(self) -> GVector:
        n = self.module.algebra.n
        g = [0] * n
        for v in self.cover_vertices:
            g[v - 1] += 1
        for v in self.relation_vertices:
            g[v - 1] -= 1
        return tuple(g)

    def cover_map(self) -> ModuleMap:
        return _generated_map(self.p0, self.module, self.cover_vertices, self.generators)

    def relation_map(self) -> ModuleMap:
        return _generated_map(self.p1, self.p0, self.relation_vertices, self.relations)

    def relation_blocks(self, l: int) -> List[galois.FieldArray]:
        """Split ``relations[l]`` into its coordinates on ``e_{w_k} A e_{u_l}`` for each cover summand ``k``."""
        algebra = self.module.algebra
        u = self.relation_vertices[l]
        blocks = []
        start = 0
        for w in self.cover_vertices:
            size = algebra.dim_between(w, u)
            blocks.append(self.relations[l][start:start + size])
            start += size
        return blocks


def _projective_sum(module: Representation, vertices: Tuple[int, ...]) -> Representation:
    return direct_sum(
        [indecomposable_projective(module.algebra, v, module.prime) for v in vertices],
        module.algebra,
        module.prime,
    )


def _generated_map(
    source: Representation,
    target: Representation,
    vertices: Tuple[int, ...],
    images: Tuple[galois.FieldArray, ...],
) -> ModuleMap:
    """The map out of ``sum P_{v_k}`` sending the top of the ``k``-th summand to ``images[k]``.

    A basis path ``x: v_k -> j`` goes to ``x`` acting on ``images[k]``.
    """
    field = target.field
    algebra = target.algebra
    components = {}
    for j in algebra.vertices:
        columns = []
        for v, m in zip(vertices, images):
            for x in algebra.basis(v, j):
                columns.append(field.matmul(target.path_map(x), m.reshape(-1, 1)))
        components[j] = field.hstack(columns, target.dim_at(j))
    return ModuleMap(source, target, components)


def minimal_projective_presentation(module: Representation) -> ProjectivePresentation:
    if module.is_zero:
        raise InvalidInputError("the zero module has no minimal presentation")
    field = module.field
    algebra = module.algebra

    cover_vertices: List[int] = []
    generators: List[galois.FieldArray] = []
    for v, basis in radical_bases(module).items():
        d = module.dim_at(v)
        for k in field.complement_indices(basis, d):
            cover_vertices.append(v)
            generators.append(field.identity(d)[:, k])

    p0 = _projective_sum(module, tuple(cover_vertices))
    cover = _generated_map(p0, module, tuple(cover_vertices), tuple(generators))
    kernel = cover.kernel_bases()

    relation_vertices: List[int] = []
    relations: List[galois.FieldArray] = []
    for v in algebra.vertices:
        if kernel[v].shape[1] == 0:
            continue
        images = [
            field.matmul(p0.arrow_map(a.id), kernel[a.source])
            for a in algebra.quiver.incoming(v)
        ]
        rad = field.column_space_basis(field.hstack(images, p0.dim_at(v)))
        for k in field.extend_basis(rad, kernel[v]):
            relation_vertices.append(v)
            relations.append(kernel[v][:, k])

    logger.debug(
        "presentation of %s: cover %s, relations %s",
        module.dims, cover_vertices, relation_vertices,
    )
    return ProjectivePresentation(
        module,
        tuple(cover_vertices),
        tuple(generators),
        tuple(relation_vertices),
        tuple(relations),
    )


def g_vector(module: Representation) -> GVector:
    """``[P0] - [P1]`` of the minimal projective presentation."""
    return minimal_projective_presentation(module).g_vector


def complement_g_vector(n: int, vertex: int) -> GVector:
    """g-vector recorded for the complement projective at ``vertex``: ``-e_vertex``."""
    g = [0] * n
    g[vertex - 1] = -1
    return tuple(g)


def ar_translate(module: Representation) -> Representation:
    """``tau M = ker(nu P1 -> nu P0)`` where ``nu P_u = I_u``.

    The component ``I_u -> I_w`` at vertex ``j`` is the transpose of
    ``e_j A e_w -> e_j A e_u, x -> x c`` with ``c`` the coefficient of the
    presentation between the two summands. Projective summands of ``M``
    have no relations and contribute nothing.
    """
    algebra = module.algebra
    field = module.field
    if module.is_zero:
        return zero_module(algebra, module.prime)
    pres = minimal_projective_presentation(module)
    if not pres.relation_vertices:
        return zero_module(algebra, module.prime)

    nu_p1 = direct_sum(
        [indecomposable_injective(algebra, u, module.prime) for u in pres.relation_vertices],
        algebra,
        module.prime,
    )
    nu_p0_dims = {
        j: sum(algebra.dim_between(j, w) for w in pres.cover_vertices) for j in algebra.vertices
    }

    kernels = {}
    for j in algebra.vertices:
        columns = []
        for l, u in enumerate(pres.relation_vertices):
            blocks = pres.relation_blocks(l)
            rows = []
            for w, coeffs in zip(pres.cover_vertices, blocks):
                rows.append(_right_multiplication(module, j, w, u, coeffs).T)
            columns.append(field.vstack(rows, algebra.dim_between(j, u)))
        nu_d1 = field.hstack(columns, nu_p0_dims[j])
        kernels[j] = field.kernel_basis(nu_d1)
    tau, _ = subrepresentation(nu_p1, kernels)
    if get_settings().validate_nodes:
        tau.check_relations()
    return tau


def _right_multiplication(
    module: Representation,
    j: int,
    w: int,
    u: int,
    coeffs: galois.FieldArray,
) -> galois.FieldArray:
    """Matrix of ``e_j A e_w -> e_j A e_u, x -> x c`` where ``c = sum coeffs[b] * basis(w, u)[b]``."""
    algebra = module.algebra
    field = module.field
    source = algebra.basis(j, w)
    target = algebra.basis(j, u)
    index = {p: k for k, p in enumerate(target)}
    out = [[0] * len(source) for _ in target]
    for b, path in enumerate(algebra.basis(w, u)):
        c = int(coeffs[b])
        if not c:
            continue
        for col, x in enumerate(source):
            for q, coeff in algebra.normal_form(x + path).items():
                row = index[q]
                out[row][col] = (out[row][col] + c * field.scalar(coeff)) % field.prime
    if not target or not source:
        return field.zeros(len(target), len(source))
    return field.matrix(out)


def is_tau_rigid_pair(m: Representation, n: Representation) -> bool:
    """``Hom(M, tau N) = 0`` and ``Hom(N, tau M) = 0``."""
    return hom_dim(m, ar_translate(n)) == 0 and hom_dim(n, ar_translate(m)) == 0


def is_tau_rigid(module: Representation) -> bool:
    return hom_dim(module, ar_translate(module)) == 0
