from __future__ import annotations

import logging
from typing import List, Sequence

from src.app.config.settings import get_settings
from src.app.errors import CertificationError, InvalidInputError, NotDescentDirectionError
from src.app.modules.homs import hom_basis
from src.app.modules.representation import Representation, direct_sum, quotient_representation
from src.app.modules.standard import indecomposable_projective
from src.app.quiver.algebra import BoundQuiverAlgebra
from src.app.tau.catalog import ModuleCatalog
from src.app.tau.pairs import SupportTauTiltingPair, make_pair


logger = logging.getLogger(__name__)


def initial_pair(
    algebra: BoundQuiverAlgebra,
    prime: int | None = None,
    catalog: ModuleCatalog | None = None,
) -> SupportTauTiltingPair:
    """``(A, 0)``: every indecomposable projective, no complement."""
    if catalog is None:
        catalog = ModuleCatalog(algebra, get_settings().field_prime if prime is None else prime)
    gs = []
    for i in algebra.vertices:
        unit = tuple(1 if v == i else 0 for v in algebra.vertices)
        gs.append(catalog.register(indecomposable_projective(algebra, i, catalog.prime), unit))
    return make_pair(catalog, gs, ())


def universal_cokernel(x: Representation, targets: Sequence[Representation]) -> Representation:
    """Cokernel of ``X -> sum_i N_i^{dim Hom(X, N_i)}`` built from Hom bases."""
    field = x.field
    copies: List[Representation] = []
    maps = []
    for target in targets:
        for f in hom_basis(x, target):
            copies.append(target)
            maps.append(f)
    if not copies:
        return direct_sum([], x.algebra, x.prime)
    big = direct_sum(copies)
    images = {}
    for v in x.algebra.vertices:
        stacked = field.vstack([f[v] for f in maps], x.dim_at(v))
        images[v] = field.column_space_basis(stacked)
    coker, _ = quotient_representation(big, images)
    return coker


def left_mutation(pair: SupportTauTiltingPair, index: int) -> SupportTauTiltingPair:
    """Exchange the summand ``X = pair.summands[index]`` for the new summand of ``coker(X -> add N)``.

    ``N`` is the pair without ``X``. Summands of the cokernel already in ``N``
    are absorbed. When nothing new remains the vertex that leaves the support
    joins the complement.

    Raises:
        NotDescentDirectionError: ``X`` lies in ``Fac(N)``.
        CertificationError: the cokernel has more than one new summand, or the
            complement does not grow by exactly one vertex.
    """
    if not 0 <= index < len(pair.summands):
        raise InvalidInputError(f"summand index {index} out of range for {len(pair.summands)} summands")
    catalog = pair.catalog
    x = pair.summands[index]
    rest = pair.rest(index)
    if catalog.in_fac(x, rest):
        raise NotDescentDirectionError(f"not a descent direction: summand {x} lies in Fac of the others")

    gs, modules = catalog.cokernel_pieces(x, rest, universal_cokernel)
    fresh = {}
    for g, module in zip(gs, modules):
        if g not in rest:
            fresh.setdefault(g, module)
    if x in fresh or len(fresh) > 1:
        raise CertificationError(f"mutation at {x} produced new summands {sorted(fresh)}")

    if fresh:
        (g, module), = fresh.items()
        catalog.register(module, g)
        result = make_pair(catalog, rest + (g,), pair.complement)
    else:
        kept = make_pair(catalog, rest, ())
        complement = frozenset(catalog.algebra.vertices) - kept.support
        added = complement - pair.complement
        if len(added) != 1 or not pair.complement <= complement:
            raise CertificationError(
                f"mutation at {x}: complement {sorted(pair.complement)} became {sorted(complement)}"
            )
        result = make_pair(catalog, rest, complement)
    logger.debug("mutation at %s: %s -> %s", x, pair.key, result.key)
    return result
