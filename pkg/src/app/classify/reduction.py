from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import List, Optional, Sequence

from src.app.classify.separation import separation_property
from src.app.classify.verdicts import (
    INCONCLUSIVE,
    TAU_FINITE,
    TAU_INFINITE,
    RepTypeVerdict,
    verdict,
)
from src.app.errors import InvalidInputError
from src.app.modules.representation import Representation
from src.app.modules.standard import indecomposable_injective, indecomposable_projective
from src.app.quiver.algebra import BoundQuiverAlgebra
from src.app.quiver.structure import vertex_quotient
from src.app.tau.catalog import ModuleCatalog
from src.app.tits.form import tits_form
from src.app.tits.search import is_weakly_positive


logger = logging.getLogger(__name__)

SEPARATION = "separation"
ASSERTED = "asserted"

SINCERE = "sincere"
NON_SINCERE = "non_sincere"
UNKNOWN = "unknown"

SINCERE_WITNESS = "sincere_witness"
NONE = "none"
NONE_UP_TO_CAP = "none_up_to_cap"


def _subject(algebra: BoundQuiverAlgebra, subject: str | None) -> str:
    return subject or repr(algebra)


def tau_finiteness_via_tits(
    algebra: BoundQuiverAlgebra,
    certificate: str | None = SEPARATION,
    bound: int | None = None,
    subject: str | None = None,
    prime: int | None = None,
) -> RepTypeVerdict:
    """For a simply connected algebra, tau-finite exactly when its Tits form is weakly positive.

    Simple connectedness is never assumed: ``certificate`` is either
    ``"separation"`` (checked here), ``"asserted"`` (recorded as the caller's
    claim) or ``None``, which yields an inconclusive verdict.
    """
    subject = _subject(algebra, subject)
    if certificate is None:
        return verdict(
            subject, INCONCLUSIVE, "no-simple-connectedness",
            "no simple-connectedness certificate supplied",
        )
    if certificate == SEPARATION:
        report = separation_property(algebra, prime)
        if not report.holds:
            return verdict(
                subject, INCONCLUSIVE, "separation-failed",
                "separation property fails",
                note=f"failing vertices {report.failures()}",
            )
        basis = "separation property verified"
    elif certificate == ASSERTED:
        basis = "simple connectedness asserted by the caller"
    else:
        raise InvalidInputError(f"unknown certificate {certificate!r}; expected separation or asserted")

    q = tits_form(algebra)
    result = is_weakly_positive(q, bound)
    note = basis if q.minimality_verified else f"{basis}; relation minimality not verified"
    if result.weakly_positive:
        return verdict(
            subject, TAU_FINITE, "tits-weakly-positive",
            "simply connected with weakly positive Tits form", note=note,
        )
    return verdict(
        subject, TAU_INFINITE, "tits-not-weakly-positive",
        "simply connected with Tits form not weakly positive",
        certificates=[result.certificate], note=note,
    )


def _node_verdict(algebra: BoundQuiverAlgebra, subject: str, prime: int | None) -> RepTypeVerdict:
    if algebra.n == 1:
        return verdict(subject, TAU_FINITE, "single-vertex", "semisimple: a single vertex")
    return tau_finiteness_via_tits(algebra, SEPARATION, subject=subject, prime=prime)


def _quotients(algebra: BoundQuiverAlgebra, subject: str):
    for i in algebra.vertices:
        parts = vertex_quotient(algebra, i)
        for k, part in enumerate(parts, 1):
            name = f"{subject}/e{i}" if len(parts) == 1 else f"{subject}/e{i}[{k}]"
            yield name, part


def quotient_tree(
    algebra: BoundQuiverAlgebra,
    budget: int,
    subject: str | None = None,
    prime: int | None = None,
) -> RepTypeVerdict:
    """The verdict of ``algebra`` with the trees of its vertex quotients attached, ``budget`` levels deep."""
    subject = _subject(algebra, subject)
    node = _node_verdict(algebra, subject, prime)
    if budget < 1 or algebra.n == 1:
        return node
    children = [quotient_tree(part, budget - 1, name, prime) for name, part in _quotients(algebra, subject)]
    evidence = node.evidence[0]
    return verdict(
        subject, node.status, evidence.rule, evidence.anchor,
        certificates=evidence.certificates, children=children,
        note=evidence.note, tau_finite=node.tau_finite,
    )


def nonsincere_reduction(
    algebra: BoundQuiverAlgebra,
    sincerity: str,
    budget: int,
    subject: str | None = None,
    prime: int | None = None,
) -> RepTypeVerdict:
    """A non-sincere algebra is tau-finite exactly when every ``A / A e_i A`` is.

    ``sincerity`` is recorded evidence, not decided here: ``"sincere"`` and
    ``"unknown"`` make the reduction refuse.
    """
    subject = _subject(algebra, subject)
    if sincerity not in (SINCERE, NON_SINCERE, UNKNOWN):
        raise InvalidInputError(f"unknown sincerity status {sincerity!r}")
    if sincerity != NON_SINCERE:
        return verdict(
            subject, INCONCLUSIVE, "reduction-refused",
            "quotient reduction needs a non-sincere algebra", note=sincerity,
        )
    if budget < 1:
        return verdict(subject, INCONCLUSIVE, "budget-exhausted", "quotient budget exhausted")

    children = [quotient_tree(part, budget - 1, name, prime) for name, part in _quotients(algebra, subject)]
    if all(c.tau_finite is True for c in children):
        status = TAU_FINITE
    elif any(c.tau_finite is False for c in children):
        status = TAU_INFINITE
    else:
        status = INCONCLUSIVE
    logger.debug("quotient reduction of %s: %s over %d quotients", subject, status, len(children))
    return verdict(
        subject, status, "nonsincere-quotients",
        "non-sincere: tau-finite exactly when every vertex quotient is",
        children=children,
    )


@dataclass(frozen=True)
class SincereSearchResult:
    status: str
    witness: Optional[Representation] = None
    source: str = ""


def sincere_search(
    algebra: BoundQuiverAlgebra | Sequence[BoundQuiverAlgebra],
    dim_cap: int | None = None,
    catalog: ModuleCatalog | None = None,
    prime: int | None = None,
) -> SincereSearchResult:
    """Look for a sincere indecomposable among projectives, injectives and catalogued tau-rigid modules.

    A disconnected algebra (or a list of several components) has no sincere
    indecomposable. Otherwise a miss only means none was found among the
    candidates of total dimension at most ``dim_cap``.
    """
    if not isinstance(algebra, BoundQuiverAlgebra):
        components = list(algebra)
        if len(components) != 1:
            return SincereSearchResult(NONE, source="disconnected")
        algebra = components[0]
    if dim_cap is not None and dim_cap < algebra.n:
        raise InvalidInputError(f"dim_cap {dim_cap} is below the vertex count {algebra.n}")
    if len(algebra.quiver.components()) > 1:
        return SincereSearchResult(NONE, source="disconnected")

    candidates: List[tuple[str, Representation]] = []
    for i in algebra.vertices:
        candidates.append((f"P{i}", indecomposable_projective(algebra, i, prime)))
    for i in algebra.vertices:
        candidates.append((f"I{i}", indecomposable_injective(algebra, i, prime)))
    if catalog is not None:
        candidates.extend((f"g={list(g)}", catalog.module(g)) for g in catalog.g_vectors())

    for name, module in candidates:
        if dim_cap is not None and module.total_dim > dim_cap:
            continue
        if module.is_sincere:
            logger.debug("sincere witness %s", name)
            return SincereSearchResult(SINCERE_WITNESS, module, name)
    return SincereSearchResult(NONE_UP_TO_CAP)
