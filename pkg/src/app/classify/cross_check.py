from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import List, Optional

from src.app.classify.reduction import tau_finiteness_via_tits
from src.app.classify.verdicts import RepTypeVerdict
from src.app.errors import CapExceededError
from src.app.quiver.algebra import BoundQuiverAlgebra
from src.app.tau.enumeration import CountsTable, enumerate_hasse


logger = logging.getLogger(__name__)

# Enumeration only runs for tau-finite verdicts on at most this many vertices.
ENUMERATION_VERTEX_LIMIT = 7


@dataclass(frozen=True)
class CrossCheck:
    listed: RepTypeVerdict
    tits: RepTypeVerdict
    counts: Optional[CountsTable]
    enumeration_note: str

    @property
    def agrees(self) -> bool:
        if self.tits.tau_finite is not None and self.tits.tau_finite != self.listed.tau_finite:
            return False
        return not self.enumeration_note.startswith("cap")

    def lines(self) -> List[str]:
        out = [f"list: {self.listed.summary()}", f"tits: {self.tits.summary()}"]
        cert = self.tits.evidence[0].certificates
        if cert:
            out.append(f"  certificate: {','.join(str(x) for x in cert[0])}")
        if self.counts is not None:
            out.append(f"enumeration: {self.counts.row()}")
        elif self.enumeration_note:
            out.append(f"enumeration: {self.enumeration_note}")
        out.append("agreement: " + ("yes" if self.agrees else "NO"))
        return out


def cross_check(
    listed: RepTypeVerdict,
    algebra: BoundQuiverAlgebra,
    node_cap: int | None = None,
    prime: int | None = None,
    workers: int | None = None,
) -> CrossCheck:
    """Run the Tits route, and enumeration when the list says tau-finite and the algebra is small."""
    tits = tau_finiteness_via_tits(algebra, subject=listed.subject, prime=prime)
    counts = None
    note = ""
    if listed.tau_finite and algebra.n <= ENUMERATION_VERTEX_LIMIT:
        try:
            _, counts = enumerate_hasse(algebra, node_cap, prime, workers)
        except CapExceededError as e:
            note = f"cap reached at {e.visited} pairs"
    elif listed.tau_finite:
        note = f"skipped (more than {ENUMERATION_VERTEX_LIMIT} vertices)"
    check = CrossCheck(listed, tits, counts, note)
    if not check.agrees:
        logger.warning("cross-check disagreement for %s", listed.subject)
    return check
