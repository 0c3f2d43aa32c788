from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Dict, List, Optional, Tuple

from src.app.errors import InvalidInputError
from src.app.quiver.families import named_family
from src.app.tau.closed_forms import catalan, closed_form
from src.app.tau.enumeration import CountsTable, HasseDiagram, enumerate_hasse


logger = logging.getLogger(__name__)

RECURRENCE_FAMILIES = ("lambda", "a1", "linear_a")


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    n: int
    s: Optional[int]
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self) -> str:
        where = f"n={self.n}" + (f", s={self.s}" if self.s is not None else "")
        verdict = "ok" if self.holds else "FAILED"
        return f"{self.name} [{where}]: {self.lhs} = {self.rhs} {verdict}"


@dataclass(frozen=True)
class RecurrenceReport:
    family: str
    n_max: int
    checks: Tuple[IdentityCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> List[IdentityCheck]:
        return [c for c in self.checks if not c.holds]

    def render(self) -> str:
        lines = [f"recursions for {self.family} up to n={self.n_max}:"]
        lines.extend(f"  {c}" for c in self.checks)
        lines.append(f"  {len(self.checks) - len(self.failures())}/{len(self.checks)} identities hold")
        return "\n".join(lines)


class CountsOracle:
    """Enumerated ``a_s`` tables, memoised per family and size."""

    def __init__(self, prime: int | None = None, node_cap: int | None = None, workers: int | None = None) -> None:
        self.prime = prime
        self.node_cap = node_cap
        self.workers = workers
        self._tables: Dict[Tuple[str, int], CountsTable] = {}
        self._diagrams: Dict[Tuple[str, int], HasseDiagram] = {}

    def diagram(self, family: str, n: int) -> HasseDiagram:
        key = (family, n)
        if key not in self._diagrams:
            algebra = named_family(family, (n,))
            diagram, table = enumerate_hasse(algebra, self.node_cap, self.prime, self.workers)
            self._diagrams[key] = diagram
            self._tables[key] = table
        return self._diagrams[key]

    def table(self, family: str, n: int) -> CountsTable:
        if family == "linear_a" and n == 0:
            return CountsTable((1,))
        key = (family, n)
        if key not in self._tables:
            self.diagram(family, n)
        return self._tables[key]

    def a(self, family: str, n: int, s: int) -> int:
        return self.table(family, n)[s]


def verify_recurrences(
    family: str,
    n_max: int,
    oracle: CountsOracle | None = None,
) -> RecurrenceReport:
    """Check the recursion identities of ``family`` on enumerated counts up to ``n_max``.

    Every identity is listed with both sides; those with closed-form terms are
    checked in both the enumerated and the closed-form version.
    """
    oracle = oracle or CountsOracle()
    if family == "lambda":
        checks = _lambda_checks(oracle, n_max)
    elif family == "a1":
        checks = _a1_checks(oracle, n_max)
    elif family == "linear_a":
        checks = _linear_checks(oracle, n_max)
    else:
        raise InvalidInputError(
            f"no recursions for family {family!r}; expected one of {', '.join(RECURRENCE_FAMILIES)}"
        )
    report = RecurrenceReport(family, n_max, tuple(checks))
    logger.info("%s: %d identities checked, %d failed", family, len(checks), len(report.failures()))
    return report


def _lambda_checks(o: CountsOracle, n_max: int) -> List[IdentityCheck]:
    if n_max < 4:
        raise InvalidInputError("lambda recursions start at n=4")

    def lam(n: int, s: int) -> int:
        return o.a("lambda", n, s)

    def lin(n: int, s: int) -> int:
        return o.a("linear_a", n, s)

    checks: List[IdentityCheck] = []
    for n in range(4, n_max + 1):
        for s in range(1, n - 2):
            checks.append(IdentityCheck(
                "a_s(L_n) = a_s(L_n-1) + a_s-1(L_n)", n, s,
                lam(n, s), lam(n - 1, s) + lam(n, s - 1),
            ))
        checks.append(IdentityCheck(
            "a_n-2(L_n) = a_n-2(L_n-1) + a_n-3(L_n) + a_n-3(A_n-3)", n, None,
            lam(n, n - 2), lam(n - 1, n - 2) + lam(n, n - 3) + lin(n - 3, n - 3),
        ))
        checks.append(IdentityCheck(
            "a_n-2(L_n) = a_n-2(L_n-1) + a_n-3(L_n) + Cat(n-3)", n, None,
            lam(n, n - 2), lam(n - 1, n - 2) + lam(n, n - 3) + catalan(n - 3),
        ))
        if n >= 5:
            tail = sum(lam(i - 1, i - 1) * lin(n - i, n - i) for i in range(4, n))
            checks.append(IdentityCheck(
                "a_n-1(L_n) = a_n-1(L_n-1) + a_n-1(D_n-1) + 2 a_n-1(A1_n-1) + sum a_i-1(L_i-1) a_n-i(A_n-i)",
                n, None,
                lam(n, n - 1),
                lam(n - 1, n - 1) + o.a("d", n - 1, n - 1) + 2 * o.a("a1", n - 1, n - 1) + tail,
            ))
            closed_tail = sum(lam(i - 1, i - 1) * catalan(n - i) for i in range(4, n))
            checks.append(IdentityCheck(
                "a_n-1(L_n) = a_n-1(L_n-1) + D_top(n-1) + 2 A1_top(n-1) + sum a_i-1(L_i-1) Cat(n-i)",
                n, None,
                lam(n, n - 1),
                lam(n - 1, n - 1) + closed_form("D_top", n - 1) + 2 * closed_form("A1_top", n - 1) + closed_tail,
            ))
            checks.append(IdentityCheck(
                "a_n(D_n) = D_top(n)", n - 1, None,
                o.a("d", n - 1, n - 1), closed_form("D_top", n - 1),
            ))
        checks.append(IdentityCheck(
            "a_n(L_n) = a_n-1(L_n) - a_n-3(A_n-3)", n, None,
            lam(n, n), lam(n, n - 1) - lin(n - 3, n - 3),
        ))
        checks.append(IdentityCheck(
            "a_n(L_n) = a_n-1(L_n) - Cat(n-3)", n, None,
            lam(n, n), lam(n, n - 1) - catalan(n - 3),
        ))
    return checks


def _a1_checks(o: CountsOracle, n_max: int) -> List[IdentityCheck]:
    if n_max < 3:
        raise InvalidInputError("a1 recursions start at n=3")

    def one(n: int, s: int) -> int:
        return o.a("a1", n, s)

    def lin(n: int, s: int) -> int:
        return o.a("linear_a", n, s)

    checks: List[IdentityCheck] = []
    for n in range(3, n_max + 1):
        for s in range(1, n - 1):
            checks.append(IdentityCheck(
                "a_s(A1_n) = a_s(A1_n-1) + a_s-1(A1_n)", n, s,
                one(n, s), one(n - 1, s) + one(n, s - 1),
            ))
        tail = sum(one(i - 1, i - 1) * lin(n - i, n - i) for i in range(3, n))
        checks.append(IdentityCheck(
            "a_n-1(A1_n) = a_n-1(A1_n-1) + a_n-1(A_n-1) + a_n-2(A_n-2) + sum a_i-1(A1_i-1) a_n-i(A_n-i)",
            n, None,
            one(n, n - 1),
            one(n - 1, n - 1) + lin(n - 1, n - 1) + lin(n - 2, n - 2) + tail,
        ))
        checks.append(IdentityCheck(
            "a_n(A1_n) = a_n-1(A_n-1) + a_n-2(A_n-2)", n, None,
            one(n, n), lin(n - 1, n - 1) + lin(n - 2, n - 2),
        ))
        checks.append(IdentityCheck(
            "a_n(A1_n) = A1_top(n)", n, None,
            one(n, n), closed_form("A1_top", n),
        ))
    return checks


def _linear_checks(o: CountsOracle, n_max: int) -> List[IdentityCheck]:
    if n_max < 1:
        raise InvalidInputError("linear_a recursions start at n=1")
    checks: List[IdentityCheck] = []
    for n in range(1, n_max + 1):
        checks.append(IdentityCheck(
            "a_n(A_n) = a_n-1(A_n)", n, None,
            o.a("linear_a", n, n), o.a("linear_a", n, n - 1),
        ))
        for s in range(n + 1):
            checks.append(IdentityCheck(
                "a_s(A_n) = (n-s+1)/(n+1) C(n+s, s)", n, s,
                o.a("linear_a", n, s), closed_form("A_linear", n, s),
            ))
    return checks


def p1_summand_property(n: int, oracle: CountsOracle | None = None) -> bool:
    """Every tau-tilting module of the linear ``A_n`` quiver has ``P_1`` as a summand,
    and ``T -> T / P_1`` is a bijection onto the pairs of support-rank ``n - 1``.
    """
    if n < 1:
        raise InvalidInputError(f"p1_summand_property needs n >= 1, got {n}")
    oracle = oracle or CountsOracle()
    diagram = oracle.diagram("linear_a", n)
    p1 = tuple(1 if v == 1 else 0 for v in range(1, n + 1))
    top = diagram.by_support_rank(n)
    # support-rank n-1 pairs, compared by the summands of M; their complement vertex varies
    below = {frozenset(r.summands) for r in diagram.by_support_rank(n - 1)}

    images = set()
    for record in top:
        if p1 not in record.summands:
            logger.info("tau-tilting module %s lacks P_1", record.key)
            return False
        images.add(frozenset(record.summands) - {p1})
    if len(images) != len(top) or images != below:
        logger.info("T -> T/P_1 is not a bijection: %d images, %d targets", len(images), len(below))
        return False
    return True
