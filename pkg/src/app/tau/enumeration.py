from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import json
import logging
from typing import Dict, Iterable, List, Sequence, Tuple

from src.app.config.settings import get_settings
from src.app.errors import CapExceededError, InvalidInputError, TauWorkbenchError
from src.app.modules.presentation import GVector
from src.app.quiver.algebra import BoundQuiverAlgebra
from src.app.tau.catalog import ModuleCatalog
from src.app.tau.mutation import initial_pair, left_mutation
from src.app.tau.pairs import PairKey, SupportTauTiltingPair, validate_pair


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeRecord:
    key: PairKey
    summands: Tuple[GVector, ...]
    complement: Tuple[int, ...]
    support_rank: int
    dims: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class EdgeRecord:
    source: PairKey
    target: PairKey
    mutated: GVector


@dataclass(frozen=True)
class HasseDiagram:
    """Left-mutation graph of the support tau-tilting pairs, in BFS order from the root."""

    n: int
    prime: int
    root: PairKey
    nodes: Tuple[NodeRecord, ...]
    edges: Tuple[EdgeRecord, ...]
    pairs: Dict[PairKey, SupportTauTiltingPair] = field(default_factory=dict, compare=False, repr=False)

    def node(self, key: PairKey) -> NodeRecord:
        for record in self.nodes:
            if record.key == key:
                return record
        raise KeyError(key)

    def out_degree(self, key: PairKey) -> int:
        return sum(1 for e in self.edges if e.source == key)

    def by_support_rank(self, s: int) -> List[NodeRecord]:
        return [r for r in self.nodes if r.support_rank == s]


@dataclass(frozen=True)
class CountsTable:
    """``a_s`` for ``s = 0..n``: the number of pairs of each support-rank."""

    counts: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, s: int) -> int:
        return self.counts[s]

    def row(self) -> str:
        """``"1 4 10 16 15 | 46"``."""
        return " ".join(str(c) for c in self.counts) + f" | {self.total}"

    @classmethod
    def from_diagram(cls, diagram: HasseDiagram) -> "CountsTable":
        counts = [0] * (diagram.n + 1)
        for record in diagram.nodes:
            counts[record.support_rank] += 1
        return cls(tuple(counts))


def convolve_counts(tables: Sequence[CountsTable]) -> CountsTable:
    """Counts of a disjoint union: pairs multiply and support-ranks add."""
    result = [1]
    for table in tables:
        out = [0] * (len(result) + table.n)
        for i, a in enumerate(result):
            for j, b in enumerate(table.counts):
                out[i + j] += a * b
        result = out
    return CountsTable(tuple(result))


def _record(pair: SupportTauTiltingPair) -> NodeRecord:
    return NodeRecord(
        key=pair.key,
        summands=pair.summands,
        complement=tuple(sorted(pair.complement)),
        support_rank=pair.support_rank,
        dims=pair.dims(),
    )


def _expand(pair: SupportTauTiltingPair) -> List[Tuple[GVector, SupportTauTiltingPair]]:
    out = []
    for index, x in enumerate(pair.summands):
        if pair.catalog.in_fac(x, pair.rest(index)):
            continue
        out.append((x, left_mutation(pair, index)))
    return out


def enumerate_hasse(
    algebra: BoundQuiverAlgebra,
    node_cap: int | None = None,
    prime: int | None = None,
    workers: int | None = None,
    validate: bool | None = None,
) -> Tuple[HasseDiagram, CountsTable]:
    """Breadth-first left mutation from ``(A, 0)``.

    Each layer is expanded in sorted key order (optionally by worker threads)
    and merged in that order, so the diagram does not depend on ``workers``.

    Raises:
        CapExceededError: more than ``node_cap`` pairs were found.
    """
    settings = get_settings()
    cap = settings.node_cap if node_cap is None else node_cap
    prime = settings.field_prime if prime is None else prime
    workers = settings.workers if workers is None else workers
    validate = settings.validate_nodes if validate is None else validate
    if cap < 1:
        raise InvalidInputError("node cap must be >= 1")

    catalog = ModuleCatalog(algebra, prime)
    root = initial_pair(algebra, catalog=catalog)
    if validate:
        validate_pair(root)
    pairs: Dict[PairKey, SupportTauTiltingPair] = {root.key: root}
    order: List[PairKey] = [root.key]
    edges: List[EdgeRecord] = []
    layer = [root]
    depth = 0

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while layer:
            if executor is not None:
                expansions = list(executor.map(_expand, layer))
            else:
                expansions = [_expand(p) for p in layer]
            fresh: Dict[PairKey, SupportTauTiltingPair] = {}
            for pair, results in zip(layer, expansions):
                for mutated, target in results:
                    edges.append(EdgeRecord(pair.key, target.key, mutated))
                    if target.key in pairs or target.key in fresh:
                        continue
                    if validate:
                        validate_pair(target)
                    fresh[target.key] = target
                    if len(pairs) + len(fresh) > cap:
                        raise CapExceededError(cap, len(pairs) + len(fresh))
            layer = [fresh[k] for k in sorted(fresh)]
            for p in layer:
                pairs[p.key] = p
                order.append(p.key)
            depth += 1
            if layer:
                logger.info("layer %d: %d new pairs, %d total", depth, len(layer), len(pairs))
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    diagram = HasseDiagram(
        n=algebra.n,
        prime=prime,
        root=root.key,
        nodes=tuple(_record(pairs[k]) for k in order),
        edges=tuple(edges),
        pairs=pairs,
    )
    table = CountsTable.from_diagram(diagram)
    logger.info("enumerated %d pairs: %s", table.total, table.row())
    return diagram, table


# JSON


def _key_to_json(key: Iterable[GVector]) -> List[List[int]]:
    return [list(g) for g in key]


def _key_from_json(raw: Iterable[Iterable[int]]) -> PairKey:
    return tuple(tuple(int(x) for x in g) for g in raw)


def hasse_to_json(diagram: HasseDiagram) -> dict:
    return {
        "n": diagram.n,
        "prime": diagram.prime,
        "root": _key_to_json(diagram.root),
        "nodes": [
            {
                "key": _key_to_json(r.key),
                "summands": _key_to_json(r.summands),
                "complement": list(r.complement),
                "support_rank": r.support_rank,
                "dims": _key_to_json(r.dims),
            }
            for r in diagram.nodes
        ],
        "edges": [
            {"source": _key_to_json(e.source), "target": _key_to_json(e.target), "mutated": list(e.mutated)}
            for e in diagram.edges
        ],
        "counts": counts_to_json(CountsTable.from_diagram(diagram)),
    }


def hasse_from_json(doc: dict | str) -> HasseDiagram:
    data = json.loads(doc) if isinstance(doc, str) else doc
    try:
        return HasseDiagram(
            n=int(data["n"]),
            prime=int(data["prime"]),
            root=_key_from_json(data["root"]),
            nodes=tuple(
                NodeRecord(
                    key=_key_from_json(r["key"]),
                    summands=_key_from_json(r["summands"]),
                    complement=tuple(int(v) for v in r["complement"]),
                    support_rank=int(r["support_rank"]),
                    dims=_key_from_json(r["dims"]),
                )
                for r in data["nodes"]
            ),
            edges=tuple(
                EdgeRecord(
                    _key_from_json(e["source"]),
                    _key_from_json(e["target"]),
                    tuple(int(x) for x in e["mutated"]),
                )
                for e in data["edges"]
            ),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInputError(f"malformed Hasse diagram document: {e}") from e


def counts_to_json(table: CountsTable) -> dict:
    return {"counts": list(table.counts), "total": table.total}


def counts_from_json(doc: dict | str) -> CountsTable:
    data = json.loads(doc) if isinstance(doc, str) else doc
    try:
        table = CountsTable(tuple(int(c) for c in data["counts"]))
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInputError(f"malformed counts document: {e}") from e
    if "total" in data and int(data["total"]) != table.total:
        raise InvalidInputError(f"counts total {data['total']} does not match {table.total}")
    return table


def family_table(rows: Sequence[Tuple[int, CountsTable]]) -> str:
    """Multi-row table with one ``n`` per row, columns ``s = 0..max n`` and the total."""
    if not rows:
        raise TauWorkbenchError("no rows to render")
    width = max(t.n for _, t in rows) + 1
    cells = [["n"] + [str(s) for s in range(width)] + ["total"]]
    for n, table in rows:
        cells.append([str(n)] + [str(c) for c in table.counts] + [str(table.total)])
    sizes = [max(len(row[k]) for row in cells if k < len(row) - 1) for k in range(width + 1)]
    lines = []
    for row in cells:
        head = row[0].rjust(sizes[0])
        # short rows stop at their last count; the total is never padded
        body = " ".join(c.rjust(sizes[k + 1]) for k, c in enumerate(row[1:-1]))
        lines.append(f"{head} | {body} | {row[-1]}")
    return "\n".join(lines)
