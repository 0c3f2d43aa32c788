from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
import re
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from src.app.errors import InvalidQuiverError, InvalidRelationError


_ARROW_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class Arrow(NamedTuple):
    id: str
    source: int
    target: int


@dataclass(frozen=True, order=True)
class Path:
    """A path ``source -> target`` given by its arrow ids; no arrows means ``e_source``."""

    source: int
    target: int
    arrows: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __add__(self, other: "Path") -> "Path":
        if self.target != other.source:
            raise ValueError(f"paths {self} and {other} are not composable")
        return Path(self.source, other.target, self.arrows + other.arrows)

    def __str__(self) -> str:
        return ".".join(self.arrows) if self.arrows else f"e{self.source}"


def trivial_path(vertex: int) -> Path:
    return Path(vertex, vertex)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, stored as ``(coefficient, path)`` terms."""

    terms: Tuple[Tuple[Fraction, Path], ...]

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target

    @property
    def degree(self) -> int:
        return self.terms[0][1].length

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def paths(self) -> List[Path]:
        return [p for _, p in self.terms]

    def __str__(self) -> str:
        return " + ".join(f"{c}*{p}" for c, p in self.terms)


def relation(*terms: Tuple[int | Fraction, Path]) -> Relation:
    return Relation(tuple((Fraction(c), p) for c, p in terms))


@dataclass(frozen=True)
class RelationIdeal:
    generators: Tuple[Relation, ...] = ()
    # False for relation sets read from user files: r(i,j) counts are then unverified.
    minimality_trusted: bool = True

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Relation]:
        return iter(self.generators)


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: Tuple[Arrow, ...]
    labels: Tuple[str, ...] = field(default=(), compare=True)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def _by_id(self) -> Dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def _outgoing(self) -> Dict[int, Tuple[Arrow, ...]]:
        out: Dict[int, List[Arrow]] = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a)
        return {v: tuple(out[v]) for v in self.vertices}

    @cached_property
    def _incoming(self) -> Dict[int, Tuple[Arrow, ...]]:
        inc: Dict[int, List[Arrow]] = defaultdict(list)
        for a in self.arrows:
            inc[a.target].append(a)
        return {v: tuple(inc[v]) for v in self.vertices}

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._by_id[arrow_id]
        except KeyError:
            raise InvalidRelationError(f"unknown arrow {arrow_id!r}") from None

    def outgoing(self, v: int) -> Tuple[Arrow, ...]:
        return self._outgoing[v]

    def incoming(self, v: int) -> Tuple[Arrow, ...]:
        return self._incoming[v]

    def label(self, v: int) -> str:
        return self.labels[v - 1] if self.labels else str(v)

    def arrow_count(self, i: int, j: int) -> int:
        return sum(1 for a in self._outgoing[i] if a.target == j)

    def path(self, arrow_ids: Sequence[str], source: int | None = None) -> Path:
        """Build a composable path from arrow ids (``source`` needed only for trivial paths)."""
        if not arrow_ids:
            if source is None:
                raise InvalidRelationError("trivial path needs a source vertex")
            return trivial_path(source)
        arrows = [self.arrow(a) for a in arrow_ids]
        for first, second in zip(arrows, arrows[1:]):
            if first.target != second.source:
                raise InvalidRelationError(
                    f"arrows {first.id} and {second.id} are not composable"
                )
        return Path(arrows[0].source, arrows[-1].target, tuple(arrow_ids))

    def path_vertices(self, path: Path) -> List[int]:
        return [path.source] + [self.arrow(a).target for a in path.arrows]

    def validate(self, require_connected: bool = True) -> None:
        if self.n < 1:
            raise InvalidQuiverError("quiver needs at least one vertex")
        if self.labels and len(self.labels) != self.n:
            raise InvalidQuiverError("one label per vertex expected")
        seen = set()
        for a in self.arrows:
            if not _ARROW_ID.match(a.id):
                raise InvalidQuiverError(f"invalid arrow id {a.id!r}")
            if a.id in seen:
                raise InvalidQuiverError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            if not (1 <= a.source <= self.n and 1 <= a.target <= self.n):
                raise InvalidQuiverError(f"arrow {a.id} has an endpoint outside 1..{self.n}")
            if a.source == a.target:
                raise InvalidQuiverError(f"arrow {a.id} is a loop")
        self.topological_order()
        if require_connected and len(self.components()) > 1:
            raise InvalidQuiverError("quiver is not connected")

    def topological_order(self) -> List[int]:
        sorter: TopologicalSorter = TopologicalSorter()
        for v in self.vertices:
            sorter.add(v, *(a.source for a in self._incoming[v]))
        try:
            return list(sorter.static_order())
        except CycleError as exc:
            raise InvalidQuiverError(f"quiver has an oriented cycle through {exc.args[1]}") from None

    def components(self) -> List[List[int]]:
        """Connected components of the underlying graph, each sorted, ordered by least vertex."""
        parent = {v: v for v in self.vertices}

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a in self.arrows:
            ra, rb = find(a.source), find(a.target)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: Dict[int, List[int]] = defaultdict(list)
        for v in self.vertices:
            groups[find(v)].append(v)
        return sorted(groups.values())

    def reachable_from(self, v: int) -> set[int]:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for a in self._outgoing[u]:
                if a.target not in seen:
                    seen.add(a.target)
                    stack.append(a.target)
        return seen

    def reaching(self, v: int) -> set[int]:
        """Vertices with a path into ``v`` (``v`` included)."""
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for a in self._incoming[u]:
                if a.source not in seen:
                    seen.add(a.source)
                    stack.append(a.source)
        return seen

    def find_path(self, source: int, target: int, through: Iterable[int] | None = None) -> Path | None:
        """Some path ``source -> target``; with ``through``, one visiting a vertex of that set."""
        if through is None:
            return self._search(source, target)
        for mid in sorted(through):
            head = self._search(source, mid)
            tail = self._search(mid, target)
            if head is not None and tail is not None:
                return head + tail
        return None

    def _search(self, source: int, target: int) -> Path | None:
        back: Dict[int, Arrow | None] = {source: None}
        queue = [source]
        while queue:
            u = queue.pop(0)
            if u == target:
                ids: List[str] = []
                while back[u] is not None:
                    arrow = back[u]
                    ids.append(arrow.id)
                    u = arrow.source
                return Path(source, target, tuple(reversed(ids)))
            for a in self._outgoing[u]:
                if a.target not in back:
                    back[a.target] = a
                    queue.append(a.target)
        return None

    def paths_from(self, v: int) -> Iterator[Path]:
        """Every path starting at ``v``, trivial path first."""
        stack = [trivial_path(v)]
        while stack:
            p = stack.pop()
            yield p
            for a in reversed(self._outgoing[p.target]):
                stack.append(Path(p.source, a.target, p.arrows + (a.id,)))
