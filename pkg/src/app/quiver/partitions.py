from __future__ import annotations

from dataclasses import dataclass
import re
from typing import Iterator, List, Tuple

from src.app.errors import InvalidPartitionError


Box = Tuple[int, int]

_PART = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


@dataclass(frozen=True)
class Partition:
    """A non-increasing sequence of positive integers; rows of a Young diagram."""

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise InvalidPartitionError("partition must be nonempty")
        if any(p < 1 for p in parts):
            raise InvalidPartitionError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidPartitionError(f"partition must be non-increasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def boxes(self) -> List[Box]:
        """Boxes (row, column) of the Young diagram in row-major order, 1-based."""
        return [(i, j) for i, row in enumerate(self.parts, 1) for j in range(1, row + 1)]

    def contains(self, other: "Partition") -> bool:
        if len(other.parts) > len(self.parts):
            return False
        return all(a >= b for a, b in zip(self.parts, other.parts))

    def __str__(self) -> str:
        return format_parts(self.parts)


@dataclass(frozen=True)
class ShiftedPartition:
    """A strictly decreasing sequence of positive integers; row i starts at column i."""

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise InvalidPartitionError("shifted partition must be nonempty")
        if any(p < 1 for p in parts):
            raise InvalidPartitionError(f"partition parts must be positive: {parts}")
        if any(a <= b for a, b in zip(parts, parts[1:])):
            raise InvalidPartitionError(f"shifted partition must be strictly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def boxes(self) -> List[Box]:
        return [
            (i, j)
            for i, row in enumerate(self.parts, 1)
            for j in range(i, i + row)
        ]

    def contains(self, other: "ShiftedPartition") -> bool:
        if len(other.parts) > len(self.parts):
            return False
        return all(a >= b for a, b in zip(self.parts, other.parts))

    def __str__(self) -> str:
        return format_parts(self.parts)


def format_parts(parts: Tuple[int, ...]) -> str:
    """Render parts with exponents for repeated values, e.g. ``2^2,1^3``."""
    out: List[str] = []
    i = 0
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j] == parts[i]:
            j += 1
        run = j - i
        out.append(f"{parts[i]}^{run}" if run > 1 else str(parts[i]))
        i = j
    return ",".join(out)


def _parse_parts(text: str) -> Tuple[int, ...]:
    parts: List[int] = []
    for chunk in text.strip().strip("()").split(","):
        m = _PART.match(chunk)
        if not m:
            raise InvalidPartitionError(f"cannot parse partition {text!r}")
        value = int(m.group(1))
        repeat = int(m.group(2)) if m.group(2) else 1
        if repeat < 1:
            raise InvalidPartitionError(f"exponent must be positive in {text!r}")
        parts.extend([value] * repeat)
    return tuple(parts)


def parse_partition(text: str) -> Partition:
    """Parse ``"3,3,2"`` or ``"2^2,1^3"``."""
    return Partition(_parse_parts(text))


def parse_shifted_partition(text: str) -> ShiftedPartition:
    return ShiftedPartition(_parse_parts(text))


def transpose_partition(lam: Partition) -> Partition:
    return Partition(tuple(sum(1 for p in lam.parts if p >= j) for j in range(1, lam.parts[0] + 1)))


def partitions_of(n: int, largest: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    for parts in _partitions(n, n if largest is None else largest):
        yield Partition(parts)


def _partitions(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def strict_partitions_of(n: int) -> Iterator[ShiftedPartition]:
    for parts in _strict(n, n):
        yield ShiftedPartition(parts)


def _strict(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _strict(n - first, first - 1):
            yield (first,) + rest
