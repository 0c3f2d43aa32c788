from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from src.app.errors import InvalidInputError, QuiverFormatError
from src.app.quiver.algebra import BoundQuiverAlgebra, build_algebra
from src.app.quiver.quiver import Arrow, Path, Quiver, Relation, RelationIdeal


def emit_quiver_text(algebra: BoundQuiverAlgebra) -> str:
    """Serialise to the text quiver format.

    ::

        vertices 4
        arrow alpha 1 2
        ...
        rel 1*alpha.mu + -1*beta.nu
    """
    quiver = algebra.quiver
    lines = [f"vertices {quiver.n}"]
    if quiver.labels:
        lines.extend(f"label {v} {quiver.label(v)}" for v in quiver.vertices)
    lines.extend(f"arrow {a.id} {a.source} {a.target}" for a in quiver.arrows)
    lines.extend(f"rel {rel}" for rel in algebra.relations)
    return "\n".join(lines) + "\n"


def read_quiver_text(text: str, trusted: bool = False) -> BoundQuiverAlgebra:
    """Parse the text quiver format. Relations from text are not trusted to be minimal."""
    n: int | None = None
    labels: dict[int, str] = {}
    arrows: List[Arrow] = []
    raw_relations: List[Tuple[int, str]] = []

    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "vertices":
            if n is not None:
                raise QuiverFormatError("repeated vertices header", line_no)
            n = _int(rest, line_no)
        elif keyword == "label":
            vertex, _, label = rest.partition(" ")
            labels[_int(vertex, line_no)] = label.strip()
        elif keyword == "arrow":
            fields = rest.split()
            if len(fields) != 3:
                raise QuiverFormatError("expected 'arrow id src dst'", line_no)
            arrows.append(Arrow(fields[0], _int(fields[1], line_no), _int(fields[2], line_no)))
        elif keyword == "rel":
            raw_relations.append((line_no, rest))
        else:
            raise QuiverFormatError(f"unknown keyword {keyword!r}", line_no)

    if n is None:
        raise QuiverFormatError("missing 'vertices n' header")
    label_tuple: Tuple[str, ...] = ()
    if labels:
        if sorted(labels) != list(range(1, n + 1)):
            raise QuiverFormatError("labels must cover every vertex")
        label_tuple = tuple(labels[v] for v in range(1, n + 1))
    quiver = Quiver(n, tuple(arrows), label_tuple)
    quiver.validate()

    gens = tuple(_parse_relation(quiver, body, line_no) for line_no, body in raw_relations)
    return build_algebra(quiver, RelationIdeal(gens, minimality_trusted=trusted))


def _int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise QuiverFormatError(f"expected an integer, got {token!r}", line_no) from None


def _parse_relation(quiver: Quiver, body: str, line_no: int) -> Relation:
    normalised = body.replace(" - ", " + -")
    terms: List[Tuple[Fraction, Path]] = []
    for chunk in normalised.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise QuiverFormatError(f"empty term in relation {body!r}", line_no)
        coeff_text, star, path_text = chunk.rpartition("*")
        if not star:
            coeff_text, path_text = "1", chunk
        coeff_text = coeff_text.strip()
        if coeff_text in ("", "+"):
            coeff_text = "1"
        elif coeff_text == "-":
            coeff_text = "-1"
        if path_text.startswith("-"):
            coeff_text = str(-Fraction(coeff_text))
            path_text = path_text[1:]
        try:
            coeff = Fraction(coeff_text)
        except (ValueError, ZeroDivisionError):
            raise QuiverFormatError(f"bad coefficient {coeff_text!r}", line_no) from None
        try:
            path = quiver.path(tuple(path_text.strip().split(".")))
        except InvalidInputError as exc:
            raise QuiverFormatError(str(exc), line_no) from None
        terms.append((coeff, path))
    return Relation(tuple(terms))
