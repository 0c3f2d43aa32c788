from fractions import Fraction
import pytest

from src.app.errors import (
    InvalidInputError,
    InvalidQuiverError,
    InvalidRelationError,
    NonConvexError,
    QuiverFormatError,
)
from src.app.quiver.algebra import build_algebra
from src.app.quiver.families import (
    arrow_path,
    box_vertex,
    named_family,
    parse_family,
    shifted_staircase,
    staircase,
    transpose_relabelling,
)
from src.app.quiver.partitions import Partition, ShiftedPartition, partitions_of, transpose_partition
from src.app.quiver.quiver import Arrow, Path, Quiver, RelationIdeal, relation
from src.app.quiver.quiver_format import emit_quiver_text, read_quiver_text
from src.app.quiver.structure import (
    convex_restriction,
    find_nonconvex_path,
    is_convex,
    restrict_disconnected,
    vertex_quotient,
)


LAMBDA4 = named_family("lambda", (4,))


def _counts(algebra):
    return algebra.n, len(algebra.quiver.arrows), len(algebra.relations), algebra.dimension


def _brute_force_dimension(algebra):
    """Rank of the path space modulo the ideal, computed independently over Fractions."""
    quiver = algebra.quiver
    total = 0
    for i in quiver.vertices:
        for j in quiver.vertices:
            paths = [p for p in quiver.paths_from(i) if p.target == j]
            if not paths:
                continue
            rows = []
            for rel in algebra.relations:
                for u in quiver.paths_from(i):
                    if u.target != rel.source:
                        continue
                    for w in quiver.paths_from(rel.target):
                        if w.target != j:
                            continue
                        row = {}
                        for c, p in rel.terms:
                            row[u + p + w] = row.get(u + p + w, 0) + c
                        rows.append([Fraction(row.get(p, 0)) for p in paths])
            total += len(paths) - _rank(rows, len(paths))
    return total


def _rank(rows, width):
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def test_linear_a2_has_dimension_3():
    assert named_family("linear_a", (2,)).dimension == 3


def test_staircase_332():
    algebra = staircase(Partition((3, 3, 2)))
    assert _counts(algebra)[:3] == (8, 10, 3)
    assert algebra.dimension == 27


def test_lambda4_basis():
    assert LAMBDA4.dim_between(1, 4) == 1
    assert LAMBDA4.dimension == 9
    assert [str(r) for r in LAMBDA4.relations] == ["1*alpha.mu + -1*beta.nu"]


def test_normal_form_identifies_commuting_paths():
    q = LAMBDA4.quiver
    left = LAMBDA4.normal_form(q.path(("alpha", "mu")))
    right = LAMBDA4.normal_form(q.path(("beta", "nu")))
    assert left == right


def test_single_row_staircase_is_linear():
    row = staircase(Partition((5,)))
    assert _counts(row) == _counts(named_family("linear_a", (5,)))


def test_commutative_square():
    square = staircase(Partition((2, 2)))
    assert _counts(square) == (4, 4, 1, 9)


def test_triangle_quiver():
    tri = shifted_staircase(ShiftedPartition((4, 3, 2, 1)))
    assert _counts(tri)[:3] == (10, 12, 3)


@pytest.mark.parametrize(
    "family, params, vertices, arrows, relations",
    [
        ("linear_a", (1,), 1, 0, 0),
        ("d", (5,), 5, 4, 0),
        ("lambda", (3,), 3, 2, 0),
        ("lambda", (6,), 6, 6, 1),
        ("a1", (2,), 2, 1, 0),
        ("a1", (4,), 4, 3, 1),
        ("grid", (2, 3), 6, 7, 2),
        ("triangle", (3,), 6, 6, 1),
        ("auslander_a", (3,), 6, 6, 3),
    ],
)
def test_named_families(family, params, vertices, arrows, relations):
    algebra = named_family(family, params)
    assert _counts(algebra)[:3] == (vertices, arrows, relations)


@pytest.mark.parametrize("family, params", [("d", (2,)), ("lambda", (2,)), ("a1", (1,)), ("grid", (1,)), ("nope", (3,))])
def test_named_family_rejects_bad_parameters(family, params):
    with pytest.raises(InvalidInputError):
        named_family(family, params)


def test_parse_family():
    assert parse_family("grid:2,4") == ("grid", (2, 4))
    with pytest.raises(InvalidInputError):
        parse_family("lambda")


@pytest.mark.parametrize(
    "algebra",
    [
        LAMBDA4,
        named_family("a1", (4,)),
        staircase(Partition((3, 2))),
        staircase(Partition((2, 2, 1))),
        shifted_staircase(ShiftedPartition((3, 2))),
        named_family("auslander_a", (3,)),
    ],
)
def test_degreewise_basis_matches_brute_force(algebra):
    assert algebra.dimension == _brute_force_dimension(algebra)


def test_build_rejects_cycles_and_loops():
    with pytest.raises(InvalidQuiverError):
        build_algebra(Quiver(2, (Arrow("a", 1, 2), Arrow("b", 2, 1))))
    with pytest.raises(InvalidQuiverError):
        build_algebra(Quiver(1, (Arrow("a", 1, 1),)))


def test_build_rejects_bad_relations():
    quiver = Quiver(3, (Arrow("a", 1, 2), Arrow("b", 2, 3), Arrow("c", 1, 3)))
    with pytest.raises(InvalidRelationError):
        build_algebra(quiver, RelationIdeal((relation((1, quiver.path(("c",)))),)))
    with pytest.raises(InvalidRelationError):
        build_algebra(quiver, RelationIdeal((relation((1, quiver.path(("a", "b"))), (1, quiver.path(("c",)))),)))
    with pytest.raises(InvalidRelationError):
        build_algebra(quiver, RelationIdeal((relation((1, Path(1, 3, ("b", "a")))),)))


def test_disconnected_quiver_needs_opt_out():
    quiver = Quiver(2, ())
    with pytest.raises(InvalidQuiverError):
        build_algebra(quiver)
    assert build_algebra(quiver, require_connected=False).dimension == 2


@pytest.mark.parametrize("n", range(1, 8))
def test_transpose_shares_counts(n):
    for lam in partitions_of(n):
        assert _counts(staircase(lam)) == _counts(staircase(transpose_partition(lam)))


@pytest.mark.parametrize("parts", [(3, 2), (3, 3, 2), (4, 1, 1), (2, 2, 1)])
def test_transpose_relabelling_maps_arrows_to_arrows(parts):
    lam = Partition(parts)
    mapping = transpose_relabelling(lam)
    ours = staircase(lam).quiver
    theirs = staircase(transpose_partition(lam)).quiver
    moved = sorted((mapping[a.source], mapping[a.target]) for a in ours.arrows)
    assert moved == sorted((a.source, a.target) for a in theirs.arrows)
    assert sorted(mapping.values()) == list(ours.vertices)


def test_transpose_relabelling_small():
    assert transpose_relabelling(Partition((2, 1))) == {1: 1, 2: 3, 3: 2}


def test_convex_restriction_of_shifted_staircases():
    big = ShiftedPartition((5, 3, 1))
    small = ShiftedPartition((3, 1))
    algebra = shifted_staircase(big)
    keep = [box_vertex(big, box) for box in small.boxes()]
    restricted = convex_restriction(algebra, keep)
    expected = shifted_staircase(small)
    assert _counts(restricted) == _counts(expected)
    assert restricted.quiver.labels == expected.quiver.labels


def test_nonconvex_set_is_rejected_with_witness():
    assert not is_convex(LAMBDA4, [1, 2, 4])
    witness = find_nonconvex_path(LAMBDA4, [1, 2, 4])
    assert witness is not None and (witness.source, witness.target) == (1, 4)
    with pytest.raises(NonConvexError) as err:
        convex_restriction(LAMBDA4, [1, 2, 4])
    assert 3 in err.value.vertices
    assert is_convex(LAMBDA4, [2, 4])
    assert convex_restriction(LAMBDA4, [2, 4]).n == 2


def test_vertex_quotient_splits_components():
    parts = vertex_quotient(named_family("lambda", (5,)), 4)
    assert [p.n for p in parts] == [3, 1]
    assert len(parts[0].relations) == 0
    assert len(parts[0].quiver.arrows) == 2


def test_vertex_quotient_keeps_partial_relations():
    tri = named_family("a1", (4,))
    (rest,) = vertex_quotient(tri, 4)
    assert len(rest.relations) == 1
    assert rest.dimension == named_family("a1", (3,)).dimension


def test_vertex_quotient_turns_half_a_commutativity_into_a_zero_relation():
    square = staircase(Partition((2, 2)))
    (rest,) = vertex_quotient(square, 2)
    assert rest.n == 3
    assert [r.is_monomial for r in rest.relations] == [True]
    assert rest.dimension == 5


def test_restrict_disconnected_keeps_one_algebra():
    whole = restrict_disconnected(named_family("lambda", (5,)), 4)
    assert whole.n == 4
    assert len(whole.quiver.components()) == 2


def test_quiver_text_round_trip():
    for algebra in (LAMBDA4, staircase(Partition((3, 3, 2))), named_family("auslander_a", (3,))):
        text = emit_quiver_text(algebra)
        back = read_quiver_text(text)
        assert emit_quiver_text(back) == text
        assert back.dimension == algebra.dimension
        assert not back.relations.minimality_trusted


def test_quiver_text_errors():
    with pytest.raises(QuiverFormatError):
        read_quiver_text("arrow a 1 2\n")
    with pytest.raises(QuiverFormatError) as err:
        read_quiver_text("vertices 2\narrow a 1\n")
    assert err.value.line_no == 2
    with pytest.raises(InvalidQuiverError):
        read_quiver_text("vertices 2\narrow a 1 2\narrow b 2 1\n")


def test_quiver_text_relation_syntax():
    algebra = read_quiver_text("vertices 3\narrow a 1 2\narrow b 2 3\n# zero relation\nrel a.b\n")
    assert algebra.dimension == 5


def test_arrow_path_follows_boxes():
    lam = Partition((2, 2))
    q = staircase(lam).quiver
    path = arrow_path(q, *(box_vertex(lam, b) for b in [(1, 1), (1, 2), (2, 2)]))
    assert path.arrows == ("a1_1", "b1_2")


def test_every_path_has_a_normal_form():
    algebra = staircase(Partition((3, 2)))
    for v in algebra.vertices:
        for path in algebra.quiver.paths_from(v):
            combo = algebra.normal_form(path)
            assert all(b in algebra.basis(path.source, path.target) for b in combo)
