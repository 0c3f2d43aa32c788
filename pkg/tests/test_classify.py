import pytest

from src.app.classify.cross_check import cross_check
from src.app.classify.lists import (
    classify_family,
    classify_grid,
    classify_shifted,
    classify_staircase,
    classify_triangle,
    shifted_type,
)
from src.app.classify.reduction import (
    NON_SINCERE,
    NONE,
    NONE_UP_TO_CAP,
    SINCERE,
    SINCERE_WITNESS,
    UNKNOWN,
    nonsincere_reduction,
    quotient_tree,
    sincere_search,
    tau_finiteness_via_tits,
)
from src.app.classify.separation import predecessor_free_components, separation_property
from src.app.classify.verdicts import (
    INCONCLUSIVE,
    REP_FINITE,
    TAME_CONCEALED,
    TAME_NONCONCEALED,
    TAU_FINITE,
    TAU_INFINITE,
    WILD,
    verdict,
    verdict_from_json,
    verdict_to_json,
)
from src.app.errors import InvalidInputError
from src.app.quiver.families import named_family, shifted_staircase, staircase
from src.app.quiver.partitions import (
    Partition,
    ShiftedPartition,
    partitions_of,
    transpose_partition,
)
from src.app.quiver.quiver_format import read_quiver_text
from src.app.quiver.structure import restrict_disconnected
from src.app.tau.catalog import ModuleCatalog


P = 101
KRONECKER3 = "vertices 2\narrow x 1 2\narrow y 1 2\narrow z 1 2\n"


@pytest.mark.parametrize("parts,finite,rule", [
    ((5, 1, 1), True, "staircase-hook"),
    ((7,), True, "staircase-hook"),
    ((6, 2), True, "staircase-two-row"),
    ((2, 2, 1, 1, 1), True, "staircase-two-column"),
    ((3, 3, 2), False, "staircase-exception"),
    ((4, 3, 1), False, "staircase-exception"),
    ((3, 3), True, "staircase-small"),
    ((3, 3, 3), False, "staircase-large"),
    ((2, 2, 2, 2, 2), False, "staircase-large"),
])
def test_staircase_list(parts, finite, rule):
    v = classify_staircase(Partition(parts))
    assert v.tau_finite is finite
    assert v.evidence[0].rule == rule


def test_staircase_summary():
    assert classify_staircase(Partition((3, 3, 2))).summary() == "tau-infinite (staircase exception list)"
    assert classify_staircase(Partition((6, 2))).summary() == "tau-finite (staircase (n-2,2))"


@pytest.mark.parametrize("n", range(1, 11))
def test_staircase_list_is_closed_under_transposition(n):
    for lam in partitions_of(n):
        assert classify_staircase(lam).tau_finite == classify_staircase(transpose_partition(lam)).tau_finite, str(lam)


@pytest.mark.parametrize("parts,kind", [
    ((5,), REP_FINITE),
    ((4, 1), REP_FINITE),
    ((5, 3), REP_FINITE),
    ((4, 2, 1), REP_FINITE),
    ((7, 2), TAME_CONCEALED),
    ((5, 2, 1), TAME_CONCEALED),
    ((6, 4), TAME_NONCONCEALED),
    ((4, 3, 2, 1), TAME_NONCONCEALED),
    ((8, 2), WILD),
    ((5, 3, 1), WILD),
])
def test_shifted_types(parts, kind):
    assert shifted_type(ShiftedPartition(parts)) == kind


def test_shifted_verdicts():
    concealed = classify_shifted(ShiftedPartition((6, 3)))
    assert concealed.summary() == "tame concealed (shifted tame concealed list)"
    assert concealed.tau_finite is False
    assert classify_shifted(ShiftedPartition((4, 3))).tau_finite is True
    assert classify_shifted(ShiftedPartition((6, 4))).evidence[0].note


def test_grid_and_triangle():
    assert classify_grid(2, 4).tau_finite is True
    assert classify_grid(4, 2).tau_finite is True
    assert classify_grid(1, 9).tau_finite is True
    assert classify_grid(3, 3).tau_finite is False
    assert classify_grid(2, 5).tau_finite is False
    assert classify_grid(2, 3).evidence[0].children[0].tau_finite is True
    assert classify_triangle(3).tau_finite is True
    assert classify_triangle(4).tau_finite is False
    assert classify_triangle(4).evidence[0].children[0].status == TAME_NONCONCEALED


def test_family_verdicts():
    assert classify_family("linear_a", (3,)).evidence[0].rule == "linear_a-enumerated"
    assert classify_family("grid", (2, 2)).tau_finite is True
    assert classify_family("triangle", (5,)).tau_finite is False
    with pytest.raises(InvalidInputError):
        classify_family("grid", (2,))
    with pytest.raises(InvalidInputError):
        classify_family("kronecker", (3,))


def test_auslander_algebra_goes_through_the_tits_route():
    v = classify_family("auslander_a", (3,))
    assert v.status == TAU_FINITE
    assert v.evidence[0].rule == "tits-weakly-positive"


def test_verdict_json_round_trip():
    v = classify_grid(3, 3)
    assert verdict_from_json(verdict_to_json(v)) == v
    with pytest.raises(InvalidInputError):
        verdict_from_json("{not json")
    with pytest.raises(InvalidInputError):
        verdict_from_json('{"subject": "x"}')


def test_verdict_rejects_unknown_status():
    with pytest.raises(InvalidInputError):
        verdict("x", "finite-ish", "rule", "anchor")
    assert verdict("x", INCONCLUSIVE, "rule", "anchor").tau_finite is None


def test_predecessor_free_components():
    lambda4 = named_family("lambda", (4,))
    assert predecessor_free_components(lambda4.quiver, 1) == [(2, 3, 4)]
    assert predecessor_free_components(lambda4.quiver, 2) == [(3, 4)]
    assert predecessor_free_components(lambda4.quiver, 4) == []


@pytest.mark.parametrize("algebra", [
    named_family("lambda", (4,)),
    named_family("linear_a", (5,)),
    shifted_staircase(ShiftedPartition((4, 3, 2, 1))),
    staircase(Partition((3, 2))),
])
def test_separation_holds(algebra):
    assert separation_property(algebra, P).holds


def test_separation_fails_for_parallel_arrows():
    report = separation_property(read_quiver_text(KRONECKER3), P)
    assert not report.holds
    assert report.failures() == [1]


def test_tits_route():
    infinite = tau_finiteness_via_tits(staircase(Partition((2, 2, 2, 2, 2))), prime=P)
    assert infinite.status == TAU_INFINITE
    assert infinite.evidence[0].certificates
    finite = tau_finiteness_via_tits(named_family("lambda", (4,)), prime=P)
    assert finite.status == TAU_FINITE
    assert "separation property verified" in finite.evidence[0].note


def test_tits_route_needs_a_certificate():
    lambda4 = named_family("lambda", (4,))
    v = tau_finiteness_via_tits(lambda4, None)
    assert v.status == INCONCLUSIVE
    assert v.evidence[0].rule == "no-simple-connectedness"
    with pytest.raises(InvalidInputError):
        tau_finiteness_via_tits(lambda4, "trust-me")


def test_tits_route_on_parallel_arrows():
    kronecker = read_quiver_text(KRONECKER3)
    assert tau_finiteness_via_tits(kronecker, prime=P).evidence[0].rule == "separation-failed"
    asserted = tau_finiteness_via_tits(kronecker, "asserted")
    assert asserted.status == TAU_INFINITE
    assert asserted.evidence[0].certificates == ((1, 1),)


def _all_nodes(v):
    yield v
    for e in v.evidence:
        for child in e.children:
            yield from _all_nodes(child)


def test_quotient_tree_of_the_square():
    tree = quotient_tree(staircase(Partition((2, 2))), 2, "square", P)
    nodes = list(_all_nodes(tree))
    assert len(tree.evidence[0].children) == 4
    assert all(n.tau_finite is True for n in nodes)
    assert any(n.subject == "square/e1" for n in nodes)


def test_nonsincere_reduction_refuses_without_evidence():
    lambda4 = named_family("lambda", (4,))
    for status in (SINCERE, UNKNOWN):
        v = nonsincere_reduction(lambda4, status, 2, prime=P)
        assert v.status == INCONCLUSIVE
        assert v.evidence[0].note == status
    with pytest.raises(InvalidInputError):
        nonsincere_reduction(lambda4, "probably", 2)


def test_nonsincere_reduction():
    algebra = restrict_disconnected(named_family("lambda", (5,)), 4)
    v = nonsincere_reduction(algebra, NON_SINCERE, 2, "lambda5/e4", P)
    assert v.status == TAU_FINITE
    assert v.evidence[0].children
    exhausted = nonsincere_reduction(algebra, NON_SINCERE, 0)
    assert exhausted.evidence[0].rule == "budget-exhausted"


def test_sincere_search():
    found = sincere_search(named_family("lambda", (4,)), prime=P)
    assert found.status == SINCERE_WITNESS
    assert found.source == "P1"
    assert found.witness.dims == (1, 1, 1, 1)
    assert sincere_search(named_family("linear_a", (4,)), prime=P).source == "P1"


def test_sincere_search_without_witness():
    lambda5 = named_family("lambda", (5,))
    assert sincere_search(restrict_disconnected(lambda5, 4), prime=P).status == NONE
    assert sincere_search([named_family("linear_a", (2,))] * 2).status == NONE
    a1 = named_family("a1", (3,))
    assert sincere_search(a1, prime=P).status == NONE_UP_TO_CAP
    assert sincere_search(a1, catalog=ModuleCatalog(a1, P)).status == NONE_UP_TO_CAP
    with pytest.raises(InvalidInputError):
        sincere_search(named_family("lambda", (4,)), dim_cap=2)


def test_cross_check_on_lambda4():
    listed = classify_family("lambda", (4,))
    report = cross_check(listed, named_family("lambda", (4,)), prime=P)
    assert report.agrees
    assert report.counts.total == 46
    assert "enumeration: 1 4 10 16 15 | 46" in report.lines()
    assert report.lines()[-1] == "agreement: yes"


def test_cross_check_on_an_infinite_staircase():
    lam = Partition((2, 2, 2, 2, 2))
    report = cross_check(classify_staircase(lam), staircase(lam), prime=P)
    assert report.agrees
    assert report.counts is None
    assert any(line.startswith("  certificate:") for line in report.lines())


def test_cross_check_reports_the_cap():
    listed = classify_family("lambda", (4,))
    report = cross_check(listed, named_family("lambda", (4,)), node_cap=5, prime=P)
    assert not report.agrees
    assert report.enumeration_note.startswith("cap reached")


@pytest.mark.slow
@pytest.mark.parametrize("n", range(2, 10))
def test_shifted_list_agrees_with_the_tits_route(n):
    from src.app.quiver.partitions import strict_partitions_of

    for lam in strict_partitions_of(n):
        listed = classify_shifted(lam)
        tits = tau_finiteness_via_tits(shifted_staircase(lam), prime=P)
        assert tits.tau_finite == listed.tau_finite, str(lam)
