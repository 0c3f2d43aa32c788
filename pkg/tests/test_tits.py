import numpy as np
import pytest

from src.app.errors import InvalidInputError, SearchTooLargeError
from src.app.quiver.families import named_family, shifted_staircase, staircase
from src.app.quiver.partitions import Partition, ShiftedPartition, partitions_of
from src.app.quiver.quiver_format import read_quiver_text
from src.app.tits.form import evaluate, evaluate_by_formula, gram_matrix_text, tits_form
from src.app.tits.search import (
    NOT_WEAKLY_POSITIVE,
    WEAKLY_POSITIVE,
    is_weakly_positive,
    search_nonnegativity_violation,
)
from src.app.classify.lists import classify_staircase


# Doubled Gram matrix of the (6,4) shifted staircase with the first row's
# last box listed after the second row.
SHIFTED_64_GRAM2 = [
    [2, -1, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, -1, 1, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, -1, 1, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, -1, 1, 0],
    [0, 0, 0, -1, 2, 0, 0, 0, -1, -1],
    [0, -1, 0, 0, 0, 2, -1, 0, 0, 0],
    [0, 1, -1, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 1, -1, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 1, -1, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 0, 0, 2],
]
SHIFTED_64_ORDER = [1, 2, 3, 4, 5, 7, 8, 9, 10, 6]

KRONECKER3 = "vertices 2\narrow x 1 2\narrow y 1 2\narrow z 1 2\n"


def test_shifted_64_gram_matches_displayed_matrix():
    q = tits_form(shifted_staircase(ShiftedPartition((6, 4))))
    m = q.matrix()
    idx = [v - 1 for v in SHIFTED_64_ORDER]
    assert m[np.ix_(idx, idx)].tolist() == SHIFTED_64_GRAM2


def test_linear_gram():
    q = tits_form(named_family("linear_a", (3,)))
    assert q.matrix().tolist() == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert gram_matrix_text(q) == " 2 -1  0\n-1  2 -1\n 0 -1  2"


def test_lambda4_form():
    q = tits_form(named_family("lambda", (4,)))
    assert q.gram2[0][3] == 1
    assert evaluate(q, (1, 1, 1, 1)) == 1
    for i in range(4):
        unit = [0] * 4
        unit[i] = 1
        assert evaluate(q, unit) == 1


def test_evaluate_rejects_wrong_length():
    q = tits_form(named_family("lambda", (4,)))
    with pytest.raises(InvalidInputError):
        evaluate(q, (1, 1))


@pytest.mark.parametrize(
    "algebra",
    [
        named_family("lambda", (6,)),
        named_family("auslander_a", (4,)),
        staircase(Partition((3, 3, 2))),
        shifted_staircase(ShiftedPartition((5, 3, 1))),
    ],
)
def test_evaluation_matches_sum_formula(algebra):
    q = tits_form(algebra)
    rng = np.random.default_rng(7)
    for _ in range(1000):
        v = [int(x) for x in rng.integers(-5, 6, size=q.n)]
        assert evaluate(q, v) == evaluate_by_formula(q, v)


def test_witness_vectors_from_the_shifted_family():
    q65 = tits_form(shifted_staircase(ShiftedPartition((6, 5))))
    assert evaluate(q65, (2, 1, 1, 2, 3, 2, 1, 2, 3, 3, 3)) == 8
    q531 = tits_form(shifted_staircase(ShiftedPartition((5, 3, 1))))
    assert evaluate(q531, (1, 1, 3, 4, 2, 2, 3, 3, 2)) == 1


def test_kronecker_form_is_indefinite():
    q = tits_form(read_quiver_text(KRONECKER3))
    assert not q.minimality_verified
    assert evaluate(q, (1, 1)) == -1
    verdict = is_weakly_positive(q)
    assert verdict.status == NOT_WEAKLY_POSITIVE
    assert verdict.certificate == (1, 1)
    assert search_nonnegativity_violation(q, 2) == (1, 1)


def test_weakly_positive_examples():
    assert is_weakly_positive(tits_form(staircase(Partition((6, 2))))).status == WEAKLY_POSITIVE
    assert is_weakly_positive(tits_form(staircase(Partition((9,))))).weakly_positive


@pytest.mark.parametrize(
    "algebra",
    [staircase(Partition((2, 2, 2, 2, 2))), shifted_staircase(ShiftedPartition((7, 2)))],
)
def test_not_weakly_positive_with_certificate(algebra):
    q = tits_form(algebra)
    verdict = is_weakly_positive(q)
    assert verdict.status == NOT_WEAKLY_POSITIVE
    v = verdict.certificate
    assert all(x >= 0 for x in v) and any(v)
    assert evaluate(q, v) <= 0


def test_tame_concealed_form_has_a_radical_vector_but_no_small_negative():
    q = tits_form(shifted_staircase(ShiftedPartition((7, 2))))
    assert evaluate(q, is_weakly_positive(q).certificate) == 0
    assert search_nonnegativity_violation(q, 2) is None


def test_shifted_64_has_no_negative_vector_in_a_small_box():
    q = tits_form(shifted_staircase(ShiftedPartition((6, 4))))
    assert search_nonnegativity_violation(q, 3) is None


def test_positive_definite_form_has_no_violation():
    q = tits_form(named_family("linear_a", (3,)))
    assert search_nonnegativity_violation(q, 5) is None


def test_search_caps():
    q = tits_form(named_family("linear_a", (5,)))
    with pytest.raises(SearchTooLargeError):
        is_weakly_positive(q, search_cap=4)
    with pytest.raises(SearchTooLargeError):
        search_nonnegativity_violation(q, 9, box_cap=1000)
    with pytest.raises(InvalidInputError):
        search_nonnegativity_violation(q, 0)


def test_bound_twelve_agrees_with_bound_six():
    for algebra in (staircase(Partition((4, 3, 1))), staircase(Partition((3, 3))), named_family("lambda", (7,))):
        q = tits_form(algebra)
        assert is_weakly_positive(q, bound=6).status == is_weakly_positive(q, bound=12).status


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 9))
def test_weak_positivity_agrees_with_staircase_list(n):
    for lam in partitions_of(n):
        verdict = is_weakly_positive(tits_form(staircase(lam)))
        assert verdict.weakly_positive == classify_staircase(lam).tau_finite, str(lam)
