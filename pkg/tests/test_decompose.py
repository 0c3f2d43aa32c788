import numpy as np
import pytest

from src.app.modules.decompose import decompose, is_indecomposable, is_isomorphic
from src.app.modules.field import prime_field
from src.app.modules.representation import Representation, conjugate, direct_sum
from src.app.modules.standard import (
    indecomposable_injective,
    indecomposable_projective,
    simple_module,
)
from src.app.quiver.families import named_family
from src.app.quiver.quiver_format import read_quiver_text


P = 101
LAMBDA4 = named_family("lambda", (4,))


def _random_change(field, dim, rng):
    while True:
        m = field.random((dim, dim), rng) if dim else field.identity(0)
        if dim == 0 or field.is_invertible(m):
            return m


def _scrambled(module, rng):
    field = module.field
    changes = {v: _random_change(field, module.dim_at(v), rng) for v in module.algebra.vertices}
    return conjugate(module, changes)


def _multiset(factors):
    return sorted((m.dims, k) for m, k in factors)


def test_decompose_groups_isomorphic_summands():
    p1 = indecomposable_projective(LAMBDA4, 1, P)
    s4 = simple_module(LAMBDA4, 4, P)
    factors = decompose(direct_sum([p1, s4, p1]))
    assert _multiset(factors) == [((0, 0, 0, 1), 1), ((1, 1, 1, 1), 2)]


def test_zero_module_has_no_factors():
    s1 = simple_module(LAMBDA4, 1, P)
    assert decompose(direct_sum([], LAMBDA4, P)) == []
    assert not is_indecomposable(direct_sum([], LAMBDA4, P))
    assert is_indecomposable(s1)


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_projectives_and_injectives_are_indecomposable(i):
    assert is_indecomposable(indecomposable_projective(LAMBDA4, i, P))
    assert is_indecomposable(indecomposable_injective(LAMBDA4, i, P))


def test_radical_of_p1_is_glued_at_the_sink():
    from src.app.modules.presentation import radical_and_top

    rad, _ = radical_and_top(indecomposable_projective(LAMBDA4, 1, P))
    assert is_indecomposable(rad)


def test_isomorphism_checks():
    assert is_isomorphic(indecomposable_projective(LAMBDA4, 4, P), simple_module(LAMBDA4, 4, P))
    assert not is_isomorphic(indecomposable_projective(LAMBDA4, 2, P), indecomposable_projective(LAMBDA4, 3, P))
    assert not is_isomorphic(simple_module(LAMBDA4, 1, P), simple_module(LAMBDA4, 2, P))


def test_conjugated_module_is_isomorphic():
    rng = np.random.default_rng(7)
    p1 = indecomposable_projective(LAMBDA4, 1, P)
    twisted = _scrambled(direct_sum([p1, p1]), rng)
    assert is_isomorphic(twisted, direct_sum([p1, p1]))
    assert _multiset(decompose(twisted)) == [((1, 1, 1, 1), 2)]


def _random_sum(rng):
    pool = [indecomposable_projective(LAMBDA4, i, P) for i in LAMBDA4.vertices]
    pool += [indecomposable_injective(LAMBDA4, i, P) for i in (1, 2, 3)]
    pool += [simple_module(LAMBDA4, i, P) for i in (2, 3)]
    picks = rng.choice(len(pool), size=int(rng.integers(1, 4)), replace=True)
    summands = [pool[int(k)] for k in picks]
    return summands, _scrambled(direct_sum(summands), rng)


def _check_rebuild(rng):
    summands, module = _random_sum(rng)
    factors = decompose(module)
    rebuilt = direct_sum([f for f, k in factors for _ in range(k)])
    assert rebuilt.dims == module.dims
    assert is_isomorphic(rebuilt, module)
    assert sum(k for _, k in factors) == len(summands)


def test_random_sums_rebuild():
    rng = np.random.default_rng(2024)
    for _ in range(20):
        _check_rebuild(rng)


@pytest.mark.slow
def test_random_sums_rebuild_many():
    rng = np.random.default_rng(99)
    for _ in range(500):
        _check_rebuild(rng)


def test_small_field_uses_exhaustive_search():
    p1 = indecomposable_projective(LAMBDA4, 1, 2)
    rng = np.random.default_rng(3)
    twisted = _scrambled(p1, rng)
    assert prime_field(2).prime == 2
    assert is_isomorphic(p1, twisted)


@pytest.mark.parametrize("prime", [101, 32003])
def test_sum_of_two_simples_splits(prime):
    s2 = simple_module(LAMBDA4, 2, prime)
    s3 = simple_module(LAMBDA4, 3, prime)
    factors = decompose(direct_sum([s2, s3]))
    assert _multiset(factors) == [((0, 0, 1, 0), 1), ((0, 1, 0, 0), 1)]


@pytest.mark.parametrize("prime", [101, 32003])
def test_one_dimensional_modules_are_indecomposable(prime):
    for i in LAMBDA4.vertices:
        assert is_indecomposable(simple_module(LAMBDA4, i, prime))


KRONECKER = read_quiver_text("vertices 2\narrow x 1 2\narrow y 1 2\n")


def _kronecker(prime, y):
    field = prime_field(prime)
    return Representation(KRONECKER, prime, (2, 2), {"x": field.identity(2), "y": field.matrix(y)})


@pytest.mark.parametrize("prime", [2, 3, 101])
def test_local_endomorphisms_with_dimension_divisible_by_p(prime):
    # End is K[y]/(y^2); total dimension 4
    module = _kronecker(prime, [[0, 1], [0, 0]])
    assert is_indecomposable(module)
    assert decompose(module)[0][0].dims == (2, 2)


@pytest.mark.parametrize("prime", [2, 101])
def test_kronecker_with_zero_second_arrow_splits(prime):
    module = _kronecker(prime, [[0, 0], [0, 0]])
    assert _multiset(decompose(module)) == [((1, 1), 2)]
