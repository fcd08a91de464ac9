import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homassoc import (Cochain, cochain_space_basis, identity_cochain, is_equivariant, mu_cochain,
                      random_cochain)
from homassoc.cochain import CochainError, equivariance_matrix, zero_cochain
from homassoc.linalg import rank


def test_identity_and_mu_are_equivariant(twisted):
    assert is_equivariant(identity_cochain(twisted))
    assert is_equivariant(mu_cochain(twisted))


def test_constant_map_is_not_equivariant(A2):
    f = Cochain(A2, [[1, 0], [1, 0]])            # f(e_i) = e1
    assert not is_equivariant(f)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_untwisted_space_is_full(DN, n):
    assert len(cochain_space_basis(DN, n)) == 2 ** (n + 1)


def test_space_dimensions_two_dimensional_example(A2):
    # kernel of the equivariance map, recomputed here by rank
    for n in range(1, 5):
        M = equivariance_matrix(A2, n)
        assert len(cochain_space_basis(A2, n)) == 2 ** (n + 1) - rank(M.tolist())
    assert [len(cochain_space_basis(A2, n)) for n in range(1, 6)] == [2, 4, 8, 16, 32]


def test_space_dimensions_scaled_twist():
    from homassoc import twisted_dual_numbers
    A = twisted_dual_numbers(2)
    assert [len(cochain_space_basis(A, n)) for n in range(1, 6)] == [2, 3, 4, 5, 6]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_basis_vectors_are_independent_and_equivariant(twisted, n):
    sp = cochain_space_basis(twisted, n)
    assert rank([list(v) for v in sp.basis.vectors]) == len(sp)
    assert all(is_equivariant(c) for c in sp.cochains())


def test_random_cochain_is_deterministic_and_equivariant(A2):
    sp = cochain_space_basis(A2, 2)
    assert random_cochain(sp, 7) == random_cochain(sp, 7)
    assert random_cochain(sp, 0, coeff_bound=0).is_zero()
    for seed in range(100):
        assert is_equivariant(random_cochain(sp, seed))


def test_equivariant_space_closed_under_linear_combinations(TD):
    sp = cochain_space_basis(TD, 3)
    for seed in range(10):
        f, g = random_cochain(sp, [seed, 0]), random_cochain(sp, [seed, 1])
        assert is_equivariant(f + g) and is_equivariant(-3 * f + g * 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.data())
def test_flatten_round_trip(n, data):
    from homassoc import example_2d
    A = example_2d()
    vec = data.draw(st.lists(st.integers(-5, 5), min_size=2 ** (n + 1), max_size=2 ** (n + 1)))
    f = Cochain.from_vector(A, n, vec)
    assert f.vector() == vec
    # row-major: the last axis (output) varies fastest
    assert f.coeffs[(0,) * n + (1,)] == vec[1]


def test_evaluation_convention(A2):
    mu = mu_cochain(A2)
    assert mu([1, 0], [0, 1]) == [0, 1]
    assert mu([1, 0], [1, 0]) == [1, 0]


def test_json_round_trip(A2):
    f = random_cochain(cochain_space_basis(A2, 2), 3) * 1
    g = Cochain.from_dict(A2, f.to_dict())
    assert g == f
    with pytest.raises(CochainError):
        Cochain.from_dict(A2, {"degree": 2, "coeffs": [[1, 0], [0, 1]]})


def test_zero_degree_rejected(A2):
    with pytest.raises(CochainError):
        cochain_space_basis(A2, 0)
    assert zero_cochain(A2, 2).is_zero()
