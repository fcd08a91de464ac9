import pytest

from homassoc import HochschildComplex, cochain_space_basis, delta, homotopy, random_cochain
from homassoc.cochain import CochainError
from homassoc.ops import (bracket_leibniz_defect, correction_terms, circ_i, leibniz_defect,
                          leibniz_sign, sign, telescoping_sum)

PATTERNS = [(2, 2, 2), (1, 2, 2), (2, 1, 2), (2, 2, 3)]


def cocycle(cx, n, seed):
    return random_cochain(cx.cocycle_space(n), [seed, n, 99])


@pytest.fixture(scope="module")
def td_complex():
    from homassoc import twisted_dual_numbers
    return HochschildComplex(twisted_dual_numbers())


@pytest.fixture(scope="module")
def a2_complex():
    from homassoc import example_2d
    return HochschildComplex(example_2d())


@pytest.mark.parametrize("m,n,p", PATTERNS)
def test_correction_terms_sum_to_coboundary(td_complex, m, n, p):
    cx = td_complex
    A = cx.algebra
    for seed in range(3):
        f, g = cocycle(cx, m, seed), cocycle(cx, n, seed + 10)
        h = random_cochain(cochain_space_basis(A, p), [seed, 7])
        for i in range(1, p):
            for j in range(m + i, m + p):
                a, b, c = correction_terms(f, g, h, i, j)
                assert a + b + c == delta(circ_i(circ_i(h, f, i - 1), g, j - 1), check=False)


def test_correction_terms_index_range(td_complex):
    cx = td_complex
    f = g = cocycle(cx, 2, 0)
    h = random_cochain(cochain_space_basis(cx.algebra, 2), 0)
    with pytest.raises((ValueError, CochainError)):
        correction_terms(f, g, h, 0, 2)
    with pytest.raises((ValueError, CochainError)):
        correction_terms(f, g, h, 1, 5)


@pytest.mark.parametrize("m,n,p", PATTERNS + [(1, 1, 2), (3, 2, 2)])
def test_telescoping_relation(td_complex, m, n, p):
    cx = td_complex
    for seed in range(3):
        f, g, h = cocycle(cx, m, seed), cocycle(cx, n, seed + 1), cocycle(cx, p, seed + 2)
        for i in range(p):
            for j in range(m + i, m + p):
                assert telescoping_sum(f, g, h, i, j).is_zero()


@pytest.mark.parametrize("m,n,p", PATTERNS)
def test_homotopy_coboundary_formula(td_complex, m, n, p):
    cx = td_complex
    for seed in range(4):
        f, g, h = cocycle(cx, m, seed), cocycle(cx, n, seed + 1), cocycle(cx, p, seed + 2)
        assert delta(homotopy(f, g, h), check=False) == sign((m - 1) * n) * leibniz_defect(f, g, h)


@pytest.mark.parametrize("m,n,p", PATTERNS)
def test_leibniz_defect_is_signed_coboundary_of_homotopy(td_complex, m, n, p):
    cx = td_complex
    eps = leibniz_sign(m, n, p)
    nonzero = False
    for seed in range(6):
        f, g, h = cocycle(cx, m, seed), cocycle(cx, n, seed + 1), cocycle(cx, p, seed + 2)
        lhs = bracket_leibniz_defect(f, g, h)
        dH = delta(homotopy(f, g, h), check=False)
        assert lhs == eps * dH
        assert cx.is_coboundary(lhs)
        nonzero = nonzero or not lhs.is_zero()
    # the sign is actually pinned down by the data, not vacuously satisfied
    assert nonzero


def test_leibniz_sign_depends_on_degrees():
    assert [leibniz_sign(*p) for p in PATTERNS] == [1, -1, 1, -1]


def test_leibniz_defect_vanishes_on_two_dimensional_example(a2_complex):
    cx = a2_complex
    for seed in range(4):
        f, g, h = cocycle(cx, 2, seed), cocycle(cx, 2, seed + 1), cocycle(cx, 2, seed + 2)
        assert bracket_leibniz_defect(f, g, h).is_zero()
