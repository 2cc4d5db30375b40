"""Co-Hochschild cohomology of the completed function coalgebra.

The frozen dimension table is the independently known answer: the
cohomology in slot count k and total degree N is concentrated in N = k,
where it is the full wedge power Lambda^k(g); the invariant refinement
picks out Lambda^k(g)^g.
"""
from math import comb

import pytest

from starlift import cohomology_dimension, load_lie_algebra
from starlift.cohochschild import invariant_basis, monomials


@pytest.fixture(scope="module")
def abelian1():
    return load_lie_algebra({"dim": 1, "basis": ["x"], "brackets": []})[0]


def test_monomials_are_lex_sorted_and_complete():
    monos = monomials(3, 2)
    assert monos == sorted(monos)
    assert len(monos) == comb(3 + 2 - 1, 2)
    assert all(sum(m) == 2 for m in monos)


def test_monomials_degree_zero():
    assert monomials(2, 0) == [(0, 0)]


def test_bad_arguments_rejected(sl2):
    alg, _ = sl2
    with pytest.raises(ValueError):
        cohomology_dimension(alg, 0, 2)
    with pytest.raises(ValueError):
        cohomology_dimension(alg, 1, 0)


def test_degree_below_slots_is_zero(sl2):
    alg, _ = sl2
    assert cohomology_dimension(alg, 3, 2) == 0


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_concentration_sl2(sl2, k, N):
    alg, _ = sl2
    if N < k:
        assert cohomology_dimension(alg, k, N) == 0
    elif N == k:
        assert cohomology_dimension(alg, k, N) == comb(3, k)
    else:
        assert cohomology_dimension(alg, k, N) == 0


def test_concentration_small_algebras(abelian1, nonabelian2):
    na, _ = nonabelian2
    for alg in (abelian1, na):
        for k in (1, 2, 3):
            for N in range(k, 5):
                expected = comb(alg.dim, k) if N == k else 0
                assert cohomology_dimension(alg, k, N) == expected


def test_invariant_refinement_sl2(sl2):
    alg, _ = sl2
    # Lambda^1(sl2)^g = 0, Lambda^2(sl2)^g = 0, Lambda^3(sl2)^g = Q
    assert cohomology_dimension(alg, 1, 1, invariant_only=True) == 0
    assert cohomology_dimension(alg, 2, 2, invariant_only=True) == 0
    assert cohomology_dimension(alg, 3, 3, invariant_only=True) == 1
    assert cohomology_dimension(alg, 2, 4, invariant_only=True) == 0


def test_invariant_refinement_nonabelian2(nonabelian2):
    alg, _ = nonabelian2
    # no ad-invariant vectors or bivectors in the affine line algebra
    assert cohomology_dimension(alg, 1, 1, invariant_only=True) == 0
    assert cohomology_dimension(alg, 2, 2, invariant_only=True) == 0


def test_invariant_refinement_abelian(abelian3):
    alg, _ = abelian3
    for k in (1, 2, 3):
        assert cohomology_dimension(alg, k, k, invariant_only=True) == comb(3, k)


def test_invariant_basis_elements_are_invariant(sl2):
    from starlift import is_invariant

    alg, _ = sl2
    basis = invariant_basis(alg, 1, 2)
    assert basis
    for b in basis:
        assert is_invariant(b)
