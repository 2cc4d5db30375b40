"""Quasitriangular candidates: validation, the C_s family, the transport
of central elements, and the inner-derivation identity."""
import itertools

import pytest

from starlift import (
    c_s_basis,
    c_s_graded_dims,
    c_s_map,
    center,
    check_inner_derivation,
    compare_images,
    load_lie_algebra,
    pbw_commutator,
    pbw_product,
    qt_validate,
    sts_alpha,
    sts_theta,
)
from starlift._rat import QQ
from starlift.envelope import TAG_G, TAG_GSTAR, PBWElement
from starlift.errors import CYBViolation, Degenerate, NotCentral, TNotInvariant
from starlift.quasitriangular import alpha_matrix_rank, mu_of_rprime


@pytest.fixture(scope="module")
def qt(sl2qt):
    g, rp = sl2qt
    return qt_validate(g, rp)


def test_qt_validate_splits_rprime(qt):
    # r' = e(x)f + h(x)h/4 splits into r = (e^f)/2 and t = e(x)f + f(x)e + h(x)h/2
    assert qt.r.entries[0][2] == QQ(1, 2)
    assert qt.r.entries[2][0] == QQ(-1, 2)
    t = {(i, j): v for i, row in enumerate(qt.t) for j, v in enumerate(row) if v}
    assert t == {(0, 2): QQ(1), (2, 0): QQ(1), (1, 1): QQ(1, 2)}
    assert not qt.Z.is_zero()
    assert qt.nondegenerate


def test_qt_validate_rejects_cyb_violation(sl2qt):
    g, _ = sl2qt
    from starlift.core import RMatrix

    bad = RMatrix(
        g,
        ((QQ(0), QQ(0), QQ(1)), (QQ(0), QQ(0), QQ(0)), (QQ(0), QQ(0), QQ(0))),
        "quasitriangular-candidate",
    )
    with pytest.raises(CYBViolation):
        qt_validate(g, bad)


def test_qt_validate_rejects_noninvariant_t(sl2qt):
    g, _ = sl2qt
    from starlift.core import RMatrix

    # e(x)f + f(x)e alone: t misses the h(x)h/2 completion, not ad-invariant
    bad = RMatrix(
        g,
        ((QQ(0), QQ(0), QQ(1, 2)), (QQ(0), QQ(0), QQ(0)), (QQ(1, 2), QQ(0), QQ(0))),
        "quasitriangular-candidate",
    )
    with pytest.raises((TNotInvariant, CYBViolation)):
        qt_validate(g, bad)


def test_antisymmetric_r_on_sl2_fails_cyb(sl2):
    g, r = sl2
    with pytest.raises(CYBViolation):
        qt_validate(g, r)


def test_triangular_inputs_validate(abelian3, nonabelian2):
    for g, r in (abelian3, nonabelian2):
        qt = qt_validate(g, r)
        assert qt.Z.is_zero()
        assert not qt.nondegenerate


def test_mu_rprime_is_h(qt):
    assert list(mu_of_rprime(qt)) == [QQ(0), QQ(1), QQ(0)]


def test_inner_derivation_sl2(qt):
    report = check_inner_derivation(qt)
    assert report["passed"]
    by_gen = {w["generator"]: w for w in report["witnesses"]}
    assert by_gen["e"]["mu_delta"] == (QQ(-2), QQ(0), QQ(0))
    assert by_gen["h"]["mu_delta"] == (QQ(0), QQ(0), QQ(0))
    assert by_gen["f"]["mu_delta"] == (QQ(0), QQ(0), QQ(2))
    for w in report["witnesses"]:
        assert w["match"]
        assert w["mu_delta"] == w["minus_ad_mu"]


def test_inner_derivation_trivial_inputs(abelian3, nonabelian2):
    for g, r in (abelian3, nonabelian2):
        assert check_inner_derivation(qt_validate(g, r))["passed"]


@pytest.mark.parametrize("s", ["0", "1", "-1/2", "3"])
def test_c_s_graded_dims_uniform_in_s(qt, s):
    assert tuple(c_s_graded_dims(QQ(s), 4, qt)) == (1, 0, 1, 0, 1)


def test_c_s_commutative_and_closed(qt):
    for s in (QQ(0), QQ(1)):
        basis = c_s_basis(s, 4, qt)
        assert len(basis) == 3
        for a, b in itertools.combinations(basis, 2):
            assert pbw_commutator(a, b).is_zero()
        for a, b in itertools.combinations_with_replacement(basis, 2):
            p = pbw_product(a, b)
            if p.filtration <= 4:
                assert c_s_map(p, qt.g, s).is_zero()


def test_c_s_everything_on_abelian(abelian3):
    g, r = abelian3
    q = qt_validate(g, r)
    assert tuple(c_s_graded_dims(QQ(1), 3, q)) == (1, 3, 6, 10)


def test_theta_transport_lands_in_c1(qt):
    for z in center(qt.g, 4, TAG_G):
        if z.filtration == 0:
            continue
        y = sts_theta(z, qt)
        assert c_s_map(y, qt.g, QQ(1)).is_zero()


def test_theta_transport_frozen_and_multiplicative(qt):
    C = next(z for z in center(qt.g, 4, TAG_G) if z.filtration == 2)
    assert C.coeffs == {(0, 2): QQ(4), (1,): QQ(-2), (1, 1): QQ(1)}
    Th = sts_theta(C, qt)
    assert Th.coeffs == {(0, 2): QQ(4), (1,): QQ(4), (1, 1): QQ(4)}
    Csq = pbw_product(C, C)
    assert sts_theta(Csq, qt) == pbw_product(Th, Th)


def test_theta_transport_rejects_noncentral(qt):
    x = PBWElement.generator(qt.g, TAG_G, 0)
    with pytest.raises(NotCentral):
        sts_theta(x, qt)


def test_theta_transport_needs_nondegenerate_t(abelian3):
    g, r = abelian3
    q = qt_validate(g, r)
    one = PBWElement.one(g, TAG_G)
    with pytest.raises(Degenerate):
        sts_theta(one, q)


def test_alpha_full_rank(qt):
    rank, dim = alpha_matrix_rank(qt, 4)
    assert rank == dim == 35


def test_alpha_on_generators_contracts_t(qt):
    # alpha(xi_a) = (xi_a (x) id)(t)
    for a in range(3):
        img = sts_alpha(PBWElement.generator(qt.dual, TAG_GSTAR, a), qt)
        want = {}
        for j, v in enumerate(qt.t[a]):
            if v:
                want[(j,)] = v
        assert img.coeffs == want


def test_compare_images_c0_differs_from_c1(qt):
    rep = compare_images(qt, 4)
    assert rep == {"dim_C0": 3, "dim_C1": 3, "dim_join": 5, "equal": False}
