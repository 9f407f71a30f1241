"""Extensions, the paired 3-cocycles, closed-form chain homotopies."""

import random

import pytest

from dwquad.cochains import Cochain, cup_monomial
from dwquad.cohomology import is_coboundary, random_cocycle
from dwquad.duality import DualityData, hg_closed_form_check, preset, semidirect_product
from dwquad.gmodules import GModule, Pairing
from dwquad.groups import FiniteGroup

RNG = random.Random(23)


def test_split_extension_is_direct_product():
    K = FiniteGroup.elementary_abelian(2)
    A = GModule.zn(K, 2)
    ext = semidirect_product(A, Cochain.zero(K, A, 2))
    assert ext.group.is_abelian()
    assert ext.group.order_histogram() == {1: 1, 2: 7}


def test_quaternion_preset_shape():
    pre = preset("q8")
    hist = pre.data.G.order_histogram()
    assert hist == {1: 1, 2: 1, 4: 6}  # a unique involution: the quaternions
    assert not pre.data.G.is_abelian()
    assert pre.data.omega.is_zero()


def test_dihedral_preset_shape():
    pre = preset("d4")
    hist = pre.data.G.order_histogram()
    assert hist == {1: 1, 2: 5, 4: 2}  # five involutions: dihedral of order 8
    assert not pre.data.G.is_abelian()
    assert pre.data.omega.is_zero()


def test_dual_groups_are_elementary_abelian():
    for name in ("q8", "d4"):
        pre = preset(name)
        assert pre.data.Ghat.is_abelian()
        assert all(pre.data.Ghat.element_order(g) <= 2 for g in range(8))


def test_projection_da_equals_minus_pullback_gamma():
    pre = preset("q8")
    ext = pre.data.ext
    a = ext.a_cochain()
    kg = pre.data.gamma.pullback(ext.group, ext.k_proj)
    assert a.differential() == -kg


def test_omega_hat_equals_gamma_cup_dual_coordinate():
    """For the quaternion preset, omega_hat is the table of gamma cup z."""
    pre = preset("q8")
    Gh = pre.data.Ghat
    kp = pre.data.ext_hat.k_proj
    ap = pre.data.ext_hat.a_proj
    om = pre.data.omega_hat
    for y1 in range(8):
        for y2 in range(8):
            for y3 in range(8):
                expect = (pre.data.gamma.value(kp[y1], kp[y2])[0] * ap[y3][0]) % 2
                assert om.value(y1, y2, y3) == (expect,)


def test_omega_cocycles_for_presets():
    for name in ("q8", "d4"):
        data = preset(name).data
        assert data.omega.differential().is_zero()
        assert data.omega_hat.differential().is_zero()


def _random_duality_data(rng: random.Random) -> DualityData:
    choice = rng.randrange(4)
    if choice == 0:
        K = FiniteGroup.cyclic(2)
        A = GModule.zn(K, 2)
        n = 2
    elif choice == 1:
        K = FiniteGroup.elementary_abelian(2)
        A = GModule.zn(K, 2)
        n = 2
    elif choice == 2:
        K = FiniteGroup.cyclic(2)
        A = GModule(K, (3,), 3, mats=[[[1]], [[-1]]])  # negation action
        n = 3
    else:
        K = FiniteGroup.cyclic(4)
        A = GModule.zn(K, 4)
        n = 4
    Ahat = A.dual()
    Zn = GModule.zn(K, n)
    ev = Pairing.evaluation(A, Ahat, Zn)
    for _ in range(40):
        gamma = random_cocycle(K, A, 2, rng)
        gamma_hat = random_cocycle(K, Ahat, 2, rng) if rng.random() < 0.7 else Cochain.zero(K, Ahat, 2)
        prod = gamma.cup(gamma_hat, ev)
        e = is_coboundary(prod)
        if e is not None:
            return DualityData(n, A, gamma, gamma_hat, e)
    raise AssertionError("could not sample duality data")


def test_random_duality_data_cocycle_checks():
    """Twenty random duality data; the constructor verifies d(omega) = 0."""
    seen_nontrivial = 0
    for _ in range(20):
        data = _random_duality_data(RNG)
        if not data.gamma.is_zero() or not data.gamma_hat.is_zero():
            seen_nontrivial += 1
        assert data.G.n == data.A.size() * data.K.n
    assert seen_nontrivial >= 8


def test_closed_form_chain_homotopies_presets():
    for name in ("q8", "d4"):
        data = preset(name).data
        for m in data.A.elements():
            assert hg_closed_form_check(data, m, dual_side=False)
        for mh in data.Ahat.elements():
            assert hg_closed_form_check(data, mh, dual_side=True)


def test_closed_form_chain_homotopies_random():
    for _ in range(4):
        data = _random_duality_data(RNG)
        for m in data.A.elements():
            assert hg_closed_form_check(data, m, dual_side=False)
        for mh in data.Ahat.elements():
            assert hg_closed_form_check(data, mh, dual_side=True)


def test_zero_closed_form_at_zero():
    data = preset("q8").data
    assert hg_closed_form_check(data, data.A.zero(), dual_side=False)


def test_build_rejects_wrong_e():
    K = FiniteGroup.elementary_abelian(2)
    A = GModule.zn(K, 2)
    mult = Pairing.zn_mult(A, A, A)
    gamma = cup_monomial(K, A, mult, (0, 1))
    gamma_hat = cup_monomial(K, A.dual(), mult, (0, 0))
    bad_e = Cochain.random(K, GModule.zn(K, 2), 3, RNG)
    with pytest.raises(ValueError):
        DualityData(2, A, gamma, gamma_hat, bad_e)


def test_semidirect_rejects_non_cocycle():
    K = FiniteGroup.elementary_abelian(2)
    A = GModule.zn(K, 2)
    c = Cochain.random(K, A, 2, RNG)
    if c.differential().is_zero():
        pytest.skip("sampled a cocycle by chance")
    with pytest.raises(ValueError):
        semidirect_product(A, c)
