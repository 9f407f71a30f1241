"""Cochain-level identities: differentials, cups, chain homotopies, Bockstein."""

import random

import pytest

from dwquad.cochains import Cochain, RelativeCochain, RelativePair, cup_monomial
from dwquad.cohomology import (
    GroupComplex,
    RelativeComplex,
    is_coboundary,
    random_cocycle,
    relative_is_coboundary,
)
from dwquad.gmodules import GModule, Pairing
from dwquad.groups import FiniteGroup

RNG = random.Random(7)


def small_group_zoo():
    G2 = FiniteGroup.cyclic(2)
    V4 = FiniteGroup.direct_product(G2, G2)
    return {
        "Z2": G2,
        "Z3": FiniteGroup.cyclic(3),
        "Z4": FiniteGroup.cyclic(4),
        "V4": V4,
        "S3": FiniteGroup.symmetric(3),
        "Z8": FiniteGroup.cyclic(8),
    }


def test_zero_differential_is_zero():
    G = FiniteGroup.cyclic(4)
    A = GModule.zn(G, 3)
    for deg in range(3):
        assert Cochain.zero(G, A, deg).differential().is_zero()


def test_homomorphism_is_one_cocycle():
    G = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    A = GModule.zn(G, 2)
    c = Cochain.from_function(G, A, 1, lambda y: (G.names[y][0],))
    assert c.differential().is_zero()


def test_d_squared_exhaustive_small():
    for name, G in small_group_zoo().items():
        for n in (2, 3, 4):
            A = GModule.zn(G, n)
            for deg in (0, 1, 2):
                c = Cochain.random(G, A, deg, RNG)
                assert c.differential().differential().is_zero(), (name, n, deg)


def test_normalization_preserved_by_d_cup_hg():
    G = FiniteGroup.symmetric(3)
    A = GModule.zn(G, 4)
    mult = Pairing.zn_mult(A, A, A)
    c = Cochain.random(G, A, 2, RNG)
    c2 = Cochain.random(G, A, 1, RNG)
    for out in (c.differential(), c.cup(c2, mult), c.chain_homotopy(3)):
        deg = out.degree
        for slot in range(deg):
            args = [RNG.randrange(G.n) for _ in range(deg)]
            args[slot] = 0
            assert out.value(*args) == A.zero()


def test_leibniz_rule_exhaustive():
    for G in (FiniteGroup.cyclic(4), FiniteGroup.symmetric(3)):
        for n in (2, 3, 4):
            A = GModule.zn(G, n)
            mult = Pairing.zn_mult(A, A, A)
            for (i, j) in ((1, 1), (1, 2), (2, 1)):
                c = Cochain.random(G, A, i, RNG)
                c2 = Cochain.random(G, A, j, RNG)
                lhs = c.cup(c2, mult).differential()
                sign = -1 if i % 2 else 1
                rhs = c.differential().cup(c2, mult) + c.cup(c2.differential(), mult).smul(sign)
                assert lhs == rhs


def test_degree_zero_cup_is_pairing():
    G = FiniteGroup.cyclic(3)
    A = GModule.zn(G, 4)
    mult = Pairing.zn_mult(A, A, A)
    one = Cochain(G, A, 0, [(1,)])
    c = Cochain.random(G, A, 2, RNG)
    assert one.cup(c, mult) == c


def test_chain_homotopy_identity_exhaustive():
    """c.g - c = d h_g(c) + h_g(dc) on every argument tuple, every g."""
    q8 = _q8()
    groups = [q8, FiniteGroup.symmetric(3)]
    for G in groups:
        A = GModule.zn(G, 2)
        for deg in (1, 2):
            c = Cochain.random(G, A, deg, RNG)
            dc = c.differential()
            for g in range(G.n):
                lhs = c.act_right(g) - c
                rhs = c.chain_homotopy(g).differential() + dc.chain_homotopy(g)
                assert lhs == rhs, (G.n, deg, g)


def test_chain_homotopy_identity_nontrivial_action():
    G = FiniteGroup.cyclic(2)
    A = GModule(G, (3,), 3, mats=[[[1]], [[-1]]])
    c = Cochain.random(G, A, 2, RNG)
    dc = c.differential()
    for g in range(G.n):
        lhs = c.act_right(g) - c
        rhs = c.chain_homotopy(g).differential() + dc.chain_homotopy(g)
        assert lhs == rhs


def test_chain_homotopy_identity_at_identity():
    G = _q8()
    A = GModule.zn(G, 2)
    c = Cochain.random(G, A, 3, RNG)
    assert c.chain_homotopy(0).is_zero()


def test_chain_homotopy_composition_on_two_cocycles():
    """h_{g'g} = ad_g^* h_{g'} + h_g holds exactly on 2-cocycles."""
    for G in (_q8(), FiniteGroup.symmetric(3), FiniteGroup.cyclic(8)):
        A = GModule.zn(G, 2)
        z = random_cocycle(G, A, 2, RNG)
        for g in range(G.n):
            for gp in range(G.n):
                lhs = z.chain_homotopy(G.table[gp][g])
                rhs = z.chain_homotopy(gp).conj_pullback(g) + z.chain_homotopy(g)
                assert lhs == rhs, (G.n, g, gp)


def test_chain_homotopy_composition_on_three_cocycles_mod_coboundary():
    """On 3-cocycles the composition law holds up to a 1-coboundary, which is
    what the torsor structure it feeds consumes (classes mod coboundaries)."""
    for G in (FiniteGroup.cyclic(4), _q8()):
        A = GModule.zn(G, 2)
        z = random_cocycle(G, A, 3, RNG)
        for _ in range(4):
            g = RNG.randrange(G.n)
            gp = RNG.randrange(G.n)
            diff = z.chain_homotopy(G.table[gp][g]) - (
                z.chain_homotopy(gp).conj_pullback(g) + z.chain_homotopy(g)
            )
            assert is_coboundary(diff) is not None


def test_chain_homotopy_composition_fails_off_cocycles():
    """The composition law needs dc = 0; pin the counterexample shape."""
    G = FiniteGroup.cyclic(4)
    A = GModule.zn(G, 2)
    c = Cochain(G, A, 1, [(0,), (0,), (1,)])  # c(1)=0, c(2)=0, c(3)=1
    g, gp = 1, 2
    lhs = c.chain_homotopy(G.table[gp][g])
    rhs = c.chain_homotopy(gp).conj_pullback(g) + c.chain_homotopy(g)
    assert lhs != rhs


def _q8() -> FiniteGroup:
    from dwquad.duality import preset

    return preset("q8").data.G


# --- relative (cone) complex ---


def _pair() -> tuple[RelativePair, GModule]:
    delta = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    pi = FiniteGroup.cyclic(2)
    hom = [0, 1, 0, 1]  # project to the first factor
    images = {}
    # build the inclusion pi -> delta sending 1 to the first-factor generator
    gen = next(g for g in range(delta.n) if delta.names[g] == (1, 0))
    hom_pi = [0, gen]
    pair = RelativePair(delta, [(pi, hom_pi)])
    A = GModule.zn(delta, 2)
    return pair, A


def test_relative_zero_and_d_squared():
    pair, A = _pair()
    z = RelativeCochain.zero(pair, A, 1)
    assert z.differential().is_zero()
    for deg in (1, 2):
        alpha = Cochain.random(pair.delta, A, deg, RNG)
        betas = [Cochain.random(pv, A.pullback(pv, hom), deg - 1, RNG) for pv, hom in pair.locals]
        rc = RelativeCochain(pair, deg, alpha, betas)
        assert rc.differential().differential().is_zero()


def test_relative_connecting_sign():
    """d(alpha, 0) = (0, -alpha|pi) for a cocycle alpha: the connecting map."""
    pair, A = _pair()
    alpha = random_cocycle(pair.delta, A, 1, RNG)
    rc = RelativeCochain(pair, 1, alpha, [Cochain.zero(pv, A.pullback(pv, hom), 0) for pv, hom in pair.locals])
    d = rc.differential()
    assert d.alpha.is_zero()
    for (pv, hom), beta in zip(pair.locals, d.betas):
        assert beta == -(alpha.pullback(pv, hom))


def test_relative_composed_map_is_zero():
    """The image of a Delta-cocycle bounds in the cone: (alpha, 0) works."""
    pair, A = _pair()
    for deg in (1, 2):
        alpha = random_cocycle(pair.delta, A, deg, RNG)
        rc = RelativeCochain(
            pair, deg, alpha, [Cochain.zero(pv, A.pullback(pv, hom), deg - 1) for pv, hom in pair.locals]
        )
        d = rc.differential()  # = (0, -alpha|pi), the composed-map image
        assert d.alpha.is_zero()
        if deg + 1 >= 2:
            w = relative_is_coboundary(d)
            assert w is not None


def test_relative_cup_orders_and_leibniz():
    pair, A = _pair()
    mult = Pairing.zn_mult(A, A, A)
    for (i, j) in ((1, 1), (2, 1)):
        alpha = Cochain.random(pair.delta, A, i, RNG)
        betas = [Cochain.random(pv, A.pullback(pv, hom), i - 1, RNG) for pv, hom in pair.locals]
        rc = RelativeCochain(pair, i, alpha, betas)
        gamma = Cochain.random(pair.delta, A, j, RNG)
        # Leibniz: d(rc u gamma) = d(rc) u gamma + (-1)^i rc u d(gamma)
        lhs = rc.cup_right(gamma, mult).differential()
        second = rc.cup_right(gamma.differential(), mult)
        if i % 2:
            second = -second
        rhs = rc.differential().cup_right(gamma, mult) + second
        assert lhs == rhs


def _random_relative_cocycle(rcx: RelativeComplex, degree: int):
    import numpy as np

    gens = rcx.cocycle_gens(degree)
    mods = np.array(rcx.coord_moduli(degree), dtype=np.int64)
    vec = np.zeros(len(mods), dtype=np.int64)
    for g in gens:
        vec = (vec + RNG.randrange(2) * g) % mods
    return rcx.to_relative(degree, vec)


def test_relative_cup_sign_rule():
    """(alpha, beta) u gamma = (-1)^{ij} gamma u (alpha, beta) up to relative coboundary."""
    pair, A = _pair()
    mult = Pairing.zn_mult(A, A, A)
    rcx = RelativeComplex(pair, A)
    for i, j in ((1, 1), (1, 2), (2, 1)):
        for _ in range(3):
            rc = _random_relative_cocycle(rcx, i)
            assert rc.differential().is_zero()
            gamma = random_cocycle(pair.delta, A, j, RNG)
            lhs = rc.cup_right(gamma, mult)
            rhs = rc.cup_left(gamma, mult)
            diff = (lhs - rhs) if (i * j) % 2 == 0 else (lhs + rhs)
            assert relative_is_coboundary(diff) is not None


def test_cup_monomial_matches_table():
    K = FiniteGroup.elementary_abelian(2)
    A = GModule.zn(K, 2)
    mult = Pairing.zn_mult(A, A, A)
    xy = cup_monomial(K, A, mult, (0, 1))
    for k1 in range(K.n):
        for k2 in range(K.n):
            assert xy.value(k1, k2) == ((K.names[k1][0] * K.names[k2][1]) % 2,)


def test_bockstein_is_cup_square_on_z2():
    G = FiniteGroup.cyclic(2)
    A = GModule.zn(G, 2)
    x = Cochain(G, A, 1, [(1,)])
    mult = Pairing.zn_mult(A, A, A)
    assert x.bockstein_mod2() == x.cup(x, mult)


def test_bockstein_derivation_property():
    """[beta(x u y)] = [beta(x) u y + x u beta(y)] for 1-cocycles, small groups."""
    for G in (FiniteGroup.elementary_abelian(2), FiniteGroup.cyclic(4)):
        A = GModule.zn(G, 2)
        mult = Pairing.zn_mult(A, A, A)
        cx = GroupComplex(G, A)
        gens = cx.cocycle_gens(1)
        cocycles = []
        import itertools

        for bits in itertools.product((0, 1), repeat=len(gens)):
            import numpy as np

            mods = np.array(cx.coord_moduli(1), dtype=np.int64)
            v = np.zeros(len(mods), dtype=np.int64)
            for b, g in zip(bits, gens):
                v = (v + b * g) % mods
            cocycles.append(cx.to_cochain(1, v))
        for x in cocycles:
            for y in cocycles:
                lhs = x.cup(y, mult).bockstein_mod2()
                rhs = x.bockstein_mod2().cup(y, mult) + x.cup(y.bockstein_mod2(), mult)
                diff = lhs - rhs
                assert is_coboundary(diff) is not None
