"""Field arithmetic, ideals, class groups, genus theory, Artin symbols."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dwquad.factorint import factorize
from dwquad.quadfield import (
    ClassGroup,
    FieldSpec,
    QuadIdeal,
    QuadInt,
    artin_symbol,
    artin_symbol_formal,
    factor_ideal,
    form_of_ideal,
    form_reduce,
    ideal_of_form,
    inert_in_ext,
    legendre,
    multiply_factorization,
    prime_splitting,
    quadint_sqrt,
    ramified_prime,
    reduced_forms,
    sqrt_d,
    two_torsion,
)
from tests.conftest import PAPER_SPECS, random_field_spec

RNG = random.Random(31)
SPEC3 = FieldSpec((-11, -59, -107))
SPEC4 = FieldSpec((5, 193, -439))


def test_field_spec_validation():
    with pytest.raises(ValueError, match="1 \\(mod 4\\)"):
        FieldSpec((4, 6))
    with pytest.raises(ValueError, match="negative"):
        FieldSpec((5, 13))
    with pytest.raises(ValueError, match="distinct"):
        FieldSpec((5, 5))
    with pytest.raises(ValueError, match="-3"):
        FieldSpec((-3,))
    with pytest.raises(ValueError, match="prime"):
        FieldSpec((21, -7))
    assert FieldSpec((-7,)).d == -7
    assert FieldSpec((5, -3)).d == -15


coords = st.integers(min_value=-50, max_value=50)


@settings(max_examples=60, deadline=None)
@given(coords, coords, coords, coords)
def test_quadint_norm_multiplicative(u1, v1, u2, v2):
    x = QuadInt(SPEC3, u1, v1)
    y = QuadInt(SPEC3, u2, v2)
    assert (x * y).norm() == x.norm() * y.norm()
    assert x * x.conj() == QuadInt(SPEC3, x.norm(), 0)
    assert x.conj().conj() == x


@settings(max_examples=40, deadline=None)
@given(coords, coords)
def test_quadint_sqrt_roundtrip(u, v):
    x = QuadInt(SPEC3, u, v)
    sq = x * x
    root = quadint_sqrt(sq)
    assert root is not None
    assert root * root == sq


def test_quadint_sqrt_rejects_nonsquares():
    assert quadint_sqrt(QuadInt(SPEC3, 2, 0)) is None
    assert quadint_sqrt(QuadInt(SPEC3, 0, 1)) is None


def test_sqrt_d_squares_to_d():
    s = sqrt_d(SPEC3)
    assert s * s == QuadInt(SPEC3, SPEC3.d, 0)


def test_ideal_norm_multiplicative_random():
    spec = SPEC3
    for _ in range(25):
        x = QuadInt(spec, RNG.randrange(-30, 31), RNG.randrange(-30, 31))
        y = QuadInt(spec, RNG.randrange(-30, 31), RNG.randrange(-30, 31))
        if x.is_zero() or y.is_zero():
            continue
        I = QuadIdeal.principal(x)
        J = QuadIdeal.principal(y)
        assert (I * J).norm() == I.norm() * J.norm()
        assert I.norm() == abs(x.norm())


def test_prime_splitting_conventions():
    # ramified primes return the fixed primes above each |p_i|
    for spec in (SPEC3, SPEC4):
        for i, p in enumerate(spec.primes):
            kind, primes = prime_splitting(spec, abs(p))
            assert kind == "ramified"
            P = primes[0]
            assert P.ideal().norm() == abs(p)
            sq = P.ideal() * P.ideal()
            assert sq == QuadIdeal.principal(QuadInt(spec, abs(p), 0))
    # 2 splits iff d = 1 mod 8
    spec_17 = FieldSpec((17, -7))  # d = -119 = 1 mod 8
    kind, primes = prime_splitting(spec_17, 2)
    assert kind == "split" and len(primes) == 2
    assert (primes[0].ideal() * primes[1].ideal()) == QuadIdeal.principal(QuadInt(spec_17, 2, 0))
    kind, _ = prime_splitting(SPEC3, 2)  # d = -69443 = 5 mod 8
    assert kind == "inert"
    # split/inert at odd q matches the Legendre symbol of d
    for q in (3, 13, 23):
        kind, _ = prime_splitting(SPEC3, q)
        assert kind == ("split" if legendre(SPEC3.d, q) == 1 else "inert")


def test_factor_ideal_roundtrip_and_sqrt_d():
    spec = SPEC3
    fac = factor_ideal(spec, QuadIdeal.principal(sqrt_d(spec)))
    assert sorted((P.kind, P.q, e) for P, e in fac) == sorted(
        ("ram", abs(p), 1) for p in spec.primes
    )
    for _ in range(10):
        x = QuadInt(spec, RNG.randrange(-40, 41), RNG.randrange(-40, 41))
        if x.is_zero():
            continue
        I = QuadIdeal.principal(x)
        fac = factor_ideal(spec, I)
        back, den = multiply_factorization(spec, fac)
        assert den == 1 and back == I
    assert factor_ideal(spec, QuadIdeal.unit_ideal(spec)) == []


def test_fractional_factorization_roundtrip():
    spec = SPEC4
    I = QuadIdeal.principal(QuadInt(spec, 7, 2))
    fac = factor_ideal(spec, I, den=6)
    back, den = multiply_factorization(spec, fac)
    # compare I/(6) with back/den as fractional ideals: cross-multiply
    lhs = I * QuadIdeal.principal(QuadInt(spec, den, 0))
    rhs = back * QuadIdeal.principal(QuadInt(spec, 6, 0))
    assert lhs == rhs


# --- class groups ---


def test_class_numbers_small():
    assert len(reduced_forms(-7)) == 1
    assert len(reduced_forms(-15)) == 2
    assert len(reduced_forms(-23)) == 3


def test_form_ideal_roundtrip():
    for d in (-7, -15, -69443, -423635):
        for f in reduced_forms(d)[:40]:
            spec_like = type("D", (), {"d": d, "theta_c": (1 - d) // 4})()
            assert form_of_ideal(ideal_of_form(spec_like, f)) == f


def test_form_group_laws_spot():
    cl = ClassGroup(SPEC3)
    e = cl.identity()
    forms = cl.forms[: min(12, cl.h)]
    for f in forms:
        assert cl.compose(f, e) == f
        from dwquad.quadfield import form_inverse

        assert cl.compose(f, form_inverse(f)) == e
    for _ in range(30):
        f, g, h = (RNG.choice(cl.forms) for _ in range(3))
        assert cl.compose(f, g) == cl.compose(g, f)
        assert cl.compose(cl.compose(f, g), h) == cl.compose(f, cl.compose(g, h))


def test_two_torsion_paper_fields():
    for primes in PAPER_SPECS:
        spec = FieldSpec(primes)
        if abs(spec.d) > 10**9:
            continue
        data = two_torsion(spec)
        assert data["rank"] == spec.r - 1


def test_two_torsion_relation_structure():
    data = two_torsion(SPEC3)
    cl = data["class_group"]
    # independence of the first r-1 ramified classes
    prod = cl.compose(cl.ram_classes[0], cl.ram_classes[1])
    assert prod != cl.identity()
    full = cl.compose(prod, cl.ram_classes[2])
    assert full == cl.identity()


def test_class_group_structure_matches_counting():
    for primes in ((-7,), (5, -3), (-11, -59, -107)):
        spec = FieldSpec(primes)
        cl = ClassGroup(spec)
        divisors = cl.elementary_divisors()
        total = 1
        for m in divisors:
            total *= m
        assert total == cl.h
        # cross-check the p-torsion counts the divisors imply
        for p in {q for m in divisors for q in factorize(m)}:
            expect = sum(1 for m in divisors if m % p == 0)
            count = sum(1 for f in cl.forms if cl.power(f, cl.h // p ** 0 if False else p) == cl.identity())
            assert count == p ** expect


def test_class_guard():
    with pytest.raises(ValueError, match="guard"):
        ClassGroup(FieldSpec((-11, -83, -107, -139, -191)), guard=10**9)


# --- inertness and Artin symbols ---


def test_linking_entries_match_hand_values():
    """Frozen Legendre-symbol evaluations for the two 3-prime fields."""
    # (-11,-59,-107): inert matrix rows by hand
    spec = SPEC3
    L = [
        [1 if inert_in_ext(spec, frozenset([j]), ramified_prime(spec, i)) else 0 for j in range(2)]
        for i in range(2)
    ]
    assert L == [[1, 1], [0, 1]]
    spec = SPEC4
    L = [
        [1 if inert_in_ext(spec, frozenset([j]), ramified_prime(spec, i)) else 0 for j in range(2)]
        for i in range(2)
    ]
    assert L == [[1, 1], [1, 0]]


def test_inert_primes_of_F_split_in_unramified_extensions():
    spec = SPEC3
    for q in (3, 13, 23, 2):
        kind, primes = prime_splitting(spec, q)
        if kind != "inert":
            continue
        for I in (frozenset([0]), frozenset([1]), frozenset([0, 1])):
            assert not inert_in_ext(spec, I, primes[0])


def test_artin_trivial_on_unit_ideal():
    assert artin_symbol(SPEC3, frozenset([0]), QuadIdeal.unit_ideal(SPEC3)) == 0


def test_artin_vanishes_on_principal_ideals():
    """Artin reciprocity: principal ideals sit in the kernel.  This exercises
    the splitting rules at odd primes and at 2 in one stroke."""
    for spec in (SPEC3, SPEC4, FieldSpec((17, -7))):
        exts = [frozenset([i]) for i in range(spec.r - 1)] + [frozenset(range(spec.r - 1))]
        for _ in range(12):
            x = QuadInt(spec, RNG.randrange(-25, 26), RNG.randrange(-25, 26))
            if x.is_zero():
                continue
            I = QuadIdeal.principal(x)
            for indices in exts:
                if not indices:
                    continue
                assert artin_symbol(spec, indices, I) == 0, (spec.primes, indices, x)


def test_artin_additive_under_products():
    spec = SPEC3
    indices = frozenset([0])
    for _ in range(8):
        x = QuadInt(spec, RNG.randrange(-20, 21), RNG.randrange(-20, 21))
        y = QuadInt(spec, RNG.randrange(-20, 21), RNG.randrange(-20, 21))
        if x.is_zero() or y.is_zero():
            continue
        I, J = QuadIdeal.principal(x), QuadIdeal.principal(y)
        lhs = artin_symbol(spec, indices, I * J)
        rhs = (artin_symbol(spec, indices, I) + artin_symbol(spec, indices, J)) % 2
        assert lhs == rhs


def test_artin_formal_norms_in_kernel():
    """norm_{N/F} of any prime of N has trivial symbol: split primes give
    the full pair q^1 with symbol 0, inert give q^2."""
    spec = SPEC3
    indices = frozenset([0])
    for q in (3, 5, 13, 23, 29):
        kind, primes = prime_splitting(spec, q)
        for P in primes:
            if inert_in_ext(spec, indices, P):
                # norm of the prime of N above P is P^2
                assert artin_symbol_formal(spec, indices, [(P, 2)]) == 0
            else:
                assert artin_symbol_formal(spec, indices, [(P, 1)]) == 0


def test_genus_theory_random_fields():
    for _ in range(6):
        spec = random_field_spec(RNG, max_r=3, bound=10**6)
        data = two_torsion(spec)
        assert data["rank"] == spec.r - 1


def test_form_reduce_idempotent_random():
    d = SPEC3.d
    for f in reduced_forms(d)[:50]:
        assert form_reduce(f) == f
