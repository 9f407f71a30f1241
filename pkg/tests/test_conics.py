"""Ternary conic solving, modular square roots, Pell unit norms."""

import math
import random

import pytest

from dwquad.conics import (
    cf_period_of_sqrt,
    conic_locally_solvable,
    cornacchia_two_squares,
    crt2,
    fundamental_unit_norm,
    hilbert_symbol,
    pell_minus_one,
    solve_conic,
    sqrt_mod_prime,
    sqrt_mod_prime_power,
)

RNG = random.Random(41)


def _brute_isotropic(a, b, c, box=30):
    for x in range(box):
        for y in range(box):
            for z in range(box):
                if (x, y, z) != (0, 0, 0) and a * x * x + b * y * y + c * z * z == 0:
                    return True
    return False


def test_sqrt_mod_prime_all_residues():
    for p in (3, 7, 13, 101, 193):
        squares = {x * x % p for x in range(1, p)}
        for a in squares:
            r = sqrt_mod_prime(a, p)
            assert r * r % p == a
        nonsquare = next(x for x in range(2, p) if x not in squares)
        with pytest.raises(ValueError):
            sqrt_mod_prime(nonsquare, p)


def test_sqrt_mod_prime_power_complete():
    for p, k in ((2, 5), (3, 3), (5, 2), (7, 1)):
        pk = p**k
        for a in range(pk):
            roots = sqrt_mod_prime_power(a, p, k)
            expect = sorted(x for x in range(pk) if (x * x - a) % pk == 0)
            assert roots == expect, (p, k, a)


def test_hilbert_symbol_bilinearity_spot():
    places = [2, 3, 5, 7, "inf"]
    for _ in range(40):
        a = RNG.choice([x for x in range(-30, 31) if x])
        b = RNG.choice([x for x in range(-30, 31) if x])
        c = RNG.choice([x for x in range(-30, 31) if x])
        for p in places:
            assert hilbert_symbol(a, b * c * c, p) == hilbert_symbol(a, b, p)
            assert hilbert_symbol(a * c * c, b, p) == hilbert_symbol(a, b, p)
            assert hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p) == hilbert_symbol(a, b * c, p)


def test_hilbert_product_formula():
    from dwquad.factorint import factorize

    for _ in range(30):
        a = RNG.choice([x for x in range(-50, 51) if x])
        b = RNG.choice([x for x in range(-50, 51) if x])
        prod = hilbert_symbol(a, b, "inf")
        for p in factorize(2 * abs(a * b)):
            prod *= hilbert_symbol(a, b, p)
        assert prod == 1


def test_solve_conic_examples_and_random():
    assert solve_conic(1, 1, -5) is not None
    assert solve_conic(1, 1, 5) is None  # definite
    assert solve_conic(1, 1, -7) is None  # 7 is not a sum of two squares
    count_solved = 0
    for _ in range(120):
        a = RNG.randrange(-60, 61)
        b = RNG.randrange(-60, 61)
        c = RNG.randrange(-60, 61)
        if 0 in (a, b, c):
            continue
        sol = solve_conic(a, b, c)
        if sol is None:
            assert not conic_locally_solvable(*_primitive_squarefree(a, b, c))
            assert not _brute_isotropic(a, b, c)
        else:
            count_solved += 1
            x, y, z = sol
            assert a * x * x + b * y * y + c * z * z == 0
            assert (x, y, z) != (0, 0, 0)
    assert count_solved > 20


def _primitive_squarefree(a, b, c):
    from dwquad.factorint import squarefree_part

    g = math.gcd(math.gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    return squarefree_part(a)[0], squarefree_part(b)[0], squarefree_part(c)[0]


def test_solve_conic_large_coefficient():
    # the shape the package actually meets: one huge squarefree coefficient
    m = 11 * 107 * 139 * 191
    sol = solve_conic(1, -m, 29 * 11)
    if sol is not None:
        x, y, z = sol
        assert x * x - m * y * y + 29 * 11 * z * z == 0


def test_cornacchia():
    for m in (1, 2, 5, 13, 65, 145, 29 * 53):
        x, y = cornacchia_two_squares(m)
        assert x * x + y * y == m


def test_fundamental_unit_norms():
    assert fundamental_unit_norm(2) == -1  # 1 + sqrt(2)
    assert fundamental_unit_norm(5) == -1  # in Z[sqrt 5] via period parity
    assert fundamental_unit_norm(3) == 1
    assert fundamental_unit_norm(34) == 1  # classically +1 despite 1 mod 4 factors
    assert fundamental_unit_norm(29) == -1
    assert fundamental_unit_norm(101) == -1


def test_pell_minus_one_witnesses():
    for D in (2, 5, 13, 29, 101):
        sol = pell_minus_one(D)
        assert sol is not None
        x, y = sol
        assert x * x - D * y * y == -1
    assert pell_minus_one(3) is None
    assert pell_minus_one(34) is None


def test_cf_period_small():
    assert cf_period_of_sqrt(2) == 1
    assert cf_period_of_sqrt(3) == 2
    assert cf_period_of_sqrt(29) == 5


def test_crt2():
    assert crt2(1, 4, 2, 9) % 4 == 1
    assert crt2(1, 4, 2, 9) % 9 == 2
