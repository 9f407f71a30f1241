import random

import pytest

from dwquad.etale import EtaleContext
from dwquad.factorint import is_prime
from dwquad.quadfield import FieldSpec

PAPER_SPECS = [
    (-11, -83, -107, -139, -191),
    (29, -31, -43, -47, 101),
    (-11, -59, -107),
    (5, 193, -439),
]


@pytest.fixture(scope="session")
def paper_contexts():
    """One verified double-route context per reference field, computed once."""
    out = {}
    for primes in PAPER_SPECS:
        spec = FieldSpec(primes)
        out[primes] = EtaleContext(spec, min_routes=2, box_cap=128)
    return out


def random_field_spec(rng: random.Random, max_r: int = 4, bound: int = 10**7) -> FieldSpec:
    """A random valid field: signed primes ~ 1 mod 4, negative product."""
    while True:
        r = rng.randint(1, max_r)
        primes = []
        used = set()
        while len(primes) < r:
            q = rng.randrange(3, 2000)
            if not is_prime(q) or q in used:
                continue
            sign = rng.choice((1, -1))
            p = sign * q
            if p % 4 != 1:
                p = -p
            if p % 4 != 1:
                continue
            used.add(q)
            primes.append(p)
        d = 1
        for p in primes:
            d *= p
        if d < 0 and d != -3 and abs(d) < bound:
            return FieldSpec(tuple(primes))


def random_lemma424_spec(rng: random.Random, max_r: int = 3) -> FieldSpec:
    """|p_1|..|p_{r-1}| = 1 mod 4 positive, last prime negative with |p| = 3 mod 4."""
    pos_pool = [p for p in range(5, 500) if p % 4 == 1 and is_prime(p)]
    neg_pool = [p for p in range(3, 500) if p % 4 == 3 and is_prime(p)]
    while True:
        r = rng.randint(1, max_r)
        head = rng.sample(pos_pool, r - 1)
        tail = -rng.choice(neg_pool)
        primes = tuple(head + [tail])
        try:
            return FieldSpec(primes)
        except ValueError:
            continue
