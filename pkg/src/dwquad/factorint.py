"""Primality testing and integer factorization.

Miller-Rabin is deterministic below 3.4e14 (first seven prime bases); above
that it falls back to the first 64 primes as bases, which is probabilistic
in principle but has no known counterexample.  Factorization is trial
division over a sieved prime table followed by Brent-cycle Pollard rho.
"""

from __future__ import annotations

import math
import random

TRIAL_BOUND = 10**6
_DETERMINISTIC_MR_LIMIT = 341_550_071_728_321  # first 7 prime bases suffice below

_small_primes: list[int] | None = None


def small_primes() -> list[int]:
    """Primes below TRIAL_BOUND, sieved once and cached."""
    global _small_primes
    if _small_primes is None:
        sieve = bytearray([1]) * TRIAL_BOUND
        sieve[0] = sieve[1] = 0
        for p in range(2, math.isqrt(TRIAL_BOUND) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _small_primes = [i for i, b in enumerate(sieve) if b]
    return _small_primes


def _mr_witness(a: int, n: int, d: int, s: int) -> bool:
    """True if a witnesses compositeness of n = d * 2^s + 1."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    >>> is_prime(341550071728321)
    False
    >>> [p for p in range(30) if is_prime(p)]
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _DETERMINISTIC_MR_LIMIT:
        bases = (2, 3, 5, 7, 11, 13, 17)
    else:
        bases = tuple(small_primes()[:64])
    return not any(_mr_witness(a % n, n, d, s) for a in bases if a % n)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite odd n, by Brent's cycle variant."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


_TRIAL_DIVISION_CUTOFF = 4096
_factor_cache: dict[int, dict[int, int]] = {}


def factorize(n: int, max_rho_rounds: int = 64) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    Trial division by small primes, then Brent-rho on the cofactor (results
    are cached; the package factors the same discriminant-derived numbers
    over and over).  Raises ValueError for n = 0 and RuntimeError if rho
    exhausts its round budget.

    >>> factorize(-69443)
    {11: 1, 59: 1, 107: 1}
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    cached = _factor_cache.get(n)
    if cached is not None:
        return dict(cached)
    full = n
    out: dict[int, int] = {}
    for p in small_primes():
        if p > _TRIAL_DIVISION_CUTOFF or p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1 and (n < _TRIAL_DIVISION_CUTOFF**2 or is_prime(n)):
        out[n] = out.get(n, 0) + 1
        n = 1
    rng = random.Random(0xD1)
    stack = [n] if n > 1 else []
    rounds = 0
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        rounds += 1
        if rounds > max_rho_rounds:
            raise RuntimeError(f"factorization budget exhausted on {m}")
        d = _pollard_brent(m, rng)
        stack += [d, m // d]
    out = dict(sorted(out.items()))
    if len(_factor_cache) < 200_000:
        _factor_cache[full] = dict(out)
    return out


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = s * t^2 with s squarefree (signs kept on s).

    >>> squarefree_part(-300)
    (-3, 10)
    """
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    s, t = sign, 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
        t *= p ** (e // 2)
    return s, t
