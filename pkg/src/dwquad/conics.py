"""Rational ternary quadratic equations and real quadratic units.

solve_conic finds a nontrivial integer zero of a x^2 + b y^2 + c z^2 by
Lagrange descent: local solvability is decided by Hilbert symbols first, so
the descent always terminates; the largest coefficient is shrunk through a
square root of -ab modulo it and the classical composition identity

    (t^2 + ab) (a X^2 + b Y^2) = a (tX + bY)^2 + b (tY - aX)^2,

with Cornacchia and a small brute-force box as base cases.  The other entry
point is the continued-fraction period of sqrt(D), whose parity decides
whether the real quadratic field Q(sqrt(D)) has a unit of norm -1.
"""

from __future__ import annotations

import math

from .factorint import factorize, squarefree_part


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def crt2(a: int, m: int, b: int, n: int) -> int:
    """x mod m*n with x = a (m), x = b (n); m, n coprime."""
    t = (b - a) * pow(m % n, -1, n) % n
    return (a + m * t) % (m * n)


def sqrt_mod_prime(a: int, p: int) -> int:
    """Tonelli-Shanks square root of a quadratic residue a mod a prime p.

    >>> sqrt_mod_prime(2, 7) in (3, 4)
    True
    """
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    z = 2
    while legendre(z, p) != -1:
        z += 1
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


def _unit_sqrts_mod(a: int, p: int, k: int) -> list[int]:
    """All square roots of a unit a modulo p^k."""
    pk = p**k
    a %= pk
    if p != 2:
        if legendre(a % p, p) != 1:
            return []
        r = sqrt_mod_prime(a % p, p)
        for j in range(1, k):
            mod = p ** (j + 1)
            r = (r + (a - r * r) * pow(2 * r, -1, mod)) % mod
        return sorted({r % pk, (-r) % pk})
    if k == 1:
        return [1]
    if k == 2:
        return [1, 3] if a % 4 == 1 else []
    if a % 8 != 1:
        return []
    r = 1
    for j in range(3, k):
        if (r * r - a) % (1 << (j + 1)):
            r += 1 << (j - 1)
    roots = {r % pk, (-r) % pk, (r + pk // 2) % pk, (-r + pk // 2) % pk}
    return sorted(x for x in roots if (x * x - a) % pk == 0)


def sqrt_mod_prime_power(a: int, p: int, k: int) -> list[int]:
    """All square roots of a modulo p^k, including non-unit a."""
    pk = p**k
    a %= pk
    if a == 0:
        step = p ** ((k + 1) // 2)
        return list(range(0, pk, step))
    v = 0
    aa = a
    while aa % p == 0:
        aa //= p
        v += 1
    if v % 2:
        return []
    t = v // 2
    inner = _unit_sqrts_mod(aa, p, k - v)
    if not inner:
        return []
    out = set()
    pt = p**t
    for u in inner:
        base = pt * u
        for j in range(pt):
            out.add((base + j * p ** (k - t)) % pk)
    return sorted(out)


def _split_val(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a: int, b: int, p) -> int:
    """Hilbert symbol (a, b)_p for p a prime or 'inf'."""
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    if p == 2:
        alpha, u = _split_val(a, 2)
        beta, v = _split_val(b, 2)
        exp = (u - 1) // 2 * ((v - 1) // 2)
        exp += alpha * ((v * v - 1) // 8) + beta * ((u * u - 1) // 8)
        return 1 if exp % 2 == 0 else -1
    alpha, u = _split_val(a, p)
    beta, v = _split_val(b, p)
    s = (-1) ** (alpha * beta * ((p - 1) // 2))
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return 1 if s == 1 else -1


def conic_locally_solvable(a: int, b: int, c: int) -> bool:
    """Isotropy of <a, b, c> over every completion of Q.

    <a, b, c> ~ <1, ab, ac> up to squares, isotropic over Q_p iff
    (-ab, -ac)_p = 1; by the product formula only places dividing 2abc and
    infinity need checking.
    """
    if (a > 0 and b > 0 and c > 0) or (a < 0 and b < 0 and c < 0):
        return False
    for p in factorize(2 * abs(a * b * c)):
        if hilbert_symbol(-a * b, -a * c, p) != 1:
            return False
    return True


def cornacchia_two_squares(m: int) -> tuple[int, int]:
    """(x, y) with x^2 + y^2 = m, for squarefree m with no 3 mod 4 factor."""
    if m == 1:
        return (1, 0)
    if m == 2:
        return (1, 1)
    if m % 2 == 0:
        x, y = cornacchia_two_squares(m // 2)
        return (abs(x + y), abs(x - y))
    # r = sqrt(-1) mod m via CRT over the (all 1 mod 4) prime factors
    r, mod = 0, 1
    for p in factorize(m):
        rp = sqrt_mod_prime(p - 1, p)
        r = crt2(r, mod, rp, p)
        mod *= p
    a, b = m, min(r, m - r)
    bound = math.isqrt(m)
    while b > bound:
        a, b = b, a % b
    y2 = m - b * b
    y = math.isqrt(y2)
    if y * y != y2:
        raise AssertionError(f"cornacchia failed on {m}")
    return (b, y)


def _verify(a, b, c, sol) -> tuple[int, int, int]:
    x, y, z = sol
    g = math.gcd(math.gcd(x, y), z)
    if g > 1:
        x, y, z = x // g, y // g, z // g
    if (x, y, z) == (0, 0, 0) or a * x * x + b * y * y + c * z * z != 0:
        raise AssertionError(f"bad conic solution {(x, y, z)} for {(a, b, c)}")
    return x, y, z


def _brute_conic(a: int, b: int, c: int) -> tuple[int, int, int] | None:
    """Box search within Holzer's bounds |y| <= sqrt|ac|, |z| <= sqrt|ab|."""
    By = math.isqrt(abs(a * c)) + 1
    Bz = math.isqrt(abs(a * b)) + 1
    for y in range(By + 1):
        for z in range(Bz + 1):
            if y == 0 and z == 0:
                continue
            num = -(b * y * y + c * z * z)
            if num % a:
                continue
            t = num // a
            if t < 0:
                continue
            x = math.isqrt(t)
            if x * x == t:
                return _verify(a, b, c, (x, y, z))
    return None


def solve_conic(a: int, b: int, c: int) -> tuple[int, int, int] | None:
    """A primitive nontrivial zero of a x^2 + b y^2 + c z^2 = 0, or None.

    Returns None exactly when some completion of Q obstructs.

    >>> solve_conic(1, 1, -5)
    (1, 2, 1)
    >>> solve_conic(1, 1, 5) is None
    True
    """
    if a == 0:
        return (1, 0, 0)
    if b == 0:
        return (0, 1, 0)
    if c == 0:
        return (0, 0, 1)
    g = math.gcd(math.gcd(a, b), c)
    if g > 1:
        sol = solve_conic(a // g, b // g, c // g)
        return None if sol is None else _verify(a, b, c, sol)
    a0, sa = squarefree_part(a)
    b0, sb = squarefree_part(b)
    c0, sc = squarefree_part(c)
    if (a0, b0, c0) != (a, b, c):
        sol = solve_conic(a0, b0, c0)
        if sol is None:
            return None
        X, Y, Z = sol
        L = sa * sb * sc
        return _verify(a, b, c, (X * L // sa, Y * L // sb, Z * L // sc))
    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        co = [a, b, c]
        g = math.gcd(co[i], co[j])
        if g > 1:
            co[i] //= g
            co[j] //= g
            co[k] *= g
            sol = solve_conic(co[0], co[1], co[2])
            if sol is None:
                return None
            out = list(sol)
            out[k] *= g
            return _verify(a, b, c, tuple(out))
    if not conic_locally_solvable(a, b, c):
        return None
    coeffs = sorted(((abs(a), a, 0), (abs(b), b, 1), (abs(c), c, 2)))
    sol = _descend(coeffs[0][1], coeffs[1][1], coeffs[2][1], depth=0)
    out = [0, 0, 0]
    for pos, (_, _, orig) in enumerate(coeffs):
        out[orig] = sol[pos]
    return _verify(a, b, c, tuple(out))


def _descend(a: int, b: int, c: int, depth: int) -> tuple[int, int, int]:
    """Lagrange descent; pairwise coprime squarefree, |a| <= |b| <= |c|, mixed signs."""
    if depth > 300:
        raise AssertionError("conic descent did not terminate")
    if a + b == 0:
        return (1, 1, 0)
    if a + c == 0:
        return (1, 0, 1)
    if b + c == 0:
        return (0, 1, 1)
    if a == b:  # necessarily a = b = +-1, c of the opposite sign
        x, y = cornacchia_two_squares(abs(c))
        return (x, y, 1)
    if abs(c) <= 64:
        sol = _brute_conic(a, b, c)
        if sol is None:
            raise AssertionError(f"locally solvable conic had no small solution: {(a, b, c)}")
        return sol
    t = _sqrt_mod_squarefree(-a * b, abs(c))
    if t is None:
        raise AssertionError(f"missing square root mod c on solvable conic: {(a, b, c)}")
    t %= abs(c)
    if t > abs(c) // 2:
        t -= abs(c)
    num = t * t + a * b
    if num == 0:
        return (t, a, 0)
    cc = num // c
    c2, s2 = squarefree_part(cc)
    sub = solve_conic(a, b, c2)
    if sub is None:
        raise AssertionError(f"descent hit unsolvable subproblem: {(a, b, c2)}")
    X, Y, Z = sub
    x = t * X + b * Y
    y = t * Y - a * X
    z = c2 * s2 * Z
    g = math.gcd(math.gcd(x, y), z)
    return (x // g, y // g, z // g)


def _sqrt_mod_squarefree(a: int, m: int) -> int | None:
    """A square root of a mod squarefree m > 0, or None."""
    root, mod = 0, 1
    for p in factorize(m):
        ap = a % p
        if p == 2:
            rp = ap
        elif ap == 0:
            rp = 0
        else:
            if legendre(ap, p) != 1:
                return None
            rp = sqrt_mod_prime(ap, p)
        root = crt2(root, mod, rp, p)
        mod *= p
    return root


# --- continued fractions of sqrt(D), fundamental unit norms ---


def cf_period_of_sqrt(D: int, max_steps: int = 10**7) -> int:
    """Period length of the continued fraction of sqrt(D), D > 1 nonsquare."""
    a0 = math.isqrt(D)
    if a0 * a0 == D:
        raise ValueError("D is a perfect square")
    m, d, a = 0, 1, a0
    for step in range(1, max_steps + 1):
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        if d == 1:
            return step
    raise RuntimeError("continued fraction period cap exceeded")


def fundamental_unit_norm(D: int, max_steps: int = 10**7) -> int:
    """Norm of the fundamental unit of Q(sqrt(D)), D > 1 squarefree.

    x^2 - D y^2 = -1 is solvable iff the period of sqrt(D) is odd, and the
    unit index [O^x : Z[sqrt(D)]^x] is odd for every D, so the parity also
    answers the norm question for the maximal order.
    """
    return -1 if cf_period_of_sqrt(D, max_steps) % 2 else 1


def pell_minus_one(D: int, max_steps: int = 10**6) -> tuple[int, int] | None:
    """The fundamental (x, y) with x^2 - D y^2 = -1, or None if norm +1."""
    a0 = math.isqrt(D)
    if a0 * a0 == D:
        raise ValueError("D is a perfect square")
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    for _ in range(max_steps):
        val = h * h - D * k * k
        if val == -1:
            return (h, k)
        if val == 1:
            return None
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
    raise RuntimeError("pell search cap exceeded")
