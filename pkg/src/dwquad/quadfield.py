"""Exact arithmetic in imaginary quadratic fields built from signed primes.

A field is described by signed primes p_1..p_r, each congruent to 1 mod 4,
with negative squarefree product d; then F = Q(sqrt(d)) has ring of integers
Z[theta], theta = (1 + sqrt(d))/2.  The class group comes from reduced
binary quadratic forms of discriminant d (composition goes through exact
ideal HNF arithmetic); the two-torsion is generated by the ramified primes;
Artin symbols for the unramified quadratic extensions F(sqrt(p_I)) reduce
to quadratic-residue computations in residue fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .factorint import factorize, is_prime


@dataclass(frozen=True)
class FieldSpec:
    """Signed primes with product d < 0, each prime congruent to 1 mod 4."""

    primes: tuple[int, ...]

    def __post_init__(self):
        if not self.primes:
            raise ValueError("need at least one prime")
        seen = set()
        for p in self.primes:
            if p % 4 != 1:
                raise ValueError("primes must be ≡ 1 (mod 4)")
            if not is_prime(abs(p)):
                raise ValueError(f"{p} is not (up to sign) a prime")
            if abs(p) in seen:
                raise ValueError("primes must have pairwise distinct absolute values")
            seen.add(abs(p))
        if self.d >= 0:
            raise ValueError("the product of the primes must be negative")
        if self.d == -3:
            raise ValueError("d = -3 has extra units and is rejected")

    @property
    def d(self) -> int:
        out = 1
        for p in self.primes:
            out *= p
        return out

    @property
    def r(self) -> int:
        return len(self.primes)

    @property
    def theta_c(self) -> int:
        """theta satisfies theta^2 - theta + theta_c = 0."""
        return (1 - self.d) // 4

    def product_over(self, indices) -> int:
        out = 1
        for i in indices:
            out *= self.primes[i]
        return out

    def complement(self, indices: frozenset[int]) -> frozenset[int]:
        return frozenset(range(self.r)) - indices


def parse_primes(text: str) -> FieldSpec:
    parts = [t for t in text.replace(" ", "").split(",") if t]
    try:
        primes = tuple(int(t) for t in parts)
    except ValueError as exc:
        raise ValueError(f"could not parse prime list {text!r}") from exc
    return FieldSpec(primes)


class _Disc:
    """Duck-typed stand-in for FieldSpec when only d matters (form arithmetic)."""

    def __init__(self, d: int):
        self.d = d
        self.theta_c = (1 - d) // 4


class QuadInt:
    """u + v*theta with theta = (1 + sqrt(d))/2, exact integer coordinates."""

    __slots__ = ("u", "v", "spec")

    def __init__(self, spec, u: int, v: int):
        self.spec = spec
        self.u = int(u)
        self.v = int(v)

    def __repr__(self) -> str:
        return f"QuadInt({self.u} + {self.v}*theta)"

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadInt) and (self.u, self.v) == (other.u, other.v)

    def __hash__(self):
        return hash((self.u, self.v))

    def __add__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.spec, self.u + other.u, self.v + other.v)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.spec, self.u - other.u, self.v - other.v)

    def __neg__(self) -> "QuadInt":
        return QuadInt(self.spec, -self.u, -self.v)

    def __mul__(self, other) -> "QuadInt":
        if isinstance(other, int):
            return QuadInt(self.spec, self.u * other, self.v * other)
        D = (self.spec.d - 1) // 4
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        return QuadInt(self.spec, u1 * u2 + v1 * v2 * D, u1 * v2 + u2 * v1 + v1 * v2)

    __rmul__ = __mul__

    def conj(self) -> "QuadInt":
        return QuadInt(self.spec, self.u + self.v, -self.v)

    def norm(self) -> int:
        return self.u * self.u + self.u * self.v + self.spec.theta_c * self.v * self.v

    def trace(self) -> int:
        return 2 * self.u + self.v

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def sqrt_coords(self) -> tuple[int, int]:
        """(P, Q) with the element equal to (P + Q sqrt(d))/2."""
        return 2 * self.u + self.v, self.v

    def content(self) -> int:
        return math.gcd(self.u, self.v)


def sqrt_d(spec) -> QuadInt:
    """sqrt(d) = 2*theta - 1."""
    return QuadInt(spec, -1, 2)


def quadint_sqrt(x: QuadInt) -> QuadInt | None:
    """An exact square root of x in Z[theta], or None.

    With x = (P + Q sqrt d)/2 and u = (X + Y sqrt d)/2 the equation u^2 = x
    becomes X^2 + d Y^2 = 2P, XY = Q, solved in closed form; d < 0 makes
    the discriminant P^2 - d Q^2 = 4 N(x) nonnegative.
    """
    spec = x.spec
    d = spec.d
    if x.is_zero():
        return QuadInt(spec, 0, 0)
    P, Q = x.sqrt_coords()
    cands: list[tuple[int, int]] = []
    if Q == 0:
        if P >= 0:
            X2 = 2 * P
            X = math.isqrt(X2)
            if X * X == X2:
                cands.append((X, 0))
        if (2 * P) % d == 0 and (2 * P) // d >= 0:
            Y2 = (2 * P) // d
            Y = math.isqrt(Y2)
            if Y * Y == Y2:
                cands.append((0, Y))
    else:
        disc = P * P - d * Q * Q
        s = math.isqrt(disc)
        if s * s != disc:
            return None
        for sig in (1, -1):
            num = P + sig * s
            if num % d == 0 and num // d >= 0:
                y2 = num // d
                y = math.isqrt(y2)
                if y * y == y2 and y != 0 and Q % y == 0:
                    for Y in (y, -y):
                        cands.append((Q // Y, Y))
    for X, Y in cands:
        if (X - Y) % 2 == 0:
            u = QuadInt(spec, (X - Y) // 2, Y)
            if u * u == x:
                return u
    return None


class QuadIdeal:
    """Integral ideal a*Z + (b + c*theta)*Z in Hermite normal form."""

    __slots__ = ("spec", "a", "b", "c")

    def __init__(self, spec, a: int, b: int, c: int):
        self.spec, self.a, self.b, self.c = spec, a, b, c

    def __repr__(self) -> str:
        return f"QuadIdeal({self.a}, {self.b} + {self.c}*theta)"

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadIdeal) and (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def norm(self) -> int:
        return self.a * self.c

    @staticmethod
    def from_lattice(spec, rows: list[tuple[int, int]]) -> "QuadIdeal":
        """HNF of the rank-2 sublattice of Z[theta] spanned by (u, v) rows."""
        work = [list(r) for r in rows if r != (0, 0)]
        if not work:
            raise ValueError("zero lattice")
        # eliminate the theta-coordinate down to a single generator by gcd steps
        while True:
            nz = [w for w in work if w[1] != 0]
            if not nz:
                raise ValueError("lattice is not full rank")
            w = min(nz, key=lambda t: abs(t[1]))
            others = [o for o in nz if o is not w]
            if not others:
                break
            for o in others:
                q = o[1] // w[1]
                o[0] -= q * w[0]
                o[1] -= q * w[1]
        if w[1] < 0:
            w[0], w[1] = -w[0], -w[1]
        c = w[1]
        rest = [abs(o[0]) for o in work if o is not w and o[0] != 0]
        a = 0
        for x in rest:
            a = math.gcd(a, x)
        if a == 0:
            raise ValueError("lattice is not full rank")
        b = w[0] % a
        return QuadIdeal(spec, a, b, c)

    @staticmethod
    def unit_ideal(spec) -> "QuadIdeal":
        return QuadIdeal(spec, 1, 0, 1)

    @staticmethod
    def principal(x: QuadInt) -> "QuadIdeal":
        spec = x.spec
        tx = x * QuadInt(spec, 0, 1)
        return QuadIdeal.from_lattice(spec, [(x.u, x.v), (tx.u, tx.v)])

    def gens(self) -> list[QuadInt]:
        return [QuadInt(self.spec, self.a, 0), QuadInt(self.spec, self.b, self.c)]

    def __mul__(self, other: "QuadIdeal") -> "QuadIdeal":
        rows = []
        for g in self.gens():
            for h in other.gens():
                x = g * h
                tx = x * QuadInt(self.spec, 0, 1)
                rows.append((x.u, x.v))
                rows.append((tx.u, tx.v))
        return QuadIdeal.from_lattice(self.spec, rows)

    def __pow__(self, e: int) -> "QuadIdeal":
        if e < 0:
            raise ValueError("negative powers need explicit denominators")
        out = QuadIdeal.unit_ideal(self.spec)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "QuadIdeal":
        rows = []
        for g in self.gens():
            x = g.conj()
            tx = x * QuadInt(self.spec, 0, 1)
            rows.append((x.u, x.v))
            rows.append((tx.u, tx.v))
        return QuadIdeal.from_lattice(self.spec, rows)

    def contains(self, x: QuadInt) -> bool:
        if x.v % self.c:
            return False
        t = x.v // self.c
        return (x.u - t * self.b) % self.a == 0

    def divide_exact(self, q: int) -> "QuadIdeal | None":
        if self.a % q == 0 and self.b % q == 0 and self.c % q == 0:
            return QuadIdeal(self.spec, self.a // q, self.b // q, self.c // q)
        return None

    def valuation(self, prime: "PrimeOfF") -> int:
        v = 0
        cur = self
        pid = prime.ideal()
        npr = pid.norm()
        while True:
            cand = (cur * pid.conj()).divide_exact(npr)
            if cand is None or cand * pid != cur:
                return v
            cur = cand
            v += 1


@dataclass(frozen=True)
class PrimeOfF:
    """A prime of F: ('ram', i) over |p_i|, ('split', q, bit), or ('inert', q)."""

    kind: str
    q: int
    bit: int = 0
    spec: FieldSpec | None = field(default=None, compare=False)
    index: int = -1  # for ram primes, the position in spec.primes

    def __repr__(self) -> str:
        if self.kind == "ram":
            return f"P(ram|p{self.index + 1}|={self.q})"
        if self.kind == "split":
            return f"P(split {self.q}#{self.bit})"
        return f"P(inert {self.q})"

    def residue_degree(self) -> int:
        return 2 if self.kind == "inert" else 1

    def ideal(self) -> QuadIdeal:
        spec = self.spec
        q = self.q
        if self.kind == "inert":
            return QuadIdeal(spec, q, 0, q)
        if self.kind == "ram":
            r = pow(2, -1, q)  # double root of theta's minimal polynomial mod q
            return QuadIdeal(spec, q, (-r) % q, 1)
        r = split_roots(spec, q)[self.bit]
        return QuadIdeal(spec, q, (-r) % q, 1)

    def conjugate(self) -> "PrimeOfF":
        if self.kind == "split":
            return PrimeOfF("split", self.q, 1 - self.bit, self.spec, self.index)
        return self


@lru_cache(maxsize=None)
def _split_roots_cached(d: int, q: int) -> tuple[int, int]:
    from .conics import sqrt_mod_prime

    if q == 2:
        return (0, 1)
    s = sqrt_mod_prime(d % q, q)
    inv2 = pow(2, -1, q)
    r0 = (1 + s) * inv2 % q
    r1 = (1 - s) * inv2 % q
    return (min(r0, r1), max(r0, r1))


def split_roots(spec, q: int) -> tuple[int, int]:
    """The two roots of theta's minimal polynomial mod a split prime q."""
    return _split_roots_cached(spec.d, q)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker_at(spec, q: int) -> int:
    """Splitting symbol of q in F: +1 split, -1 inert, 0 ramified."""
    d = spec.d
    if q == 2:
        return 1 if d % 8 == 1 else -1
    if d % q == 0:
        return 0
    return legendre(d, q)


def prime_splitting(spec: FieldSpec, q: int) -> tuple[str, list[PrimeOfF]]:
    """Kummer-Dedekind splitting of a rational prime q in F."""
    sym = kronecker_at(spec, q)
    if sym == 0:
        idx = [abs(p) for p in spec.primes].index(q)
        return "ramified", [PrimeOfF("ram", q, 0, spec, idx)]
    if sym == 1:
        return "split", [PrimeOfF("split", q, 0, spec), PrimeOfF("split", q, 1, spec)]
    return "inert", [PrimeOfF("inert", q, 0, spec)]


def ramified_prime(spec: FieldSpec, i: int) -> PrimeOfF:
    return PrimeOfF("ram", abs(spec.primes[i]), 0, spec, i)


def factor_ideal(spec: FieldSpec, I: QuadIdeal, den: int = 1) -> list[tuple[PrimeOfF, int]]:
    """Prime factorization of the fractional ideal I/(den)."""
    out: dict[PrimeOfF, int] = {}
    if I.norm() != 1:
        for q in factorize(I.norm()):
            _, primes = prime_splitting(spec, q)
            for P in primes:
                v = I.valuation(P)
                if v:
                    out[P] = v
    if den != 1:
        for q, e in factorize(den).items():
            kind, primes = prime_splitting(spec, q)
            vq = 2 if kind == "ramified" else 1
            for P in primes:
                out[P] = out.get(P, 0) - e * vq
                if out[P] == 0:
                    del out[P]
    return sorted(out.items(), key=lambda kv: (kv[0].q, kv[0].kind, kv[0].bit))


def multiply_factorization(spec: FieldSpec, factors: list[tuple[PrimeOfF, int]]) -> tuple[QuadIdeal, int]:
    """Reassemble a factorization into (integral ideal, integer denominator)."""
    num = QuadIdeal.unit_ideal(spec)
    den = 1
    for P, e in factors:
        if e > 0:
            num = num * P.ideal() ** e
        elif e < 0:
            num = num * P.ideal().conj() ** (-e)
            den *= P.ideal().norm() ** (-e)
    return num, den


# --- inertness in the unramified quadratic extensions F(sqrt(p_I)) ---


def coprime_rep(spec: FieldSpec, indices: frozenset[int], q: int) -> int:
    """p_I or its complement product, whichever is coprime to q."""
    m = spec.product_over(indices)
    if m % q:
        return m
    mc = spec.product_over(spec.complement(indices))
    if mc % q == 0:
        raise ValueError("no coprime representative exists")
    return mc


def inert_in_ext(spec: FieldSpec, indices: frozenset[int], prime: PrimeOfF) -> bool:
    """Is the prime inert in N = F(sqrt(p_I))?

    The extension is everywhere unramified; inertness of a degree-one prime
    is a quadratic-residue condition on a representative of p_I coprime to
    it, primes over 2 follow the mod-8 rules, and inert primes of F always
    split (their residue field already contains all rational square roots).
    """
    if not indices or indices == frozenset(range(spec.r)):
        return False  # the trivial extension N = F
    q = prime.q
    if prime.kind == "inert":
        return False
    if q == 2:
        return spec.product_over(indices) % 8 == 5
    m = coprime_rep(spec, indices, q)
    return legendre(m, q) == -1


def artin_symbol_formal(spec: FieldSpec, indices: frozenset[int], factors) -> int:
    """Artin symbol of a factored fractional ideal in gal(F(sqrt(p_I))/F) = Z/2.

    Counts inert prime divisors with multiplicity, mod 2; the value 1 means
    the symbol is the nontrivial automorphism (written 1/2 in (1/2)Z/Z).
    """
    total = 0
    for P, e in factors:
        if inert_in_ext(spec, indices, P):
            total += e
    return total % 2


def artin_symbol(spec: FieldSpec, indices: frozenset[int], I: QuadIdeal, den: int = 1) -> int:
    return artin_symbol_formal(spec, indices, factor_ideal(spec, I, den))


# --- class group via reduced binary quadratic forms ---


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """All reduced primitive forms (a, b, c) of fundamental discriminant d < 0."""
    out = []
    amax = math.isqrt(abs(d) // 3)
    for a in range(1, amax + 1):
        for b in _sqrts_mod_4a(d, a):
            c, rem = divmod(b * b - d, 4 * a)
            if rem or c < a:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            if b < 0 and a == c:
                continue
            out.append((a, b, c))
    return out


def _sqrts_mod_4a(d: int, a: int) -> list[int]:
    """Representatives b in (-a, a] with b^2 = d (mod 4a)."""
    m = 4 * a
    out = set()
    for r in sqrt_mod_composite(d % m, m):
        b = ((r + a - 1) % m) - (a - 1)  # shift into (-a, a]
        if -a < b <= a and (b * b - d) % m == 0:
            out.add(b)
    return sorted(out)


def sqrt_mod_composite(a: int, m: int) -> list[int]:
    """All square roots of a mod m, via prime powers and CRT (m small)."""
    from .conics import sqrt_mod_prime_power

    sols = [0]
    mod = 1
    for p, k in factorize(m).items():
        pk = p**k
        local = sqrt_mod_prime_power(a % pk, p, k)
        if not local:
            return []
        sols = [_crt2(s, mod, t, pk) for s in sols for t in local]
        mod *= pk
    return sorted(set(sols))


def _crt2(a: int, m: int, b: int, n: int) -> int:
    t = (b - a) * pow(m % n, -1, n) % n
    return (a + m * t) % (m * n)


def form_reduce(f: tuple[int, int, int]) -> tuple[int, int, int]:
    a, b, c = f
    d = b * b - 4 * a * c
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            r = (a - b) // (2 * a)
            b = b + 2 * r * a
            c = (b * b - d) // (4 * a)
            continue
        if a == c and b < 0:
            b = -b
            continue
        return (a, b, c)


def ideal_of_form(spec, f: tuple[int, int, int]) -> QuadIdeal:
    """The ideal a*Z + ((-b + sqrt d)/2)*Z attached to the form (a, b, c)."""
    a, b, _ = f
    return QuadIdeal(spec, a, (-(b + 1) // 2) % a, 1)


def form_of_ideal(I: QuadIdeal) -> tuple[int, int, int]:
    """The reduced form N(x*g1 - y*g2)/N(I) of an ideal with HNF basis g1, g2."""
    g1, g2 = I.gens()
    n = I.norm()
    A = g1.norm() // n
    B = -(g1 * g2.conj()).trace() // n
    C = g2.norm() // n
    return form_reduce((A, B, C))


def form_identity(d: int) -> tuple[int, int, int]:
    return (1, 1, (1 - d) // 4)


def form_inverse(f: tuple[int, int, int]) -> tuple[int, int, int]:
    a, b, c = f
    return form_reduce((a, -b, c))


def form_compose(f: tuple[int, int, int], g: tuple[int, int, int], d: int) -> tuple[int, int, int]:
    """Composition of form classes through exact ideal multiplication."""
    spec = _Disc(d)
    return form_of_ideal(ideal_of_form(spec, f) * ideal_of_form(spec, g))


def form_pow(f: tuple[int, int, int], e: int, d: int) -> tuple[int, int, int]:
    out = form_identity(d)
    base = f if e >= 0 else form_inverse(f)
    e = abs(e)
    while e:
        if e & 1:
            out = form_compose(out, base, d)
        base = form_compose(base, base, d)
        e >>= 1
    return out


class ClassGroup:
    """The form class group of disc d: order, structure, distinguished classes."""

    def __init__(self, spec: FieldSpec, guard: int = 10**9):
        if abs(spec.d) > guard:
            raise ValueError(f"|d| = {abs(spec.d)} exceeds the class-group size guard {guard}")
        self.spec = spec
        self.d = spec.d
        self.forms = reduced_forms(self.d)
        self.h = len(self.forms)
        self.ram_classes = [self._ram_class(i) for i in range(spec.r)]
        self._structure = None

    def _ram_class(self, i: int) -> tuple[int, int, int]:
        q = abs(self.spec.primes[i])
        return form_reduce((q, q, (q * q - self.d) // (4 * q)))

    def identity(self) -> tuple[int, int, int]:
        return form_identity(self.d)

    def compose(self, f, g):
        return form_compose(f, g, self.d)

    def power(self, f, e):
        return form_pow(f, e, self.d)

    def two_torsion_classes(self) -> list[tuple[int, int, int]]:
        return [f for f in self.forms if self.compose(f, f) == self.identity()]

    @property
    def two_rank(self) -> int:
        n2 = len(self.two_torsion_classes())
        r = n2.bit_length() - 1
        if 1 << r != n2:
            raise AssertionError("2-torsion count is not a power of two")
        return r

    def class_of_ideal(self, I: QuadIdeal) -> tuple[int, int, int]:
        return form_of_ideal(I)

    def structure(self, max_h: int = 10**5):
        """Invariant factors, generators, and a coordinate map, via relations.

        Walks the whole group from greedy generators, collects the relation
        lattice of the generator tuple, and Smith-reduces it.
        """
        if self._structure is not None:
            return self._structure
        if self.h > max_h:
            raise ValueError("class group too large for structure computation")
        ident = self.identity()
        gens: list[tuple[int, int, int]] = []
        table: dict[tuple[int, int, int], tuple[int, ...]] = {ident: ()}
        for f in self.forms:
            if f not in table:
                gens.append(f)
                table = self._close(gens)
                if len(table) == self.h:
                    break
        k = len(gens)
        rels = []
        for f, vec in table.items():
            for i, g in enumerate(gens):
                w = self.compose(f, g)
                rel = list(vec) + [0] * (k - len(vec))
                rel[i] += 1
                tgt = table[w]
                rel = [rel[j] - (tgt[j] if j < len(tgt) else 0) for j in range(k)]
                if any(rel):
                    rels.append(rel)
        divisors, coord_fn = _relation_structure(k, rels)
        self._structure = (divisors, gens, table, coord_fn)
        return self._structure

    def _close(self, gens):
        ident = self.identity()
        k = len(gens)
        table = {ident: (0,) * k}
        frontier = [ident]
        while frontier:
            f = frontier.pop()
            vec = table[f]
            for i, g in enumerate(gens):
                w = self.compose(f, g)
                if w not in table:
                    nv = list(vec)
                    nv[i] += 1
                    table[w] = tuple(nv)
                    frontier.append(w)
        return table

    def elementary_divisors(self, max_h: int = 10**5) -> list[int]:
        divisors, _, _, _ = self.structure(max_h)
        out = []
        for m in divisors:
            for p, e in factorize(m).items():
                out.append(p**e)
        return sorted(out, reverse=True)

    def class_coordinates(self, I: QuadIdeal) -> tuple[int, ...]:
        divisors, gens, table, coord_fn = self.structure()
        return coord_fn(table[self.class_of_ideal(I)])


def _lattice_insert(pivcols: dict[int, list[int]], col: list[int], k: int) -> None:
    """Fold a column into a triangular lattice basis, keyed by pivot row."""
    col = col[:]
    while True:
        r = next((i for i in range(k) if col[i] != 0), None)
        if r is None:
            return
        if r not in pivcols:
            pivcols[r] = col if col[r] > 0 else [-x for x in col]
            return
        b = pivcols[r]
        if abs(col[r]) < abs(b[r]):
            pivcols[r] = col if col[r] > 0 else [-x for x in col]
            col = b
            b = pivcols[r]
        q = col[r] // b[r]
        col = [c - q * x for c, x in zip(col, b)]


def _relation_structure(k: int, rels: list[list[int]]):
    """SNF of the relation lattice of a generating k-tuple of a finite group.

    Returns (invariant factors > 1, coordinate function on exponent vectors).
    """
    if k == 0:
        return [], lambda vec: ()
    pivcols: dict[int, list[int]] = {}
    for rel in rels:
        _lattice_insert(pivcols, rel, k)
    if len(pivcols) != k:
        raise AssertionError("relation lattice is not full rank (group not finite?)")
    cols = [pivcols[r] for r in sorted(pivcols)]
    S = [[cols[j][i] for j in range(k)] for i in range(k)]
    U = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    t = 0
    while t < k:
        best = None
        for i in range(t, k):
            for j in range(t, k):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            raise AssertionError("unexpected rank drop in SNF")
        bi, bj = best
        S[t], S[bi] = S[bi], S[t]
        U[t], U[bi] = U[bi], U[t]
        for row in S:
            row[t], row[bj] = row[bj], row[t]
        dirty = False
        for i in range(k):
            if i != t and S[i][t]:
                q = S[i][t] // S[t][t]
                S[i] = [S[i][j] - q * S[t][j] for j in range(k)]
                U[i] = [U[i][j] - q * U[t][j] for j in range(k)]
                dirty = dirty or S[i][t] != 0
        for j in range(k):
            if j != t and S[t][j]:
                q = S[t][j] // S[t][t]
                for row in S:
                    row[j] -= q * row[t]
                dirty = dirty or S[t][j] != 0
        if dirty:
            continue
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [S[i][i] for i in range(k)]

    def coord_fn(vec):
        w = [sum(U[i][j] * (vec[j] if j < len(vec) else 0) for j in range(k)) for i in range(k)]
        return tuple(w[i] % diag[i] for i in range(k) if diag[i] > 1)

    return [m for m in diag if m > 1], coord_fn


def two_torsion(spec: FieldSpec, guard: int = 10**9) -> dict:
    """Genus-theory data with full verification.

    Checks that the ramified classes satisfy exactly the single full-product
    relation, generate the 2-torsion, and that the 2-rank is r - 1; returns
    the H^1-basis bookkeeping (basis class i corresponds to F(sqrt(p_i)))'.
    """
    cl = ClassGroup(spec, guard)
    ident = cl.identity()
    r = spec.r
    prods = {}
    for mask in range(1 << r):
        f = ident
        for i in range(r):
            if mask >> i & 1:
                f = cl.compose(f, cl.ram_classes[i])
        prods[mask] = f
    kernel = sorted(mask for mask in range(1 << r) if prods[mask] == ident)
    if kernel != [0, (1 << r) - 1]:
        raise AssertionError("ramified classes do not satisfy exactly the single full relation")
    if set(prods.values()) != set(cl.two_torsion_classes()):
        raise AssertionError("ramified classes do not generate the 2-torsion")
    if cl.two_rank != r - 1:
        raise AssertionError("2-rank does not match genus theory")
    return {
        "class_group": cl,
        "rank": r - 1,
        "basis_indices": list(range(r - 1)),
        "extension_of_basis_class": {i: frozenset([i]) for i in range(r - 1)},
    }
