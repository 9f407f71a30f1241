"""Normalized inhomogeneous cochains on finite groups.

A degree-i cochain stores values only on tuples of non-identity elements;
any argument equal to the identity evaluates to zero, so normalization is
structural.  The differential follows the convention

    dc(y1..y_{i+1}) = y1.c(y2..y_{i+1})
                      + sum_k (-1)^k c(y1,..,y_k y_{k+1},..,y_{i+1})
                      + (-1)^{i+1} c(y1..y_i)

and the cup product is (c u c')(y1..y_{i+j}) = <c(y1..yi), (y1...yi).c'(...)>.
"""

from __future__ import annotations

import itertools
import random

from .gmodules import GModule, Pairing
from .groups import FiniteGroup

SIZE_GUARD = 2**24


def tuple_count(g: int, degree: int) -> int:
    return (g - 1) ** degree


def tuple_index(args: tuple[int, ...], g: int) -> int:
    """Mixed-radix index of a tuple of non-identity elements (values 1..g-1)."""
    idx = 0
    for a in args:
        idx = idx * (g - 1) + (a - 1)
    return idx


def index_tuple(idx: int, g: int, degree: int) -> tuple[int, ...]:
    out = []
    for _ in range(degree):
        out.append(idx % (g - 1) + 1)
        idx //= g - 1
    return tuple(reversed(out))


def all_tuples(G: FiniteGroup, degree: int):
    """All argument tuples over the full group, identity included."""
    return itertools.product(range(G.n), repeat=degree)


class Cochain:
    def __init__(self, G: FiniteGroup, A: GModule, degree: int, vals: list[tuple[int, ...]]):
        self.G = G
        self.A = A
        self.degree = degree
        self.vals = vals
        expect = tuple_count(G.n, degree)
        if len(vals) != expect:
            raise ValueError(f"value table has {len(vals)} entries, expected {expect}")

    @staticmethod
    def check_size(G: FiniteGroup, A: GModule, degree: int, guard: int = SIZE_GUARD) -> None:
        if tuple_count(G.n, degree) * max(1, A.k) > guard:
            raise ValueError("cochain space exceeds the size guard")

    @staticmethod
    def zero(G: FiniteGroup, A: GModule, degree: int) -> "Cochain":
        return Cochain(G, A, degree, [A.zero()] * tuple_count(G.n, degree))

    @staticmethod
    def from_function(G: FiniteGroup, A: GModule, degree: int, fn, check_normalized: bool = True) -> "Cochain":
        Cochain.check_size(G, A, degree)
        vals = [
            A.reduce(fn(*index_tuple(i, G.n, degree)))
            for i in range(tuple_count(G.n, degree))
        ]
        c = Cochain(G, A, degree, vals)
        if check_normalized and degree >= 1:
            for args in _identity_samples(G, degree):
                if any(fn(*args)[j] % A.moduli[j] for j in range(A.k)):
                    raise ValueError("function is not normalized (nonzero on identity slot)")
        return c

    @staticmethod
    def random(G: FiniteGroup, A: GModule, degree: int, rng: random.Random) -> "Cochain":
        vals = [
            tuple(rng.randrange(m) for m in A.moduli)
            for _ in range(tuple_count(G.n, degree))
        ]
        return Cochain(G, A, degree, vals)

    def value(self, *args: int) -> tuple[int, ...]:
        if len(args) != self.degree:
            raise ValueError("wrong number of arguments")
        if any(a == 0 for a in args):
            return self.A.zero()
        return self.vals[tuple_index(args, self.G.n)]

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in v) for v in self.vals)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.G is other.G
            and self.vals == other.vals
        )

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.degree != other.degree or self.A.moduli != other.A.moduli:
            raise ValueError("cochain mismatch")
        return Cochain(self.G, self.A, self.degree, [self.A.add(a, b) for a, b in zip(self.vals, other.vals)])

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __neg__(self) -> "Cochain":
        return Cochain(self.G, self.A, self.degree, [self.A.neg(v) for v in self.vals])

    def smul(self, c: int) -> "Cochain":
        return Cochain(self.G, self.A, self.degree, [self.A.smul(c, v) for v in self.vals])

    # --- the structure maps ---

    def differential(self) -> "Cochain":
        G, A, i = self.G, self.A, self.degree
        Cochain.check_size(G, A, i + 1)

        def dc(*ys):
            acc = A.act(ys[0], self.value(*ys[1:]))
            sign = -1
            for k in range(1, i + 1):
                merged = ys[: k - 1] + (G.table[ys[k - 1]][ys[k]],) + ys[k + 1 :]
                acc = A.add(acc, A.smul(sign, self.value(*merged)))
                sign = -sign
            acc = A.add(acc, A.smul(sign, self.value(*ys[:i])))
            return acc

        return Cochain.from_function(G, A, i + 1, dc, check_normalized=False)

    def cup(self, other: "Cochain", pairing: Pairing) -> "Cochain":
        if self.G is not other.G:
            raise ValueError("cup requires the same source group")
        if pairing.A.moduli != self.A.moduli or pairing.B.moduli != other.A.moduli:
            raise ValueError("pairing does not match the coefficient modules")
        G, i, j = self.G, self.degree, other.degree
        C = pairing.C

        def cc(*ys):
            left = self.value(*ys[:i])
            g = G.prod(ys[:i])
            right = other.A.act(g, other.value(*ys[i:]))
            return pairing(left, right)

        return Cochain.from_function(G, C, i + j, cc, check_normalized=False)

    def act_right(self, g: int) -> "Cochain":
        """c.g = g^{-1} . (conjugation pullback of c)."""
        G, A = self.G, self.A
        ginv = G.inv[g]

        def fn(*ys):
            return A.act(ginv, self.value(*(G.conj(g, y) for y in ys)))

        return Cochain.from_function(G, A, self.degree, fn, check_normalized=False)

    def conj_pullback(self, g: int) -> "Cochain":
        """ad_g^* c, with no coefficient twist."""
        G = self.G

        def fn(*ys):
            return self.value(*(G.conj(g, y) for y in ys))

        return Cochain.from_function(G, self.A, self.degree, fn, check_normalized=False)

    def chain_homotopy(self, g: int) -> "Cochain":
        """h_g(c): insert g^{-1} in every slot with conjugated tail, alternating signs."""
        if self.degree == 0:
            raise ValueError("h_g lowers degree; needs degree >= 1")
        G, A, i = self.G, self.A, self.degree - 1
        ginv = G.inv[g]

        def fn(*ys):
            acc = A.zero()
            sign = 1
            for k in range(i + 1):
                args = ys[:k] + (ginv,) + tuple(G.conj(g, y) for y in ys[k:])
                acc = A.add(acc, A.smul(sign, self.value(*args)))
                sign = -sign
            return acc

        return Cochain.from_function(G, A, i, fn, check_normalized=False)

    def pullback(self, dom: FiniteGroup, hom: list[int]) -> "Cochain":
        """sigma^* c along a homomorphism dom -> G, coefficients pulled back too."""
        A_pulled = self.A.pullback(dom, hom)

        def fn(*ys):
            return self.value(*(hom[y] for y in ys))

        return Cochain.from_function(dom, A_pulled, self.degree, fn, check_normalized=False)

    def bockstein_mod2(self) -> "Cochain":
        """Bockstein of 0 -> Z/2 -> Z/4 -> Z/2 -> 0 for Z/2 coefficients.

        Lift values through Z/4 -> Z/2 as 0/1, take d over Z/4, divide by 2.
        """
        if self.A.moduli != (2,):
            raise ValueError("bockstein_mod2 needs Z/2 coefficients")
        G, i = self.G, self.degree
        A4 = GModule.zn(G, 4)
        lift = Cochain(G, A4, i, [(v[0] % 2,) for v in self.vals])
        d4 = lift.differential()
        vals = []
        for v in d4.vals:
            if v[0] % 2:
                raise AssertionError("lifted differential not divisible by 2")
            vals.append(((v[0] // 2) % 2,))
        return Cochain(G, self.A, i + 1, vals)

    # --- vectorization for linear algebra ---

    def as_vector(self) -> list[int]:
        out = []
        for v in self.vals:
            out.extend(v)
        return out

    @staticmethod
    def from_vector(G: FiniteGroup, A: GModule, degree: int, vec) -> "Cochain":
        vals = [
            A.reduce(tuple(int(vec[t * A.k + j]) for j in range(A.k)))
            for t in range(tuple_count(G.n, degree))
        ]
        return Cochain(G, A, degree, vals)


def _identity_samples(G: FiniteGroup, degree: int):
    """A few argument tuples containing the identity, for normalization checks."""
    rng = random.Random(degree * 1009 + G.n)
    for slot in range(degree):
        for _ in range(3):
            args = [rng.randrange(G.n) for _ in range(degree)]
            args[slot] = 0
            yield tuple(args)


def char_cochain(G: FiniteGroup, A: GModule, bit_index: int) -> Cochain:
    """Degree-1 cochain reading one bit of the element name (for (Z/2)^s)."""

    def fn(y):
        return (G.names[y][bit_index] % 2,)

    return Cochain.from_function(G, A, 1, fn)


def cup_monomial(G: FiniteGroup, A: GModule, pairing: Pairing, indices: tuple[int, ...]) -> Cochain:
    """Iterated cup product x_{i1} u x_{i2} u ... of coordinate characters."""
    chars = [char_cochain(G, A, t) for t in indices]
    out = chars[0]
    for c in chars[1:]:
        out = out.cup(c, pairing)
    return out


# --- relative (cone) complex for a group with boundary tuple ---


class RelativePair:
    """Ambient group Delta with a tuple of groups pi_v mapping into it."""

    def __init__(self, delta: FiniteGroup, locals_: list[tuple[FiniteGroup, list[int]]]):
        from .groups import is_homomorphism

        self.delta = delta
        self.locals = locals_
        for pv, hom in locals_:
            if not is_homomorphism(pv, delta, hom):
                raise ValueError("boundary map is not a homomorphism")


class RelativeCochain:
    """Pair (alpha, (beta_v)) with alpha on Delta and beta_v of one degree lower."""

    def __init__(self, pair: RelativePair, degree: int, alpha: Cochain, betas: list[Cochain]):
        if degree < 1:
            raise ValueError("relative cochains are supported in degree >= 1")
        self.pair = pair
        self.degree = degree
        self.alpha = alpha
        self.betas = betas

    @staticmethod
    def zero(pair: RelativePair, A: GModule, degree: int) -> "RelativeCochain":
        if degree < 1:
            raise ValueError("relative cochains are supported in degree >= 1")
        alpha = Cochain.zero(pair.delta, A, degree)
        betas = [Cochain.zero(pv, A.pullback(pv, hom), degree - 1) for pv, hom in pair.locals]
        return RelativeCochain(pair, degree, alpha, betas)

    def __add__(self, other: "RelativeCochain") -> "RelativeCochain":
        return RelativeCochain(
            self.pair,
            self.degree,
            self.alpha + other.alpha,
            [a + b for a, b in zip(self.betas, other.betas)],
        )

    def __neg__(self) -> "RelativeCochain":
        return RelativeCochain(self.pair, self.degree, -self.alpha, [-b for b in self.betas])

    def __sub__(self, other: "RelativeCochain") -> "RelativeCochain":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RelativeCochain)
            and self.degree == other.degree
            and self.alpha == other.alpha
            and all(a == b for a, b in zip(self.betas, other.betas))
        )

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and all(b.is_zero() for b in self.betas)

    def differential(self) -> "RelativeCochain":
        """d(alpha, beta) = (d alpha, -alpha|pi - d beta)."""
        dalpha = self.alpha.differential()
        new_betas = []
        for (pv, hom), beta in zip(self.pair.locals, self.betas):
            restr = self.alpha.pullback(pv, hom)
            new_betas.append(-(restr + beta.differential()))
        return RelativeCochain(self.pair, self.degree + 1, dalpha, new_betas)

    def cup_right(self, gamma: Cochain, pairing: Pairing) -> "RelativeCochain":
        """(alpha, beta) u gamma = (alpha u gamma, beta u gamma|pi)."""
        alpha = self.alpha.cup(gamma, pairing)
        betas = []
        for (pv, hom), beta in zip(self.pair.locals, self.betas):
            g_res = gamma.pullback(pv, hom)
            betas.append(beta.cup(g_res, pairing))
        return RelativeCochain(self.pair, self.degree + gamma.degree, alpha, betas)

    def cup_left(self, gamma: Cochain, pairing: Pairing) -> "RelativeCochain":
        """gamma u (alpha, beta) = (gamma u alpha, (-1)^deg(gamma) gamma|pi u beta)."""
        sign = -1 if gamma.degree % 2 else 1
        alpha = gamma.cup(self.alpha, pairing)
        betas = []
        for (pv, hom), beta in zip(self.pair.locals, self.betas):
            g_res = gamma.pullback(pv, hom)
            betas.append(g_res.cup(beta, pairing).smul(sign))
        return RelativeCochain(self.pair, self.degree + gamma.degree, alpha, betas)
