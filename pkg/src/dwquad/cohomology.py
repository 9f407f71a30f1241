"""Group cohomology of finite groups by exact linear algebra.

The normalized cochain complex (and the relative cone complex) are exposed
as matrix complexes; kernels, coboundary solves and subquotient structures
come from the local Smith machinery in linalg.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .cochains import Cochain, RelativeCochain, RelativePair, index_tuple, tuple_count
from .gmodules import GModule
from .groups import FiniteGroup
from .linalg import ComplexOps


class GroupComplex(ComplexOps):
    """Normalized inhomogeneous cochain complex of (G, A)."""

    def __init__(self, G: FiniteGroup, A: GModule, guard: int = 2**24):
        self.G, self.A, self.guard = G, A, guard
        self._mats: dict[int, np.ndarray] = {}

    def coord_moduli(self, degree: int) -> list[int]:
        if degree < 0:
            return []
        return list(self.A.moduli) * tuple_count(self.G.n, degree)

    def ncoords(self, degree: int) -> int:
        return len(self.coord_moduli(degree))

    def diff_matrix(self, degree: int) -> np.ndarray:
        if degree < 0:
            return np.zeros((self.ncoords(0), 0), dtype=np.int64)
        if degree in self._mats:
            return self._mats[degree]
        G, A = self.G, self.A
        Cochain.check_size(G, A, degree + 1, self.guard)
        g, k = G.n, A.k
        rows = self.ncoords(degree + 1)
        cols = self.ncoords(degree)
        D = np.zeros((rows, cols), dtype=np.int64)
        for tidx in range(tuple_count(g, degree + 1)):
            ys = index_tuple(tidx, g, degree + 1)
            # term 0: y1 . c(y2..)
            tail = ys[1:]
            if all(a != 0 for a in tail):
                src = _tidx(tail, g)
                mat = A.mats[ys[0]]
                for p in range(k):
                    for q in range(k):
                        if mat[p][q] % A.moduli[p]:
                            D[tidx * k + p, src * k + q] += mat[p][q]
            sign = -1
            for pos in range(1, degree + 1):
                merged = ys[: pos - 1] + (G.table[ys[pos - 1]][ys[pos]],) + ys[pos + 1 :]
                if all(a != 0 for a in merged):
                    src = _tidx(merged, g)
                    for p in range(k):
                        D[tidx * k + p, src * k + p] += sign
                sign = -sign
            head = ys[: degree]
            if all(a != 0 for a in head):
                src = _tidx(head, g)
                for p in range(k):
                    D[tidx * k + p, src * k + p] += sign
        self._mats[degree] = D
        return D

    def to_cochain(self, degree: int, vec) -> Cochain:
        return Cochain.from_vector(self.G, self.A, degree, list(vec))


def _tidx(args, g):
    idx = 0
    for a in args:
        idx = idx * (g - 1) + (a - 1)
    return idx


class RelativeComplex(ComplexOps):
    """Cone complex C^i(Delta) + C^{i-1}(pi) with d = (d, -res - d)."""

    def __init__(self, pair: RelativePair, A: GModule, guard: int = 2**24):
        self.pair = pair
        self.A = A
        self.delta_cx = GroupComplex(pair.delta, A, guard)
        self.local_cx = [GroupComplex(pv, A.pullback(pv, hom), guard) for pv, hom in pair.locals]

    def coord_moduli(self, degree: int) -> list[int]:
        mods = list(self.delta_cx.coord_moduli(degree))
        for cx in self.local_cx:
            mods += cx.coord_moduli(degree - 1)
        return mods

    def diff_matrix(self, degree: int) -> np.ndarray:
        rows = len(self.coord_moduli(degree + 1))
        cols = len(self.coord_moduli(degree))
        D = np.zeros((rows, cols), dtype=np.int64)
        dD = self.delta_cx.diff_matrix(degree)
        ra, ca = dD.shape
        D[:ra, :ca] = dD
        row0 = ra
        col0 = ca
        for (pv, hom), cx in zip(self.pair.locals, self.local_cx):
            res = _restriction_matrix(self.delta_cx, cx, hom, degree)
            rl = res.shape[0]
            D[row0 : row0 + rl, :ca] = -res
            if degree >= 1:
                dl = cx.diff_matrix(degree - 1)
                D[row0 : row0 + dl.shape[0], col0 : col0 + dl.shape[1]] = -dl
                col0 += dl.shape[1]
            row0 += rl
        return D

    def to_relative(self, degree: int, vec) -> RelativeCochain:
        vec = list(vec)
        na = self.delta_cx.ncoords(degree)
        alpha = self.delta_cx.to_cochain(degree, vec[:na])
        betas = []
        pos = na
        for cx in self.local_cx:
            nb = cx.ncoords(degree - 1)
            betas.append(cx.to_cochain(degree - 1, vec[pos : pos + nb]))
            pos += nb
        return RelativeCochain(self.pair, degree, alpha, betas)

    def vector_of(self, rc: RelativeCochain) -> list[int]:
        out = rc.alpha.as_vector()
        for b in rc.betas:
            out += b.as_vector()
        return out


def _restriction_matrix(amb: GroupComplex, loc: GroupComplex, hom: list[int], degree: int) -> np.ndarray:
    """Matrix of pullback along hom from ambient degree-d coords to local coords."""
    g_loc = loc.G.n
    g_amb = amb.G.n
    k = amb.A.k
    rows = loc.ncoords(degree)
    cols = amb.ncoords(degree)
    R = np.zeros((rows, cols), dtype=np.int64)
    for tidx in range(tuple_count(g_loc, degree)):
        ys = index_tuple(tidx, g_loc, degree)
        imgs = tuple(hom[y] for y in ys)
        if all(a != 0 for a in imgs):
            src = _tidx(imgs, g_amb)
            for p in range(k):
                R[tidx * k + p, src * k + p] = 1
    return R


class CohomologyResult:
    def __init__(self, orders: list[int], reps: list[Cochain], cx: "GroupComplex", degree: int):
        self.orders = orders
        self.reps = reps
        self._cx = cx
        self._degree = degree
        self.h_size = 1
        for o in orders:
            self.h_size *= o

    @property
    def z_size(self) -> int:
        cx, degree = self._cx, self._degree
        return cx.subgroup_size(cx.cocycle_gens(degree), degree)

    @property
    def b_size(self) -> int:
        cx, degree = self._cx, self._degree
        if degree == 0:
            return 1
        c_below = 1
        for m in cx.coord_moduli(degree - 1):
            c_below *= m
        z_below = cx.subgroup_size(cx.cocycle_gens(degree - 1), degree - 1)
        return c_below // z_below

    def __repr__(self) -> str:
        return f"H(orders={sorted(self.orders, reverse=True)}, size={self.h_size})"


def cohomology(G: FiniteGroup, A: GModule, degree: int, guard: int = 2**24) -> CohomologyResult:
    """H^degree(G, A) from normalized cochains: cyclic orders and representatives."""
    cx = GroupComplex(G, A, guard)
    orders, rep_vecs = cx.cohomology_orders_and_reps(degree)
    reps = [cx.to_cochain(degree, v) for v in rep_vecs]
    return CohomologyResult(orders, reps, cx, degree)


def is_coboundary(c: Cochain, guard: int = 2**24) -> Cochain | None:
    """A witness b with db = c, or None; raises if c is not a cocycle."""
    if not c.differential().is_zero():
        raise ValueError("input is not a cocycle")
    cx = GroupComplex(c.G, c.A, guard)
    vec = cx.coboundary_witness(c.degree, np.array(c.as_vector(), dtype=np.int64))
    if vec is None:
        return None
    b = cx.to_cochain(c.degree - 1, vec)
    assert b.differential() == c
    return b


def relative_is_coboundary(rc: RelativeCochain, guard: int = 2**24) -> RelativeCochain | None:
    """A relative witness w with dw = rc, or None.  Needs degree >= 2."""
    if rc.degree < 2:
        raise ValueError("relative coboundary solve supported in degree >= 2")
    if not rc.differential().is_zero():
        raise ValueError("input is not a relative cocycle")
    rcx = RelativeComplex(rc.pair, rc.alpha.A, guard)
    target = np.array(rcx.vector_of(rc), dtype=np.int64)
    vec = rcx.coboundary_witness(rc.degree, target)
    if vec is None:
        return None
    out = rcx.to_relative(rc.degree - 1, vec)
    assert out.differential() == rc
    return out


def random_cocycle(G: FiniteGroup, A: GModule, degree: int, rng: random.Random, guard: int = 2**24) -> Cochain:
    """A random element of Z^degree(G, A)."""
    cx = GroupComplex(G, A, guard)
    mods = np.array(cx.coord_moduli(degree), dtype=np.int64)
    if len(mods) == 0:
        return Cochain.zero(G, A, degree)
    vec = np.zeros(len(mods), dtype=np.int64)
    for g in cx.cocycle_gens(degree):
        vec = (vec + rng.randrange(0, A.n) * g) % mods
    return cx.to_cochain(degree, vec)


def h0_size(G: FiniteGroup, A: GModule) -> int:
    count = 0
    for a in A.elements():
        if all(A.act(g, a) == a for g in range(G.n)):
            count += 1
    return count


def z1_size(G: FiniteGroup, A: GModule) -> int:
    cx = GroupComplex(G, A)
    return cx.subgroup_size(cx.cocycle_gens(1), 1)


def counting_identity_holds(G: FiniteGroup, A: GModule) -> bool:
    """#Z^1/#A = #H^1/#H^0 by direct computation of all four cardinalities."""
    z1 = z1_size(G, A)
    h1 = cohomology(G, A, 1).h_size
    h0 = h0_size(G, A)
    return z1 * h0 == h1 * A.size()


def euler_characteristic(G: FiniteGroup, A: GModule, max_degree: int) -> Fraction:
    """Alternating product of #H^i up to max_degree (caller asserts vanishing beyond)."""
    chi = Fraction(1)
    for i in range(max_degree + 1):
        size = cohomology(G, A, i).h_size
        chi = chi * size if i % 2 == 0 else chi / size
    return chi


def enumerate_lifts(delta: FiniteGroup, sigma: list[int], data, guard: int = 2**24) -> list[list[int]]:
    """All homomorphisms tau: delta -> data.G with k o tau = sigma.

    The lifts are exactly tau = (-b, sigma) for b in the solution coset of
    db = sigma^* gamma, so the count is 0 or #Z^1(delta, sigma^* A).
    """
    from .groups import is_homomorphism

    pulled = data.gamma.pullback(delta, sigma)
    b0 = is_coboundary(pulled, guard)
    if b0 is None:
        return []
    cx = GroupComplex(delta, pulled.A, guard)
    gens = cx.cocycle_gens(1)
    mods = np.array(cx.coord_moduli(1), dtype=np.int64)
    base = np.array(b0.as_vector(), dtype=np.int64)
    seen = set()
    sols = []
    stack = [base % mods] if len(mods) else [base]
    # enumerate the coset b0 + Z^1 by closing under generator additions
    while stack:
        v = stack.pop()
        key = tuple(int(x) for x in v)
        if key in seen:
            continue
        seen.add(key)
        sols.append(v)
        for g in gens:
            stack.append((v + g) % mods)
    lifts = []
    for v in sols:
        b = cx.to_cochain(1, v)
        tau = [data.pair_index(data.A.neg(b.value(y)) if y else data.A.zero(), sigma[y]) for y in range(delta.n)]
        assert is_homomorphism(delta, data.G, tau)
        lifts.append(tau)
    lifts.sort()
    return lifts
