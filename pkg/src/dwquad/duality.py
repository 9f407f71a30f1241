"""Duality data: extensions A x|_gamma K, the dual side, and the 3-cocycles.

Given an n-torsion K-module A, a normalized 2-cocycle gamma in A, a cocycle
gamma_hat in the dual module, and a 3-cochain e with de = gamma u gamma_hat,
this builds G = A x|_gamma K and G_hat = A_hat x|_gamma_hat K with their
projections and the 3-cocycles

    omega     = k^* e + a u k^* gamma_hat      on G,
    omega_hat = k^* e + k^* gamma u a_hat      on G_hat,

verifying d omega = d omega_hat = 0 by full evaluation.
"""

from __future__ import annotations

from .cochains import Cochain, cup_monomial
from .gmodules import GModule, Pairing
from .groups import FiniteGroup, is_homomorphism


class SemidirectProduct:
    """A x|_gamma K with multiplication (m,l)(m',l') = (m + l.m' + gamma(l,l'), ll')."""

    def __init__(self, A: GModule, gamma: Cochain):
        K = A.group
        if gamma.degree != 2 or gamma.G is not K or gamma.A.moduli != A.moduli:
            raise ValueError("gamma must be a 2-cochain on K with values in A")
        if not gamma.differential().is_zero():
            raise ValueError("gamma is not a cocycle")
        self.A, self.K, self.gamma = A, K, gamma
        a_elems = list(A.elements())
        self._a_index = {a: i for i, a in enumerate(a_elems)}
        self._elems = [(a, l) for a in a_elems for l in range(K.n)]
        # normalized gamma puts the identity (0, 0) at index 0
        idx = {e: i for i, e in enumerate(self._elems)}
        table = []
        for m, l in self._elems:
            row = []
            for m2, l2 in self._elems:
                prod = (A.add(A.add(m, A.act(l, m2)), gamma.value(l, l2)), K.table[l][l2])
                row.append(idx[prod])
            table.append(row)
        names = [(m, K.names[l]) for m, l in self._elems]
        self.group = FiniteGroup(table, names=names, check=True)
        self._index = idx
        self.k_proj = [l for _, l in self._elems]
        self.a_proj = [m for m, _ in self._elems]
        if not is_homomorphism(self.group, K, self.k_proj):
            raise AssertionError("projection to K is not a homomorphism")
        if not self._da_is_minus_gamma():
            raise AssertionError("da = -k^* gamma fails")

    def index(self, a_coords, l: int) -> int:
        return self._index[(tuple(a_coords), l)]

    def a_cochain(self) -> Cochain:
        """The set-theoretic projection onto A as a normalized 1-cochain on G."""
        A_on_g = self.A.pullback(self.group, self.k_proj)
        return Cochain.from_function(self.group, A_on_g, 1, lambda y: self.a_proj[y])

    def section(self, l: int) -> int:
        return self.index(self.A.zero(), l)

    def embed_a(self, a_coords) -> int:
        return self.index(tuple(a_coords), 0)

    def _da_is_minus_gamma(self) -> bool:
        a = self.a_cochain()
        da = a.differential()
        kg = self.gamma.pullback(self.group, self.k_proj)
        return da == -kg


def semidirect_product(A: GModule, gamma: Cochain) -> SemidirectProduct:
    return SemidirectProduct(A, gamma)


class DualityData:
    """The tuple (n, K, A, gamma, gamma_hat, e) with both extensions and cocycles."""

    def __init__(self, n: int, A: GModule, gamma: Cochain, gamma_hat: Cochain, e: Cochain):
        K = A.group
        self.n = n
        self.K = K
        self.A = A
        self.Ahat = gamma_hat.A
        self.gamma, self.gamma_hat, self.e = gamma, gamma_hat, e
        Zn = GModule.zn(K, n)
        ev = Pairing.evaluation(A, self.Ahat, Zn)
        if e.degree != 3 or gamma.degree != 2 or gamma_hat.degree != 2:
            raise ValueError("degrees must be (2, 2, 3)")
        if not gamma.differential().is_zero() or not gamma_hat.differential().is_zero():
            raise ValueError("gamma and gamma_hat must be cocycles")
        if e.differential() != gamma.cup(gamma_hat, ev):
            raise ValueError("de = gamma u gamma_hat fails")
        self.ext = SemidirectProduct(A, gamma)
        self.ext_hat = SemidirectProduct(self.Ahat, gamma_hat)
        self.G = self.ext.group
        self.Ghat = self.ext_hat.group
        self.omega = self._build_omega()
        self.omega_hat = self._build_omega_hat()
        if not self.omega.differential().is_zero():
            raise AssertionError("d omega != 0")
        if not self.omega_hat.differential().is_zero():
            raise AssertionError("d omega_hat != 0")

    def pair_index(self, a_coords, l: int) -> int:
        return self.ext.index(tuple(a_coords), l)

    def _build_omega(self) -> Cochain:
        G = self.G
        kp = self.ext.k_proj
        ap = self.ext.a_proj
        A, Ahat, n = self.A, self.Ahat, self.n
        e, gh = self.e, self.gamma_hat
        ZnG = GModule.zn(G, n)

        def fn(y1, y2, y3):
            total = e.value(kp[y1], kp[y2], kp[y3])[0]
            right = Ahat.act(kp[y1], gh.value(kp[y2], kp[y3]))
            total += A.eval_pairing(ap[y1], right)
            return (total,)

        return Cochain.from_function(G, ZnG, 3, fn)

    def _build_omega_hat(self) -> Cochain:
        Gh = self.Ghat
        kp = self.ext_hat.k_proj
        ap = self.ext_hat.a_proj
        A, n = self.A, self.n
        e, g = self.e, self.gamma
        ZnG = GModule.zn(Gh, n)

        def fn(y1, y2, y3):
            total = e.value(kp[y1], kp[y2], kp[y3])[0]
            km = self.K.table[kp[y1]][kp[y2]]
            right = self.Ahat.act(km, ap[y3])
            total += A.eval_pairing(g.value(kp[y1], kp[y2]), right)
            return (total,)

        return Cochain.from_function(Gh, ZnG, 3, fn)


def build_duality_data(n: int, A: GModule, gamma: Cochain, gamma_hat: Cochain, e: Cochain) -> DualityData:
    return DualityData(n, A, gamma, gamma_hat, e)


def hg_closed_form_check(data: DualityData, m_coords, dual_side: bool = False) -> bool:
    """Check h_g(omega) = -m u k^* gamma_hat for g = (m, 1) (and the dual twin).

    The closed form is evaluated on all argument pairs of the relevant group.
    """
    if not dual_side:
        ext, omega, other = data.ext, data.omega, data.gamma_hat
        g = ext.embed_a(m_coords)
        h = omega.chain_homotopy(g)
        G = data.G
        kp = ext.k_proj
        for y1 in range(G.n):
            for y2 in range(G.n):
                rhs = -data.A.eval_pairing(
                    m_coords, data.Ahat.act(0, other.value(kp[y1], kp[y2]))
                ) % data.n
                if h.value(y1, y2)[0] != rhs:
                    return False
        return True
    ext, omega, g_coc = data.ext_hat, data.omega_hat, data.gamma
    g = ext.embed_a(m_coords)
    h = omega.chain_homotopy(g)
    Gh = data.Ghat
    kp = ext.k_proj
    for y1 in range(Gh.n):
        for y2 in range(Gh.n):
            km = data.K.table[kp[y1]][kp[y2]]
            rhs = -data.A.eval_pairing(g_coc.value(kp[y1], kp[y2]), data.Ahat.act(km, m_coords)) % data.n
            if h.value(y1, y2)[0] != rhs:
                return False
    return True


class GroupPreset:
    """A named duality datum whose gamma is a sum of cup monomials of characters.

    The monomials drive the arithmetic side: the K-characters pull back to
    degree-one classes of the number ring, and omega_hat pulls back through
    the same monomials with the dual coordinate appended.
    """

    def __init__(self, name: str, gamma_monomials: list[tuple[int, int]], expected_orders: dict[int, int]):
        self.name = name
        self.gamma_monomials = gamma_monomials
        self.s = 2
        K = FiniteGroup.elementary_abelian(2)
        A = GModule.zn(K, 2)
        Z2 = A
        mult = Pairing.zn_mult(Z2, Z2, Z2)
        gamma = Cochain.zero(K, A, 2)
        for mono in gamma_monomials:
            gamma = gamma + cup_monomial(K, Z2, mult, mono)
        gamma_hat = Cochain.zero(K, A.dual(), 2)
        e = Cochain.zero(K, GModule.zn(K, 2), 3)
        self.data = DualityData(2, A, gamma, gamma_hat, e)
        hist = self.data.G.order_histogram()
        if hist != expected_orders:
            raise AssertionError(f"{name}: extension has wrong element orders {hist}")
        if not self.data.omega.is_zero():
            raise AssertionError(f"{name}: omega should vanish")
        # omega_hat as monomials of G_hat characters: gamma-monomials with the
        # dual coordinate (index s = 2) appended
        self.omega_hat_monomials = [(i, j, 2) for (i, j) in gamma_monomials]

    @property
    def group_order(self) -> int:
        return self.data.G.n


_PRESETS: dict[str, GroupPreset] = {}


def preset(name: str) -> GroupPreset:
    """The quaternion or dihedral duality datum, cached.

    q8: gamma = x u y + x u x + y u y, a central extension with a single
        involution (the quaternion group).
    d4: gamma = x u y, five involutions (the dihedral group of order 8).
    """
    key = name.lower()
    if key not in _PRESETS:
        if key == "q8":
            _PRESETS[key] = GroupPreset("q8", [(0, 1), (0, 0), (1, 1)], {1: 1, 2: 1, 4: 6})
        elif key == "d4":
            _PRESETS[key] = GroupPreset("d4", [(0, 1)], {1: 1, 2: 5, 4: 2})
        else:
            raise ValueError(f"unknown group preset {name!r} (expected q8 or d4)")
    return _PRESETS[key]


PRESET_NAMES = ("q8", "d4")
