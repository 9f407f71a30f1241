"""Coefficient modules: finite abelian groups with a group action.

A GModule is a product of cyclic groups Z/m_j (all m_j dividing the ambient
torsion bound n) together with an action of a FiniteGroup by automorphisms,
one integer matrix per group element.  Elements are coordinate tuples.
"""

from __future__ import annotations

from .groups import FiniteGroup


class GModule:
    def __init__(
        self,
        group: FiniteGroup,
        moduli: tuple[int, ...],
        n: int,
        mats: list[list[list[int]]] | None = None,
        check: bool = True,
    ):
        self.group = group
        self.moduli = tuple(int(m) for m in moduli)
        self.n = n
        self.k = len(self.moduli)
        if any(n % m for m in self.moduli):
            raise ValueError("every cyclic factor must have order dividing n")
        if mats is None:
            eye = [[1 if i == j else 0 for j in range(self.k)] for i in range(self.k)]
            mats = [eye for _ in range(group.n)]
        self.mats = mats
        if check:
            self._check_action()

    def _check_action(self) -> None:
        G = self.group
        if any(
            self.mats[0][i][j] % self.moduli[i] != (1 if i == j else 0) % self.moduli[i]
            for i in range(self.k)
            for j in range(self.k)
        ):
            raise ValueError("identity must act as the identity matrix")
        for a in range(G.n):
            for b in range(G.n):
                ab = G.table[a][b]
                for i in range(self.k):
                    for j in range(self.k):
                        lhs = sum(self.mats[a][i][t] * self.mats[b][t][j] for t in range(self.k))
                        if (lhs - self.mats[ab][i][j]) % self.moduli[i]:
                            raise ValueError("action map is not multiplicative")
        # automorphism: the inverse element provides the inverse matrix

    @staticmethod
    def trivial(group: FiniteGroup, moduli: tuple[int, ...], n: int | None = None) -> "GModule":
        n = n or max(moduli, default=1)
        return GModule(group, moduli, n, mats=None, check=False)

    @staticmethod
    def zn(group: FiniteGroup, n: int) -> "GModule":
        """Z/n with the trivial action."""
        return GModule.trivial(group, (n,), n)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.k

    def size(self) -> int:
        s = 1
        for m in self.moduli:
            s *= m
        return s

    def elements(self):
        def rec(i):
            if i == self.k:
                yield ()
                return
            for rest in rec(i + 1):
                for v in range(self.moduli[i]):
                    yield (v,) + rest

        return (tuple(e) for e in rec(0))

    def reduce(self, coords) -> tuple[int, ...]:
        return tuple(int(c) % m for c, m in zip(coords, self.moduli))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def sub(self, a, b) -> tuple[int, ...]:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def smul(self, c: int, a) -> tuple[int, ...]:
        return tuple(c * x % m for x, m in zip(a, self.moduli))

    def act(self, g: int, a) -> tuple[int, ...]:
        mat = self.mats[g]
        return tuple(
            sum(mat[i][j] * a[j] for j in range(self.k)) % self.moduli[i] for i in range(self.k)
        )

    def pullback(self, dom: FiniteGroup, hom: list[int]) -> "GModule":
        """The same abelian group with dom acting through the homomorphism."""
        mats = [self.mats[hom[g]] for g in range(dom.n)]
        return GModule(dom, self.moduli, self.n, mats=mats, check=False)

    def dual(self) -> "GModule":
        """hom(A, Z/n) with the contragredient action.

        Requires uniform moduli (all the modules this package builds duals
        of are of that shape); coordinates pair by <a, b> = sum a_j b_j n/m.
        """
        if len(set(self.moduli)) > 1:
            raise ValueError("dual() implemented for uniform cyclic factors only")
        G = self.group
        mats = []
        for g in range(G.n):
            src = self.mats[G.inv[g]]
            mats.append([[src[j][i] for j in range(self.k)] for i in range(self.k)])
        return GModule(G, self.moduli, self.n, mats=mats, check=False)

    def eval_pairing(self, a, b) -> int:
        """The evaluation pairing A x hom(A, Z/n) -> Z/n in coordinates."""
        total = 0
        for x, y, m in zip(a, b, self.moduli):
            total += x * y * (self.n // m)
        return total % self.n


class Pairing:
    """A bilinear, equivariant map A x B -> C in coordinates."""

    def __init__(self, A: GModule, B: GModule, C: GModule, fn, name: str = ""):
        self.A, self.B, self.C = A, B, C
        self.fn = fn
        self.name = name

    def __call__(self, a, b):
        return self.C.reduce(self.fn(a, b))

    @staticmethod
    def zn_mult(A: GModule, B: GModule, C: GModule) -> "Pairing":
        """Multiplication Z/n x Z/n -> Z/n."""
        return Pairing(A, B, C, lambda a, b: (a[0] * b[0],), name="mult")

    @staticmethod
    def evaluation(A: GModule, Ahat: GModule, C: GModule) -> "Pairing":
        """A x hom(A, Z/n) -> Z/n."""
        return Pairing(A, Ahat, C, lambda a, b: (A.eval_pairing(a, b),), name="eval")

    @staticmethod
    def evaluation_flip(Ahat: GModule, A: GModule, C: GModule) -> "Pairing":
        """hom(A, Z/n) x A -> Z/n."""
        return Pairing(Ahat, A, C, lambda b, a: (A.eval_pairing(a, b),), name="eval-flip")
