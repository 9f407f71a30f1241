"""Finite groups as explicit multiplication tables.

Elements are canonical indices 0..n-1 with 0 the identity.  Construction
verifies the group axioms on the full table, which is the trust anchor for
everything downstream (all cochain identities are checked by evaluation).
"""

from __future__ import annotations

import itertools


class FiniteGroup:
    def __init__(self, table: list[list[int]], names: list | None = None, check: bool = True):
        self.table = [list(row) for row in table]
        self.n = len(table)
        self.names = names if names is not None else list(range(self.n))
        if check:
            self._check_axioms()
        self.inv = [0] * self.n
        for g in range(self.n):
            for h in range(self.n):
                if self.table[g][h] == 0:
                    self.inv[g] = h
                    break
            else:
                raise ValueError(f"element {g} has no inverse")

    def _check_axioms(self) -> None:
        n = self.n
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise ValueError("index 0 is not an identity")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                if not 0 <= ab < n:
                    raise ValueError("table entry out of range")
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("multiplication table is not associative")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, elems) -> int:
        out = 0
        for e in elems:
            out = self.table[out][e]
        return out

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inv[g]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def order_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for g in range(self.n):
            o = self.element_order(g)
            hist[o] = hist.get(o, 0) + 1
        return hist

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.n) for b in range(self.n))

    def elements(self):
        return range(self.n)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.n})"

    # constructors

    @staticmethod
    def trivial() -> "FiniteGroup":
        return FiniteGroup([[0]], check=False)

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return FiniteGroup(table, names=list(range(n)), check=False)

    @staticmethod
    def direct_product(G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        pairs = [(g, h) for g in range(G.n) for h in range(H.n)]
        idx = {p: i for i, p in enumerate(pairs)}
        table = [
            [idx[(G.table[g1][g2], H.table[h1][h2])] for (g2, h2) in pairs]
            for (g1, h1) in pairs
        ]
        names = [(G.names[g], H.names[h]) for (g, h) in pairs]
        return FiniteGroup(table, names=names, check=False)

    @staticmethod
    def elementary_abelian(s: int) -> "FiniteGroup":
        """(Z/2)^s with names given by bit tuples; identity is all-zero."""
        G = FiniteGroup.cyclic(2)
        out = G
        for _ in range(s - 1):
            out = FiniteGroup.direct_product(out, G)
        if s == 1:
            return FiniteGroup(out.table, names=[(0,), (1,)], check=False)
        names = [tuple(_flatten(nm)) for nm in out.names]
        return FiniteGroup(out.table, names=names, check=False)

    @staticmethod
    def symmetric(n: int) -> "FiniteGroup":
        perms = sorted(itertools.permutations(range(n)))
        ident = tuple(range(n))
        perms.remove(ident)
        perms.insert(0, ident)
        idx = {p: i for i, p in enumerate(perms)}
        table = [
            [idx[tuple(p[q[i]] for i in range(n))] for q in perms]
            for p in perms
        ]
        return FiniteGroup(table, names=perms, check=False)


def _flatten(x):
    if isinstance(x, tuple):
        for y in x:
            yield from _flatten(y)
    else:
        yield x


def is_homomorphism(dom: FiniteGroup, cod: FiniteGroup, images: list[int]) -> bool:
    """Check f(ab) = f(a)f(b) on every pair."""
    if images[0] != 0:
        return False
    return all(
        images[dom.table[a][b]] == cod.table[images[a]][images[b]]
        for a in range(dom.n)
        for b in range(dom.n)
    )


def minimal_generators(G: FiniteGroup) -> list[int]:
    """A small generating set, found greedily by subgroup closure."""
    gens: list[int] = []
    span = {0}
    for g in range(G.n):
        if g not in span:
            gens.append(g)
            span = _closure(G, gens)
            if len(span) == G.n:
                break
    return gens


def _closure(G: FiniteGroup, gens: list[int]) -> set[int]:
    span = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (G.table[x][g], G.table[g][x]):
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    return span


def all_homomorphisms(dom: FiniteGroup, cod: FiniteGroup) -> list[list[int]]:
    """Every homomorphism dom -> cod, as full image tables.

    Enumerates images of a minimal generating set and extends by word
    closure, then verifies on the full table.  Intended for small groups.
    """
    gens = minimal_generators(dom)
    if not gens:
        return [[0] * dom.n]
    # express every element as a word in the generators via BFS
    word: dict[int, tuple[int, ...]] = {0: ()}
    frontier = [0]
    while frontier:
        x = frontier.pop(0)
        for gi, g in enumerate(gens):
            y = dom.table[x][g]
            if y not in word:
                word[y] = word[x] + (gi,)
                frontier.append(y)
    homs = []
    for choice in itertools.product(range(cod.n), repeat=len(gens)):
        images = [0] * dom.n
        ok = True
        for x in range(dom.n):
            img = 0
            for gi in word[x]:
                img = cod.table[img][choice[gi]]
            images[x] = img
        if is_homomorphism(dom, cod, images):
            homs.append(images)
    return homs
