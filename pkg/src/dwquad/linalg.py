"""Exact linear algebra for maps between finite abelian groups.

A coefficient group here is a direct sum of cyclic groups Z/m_j and a
homomorphism between two of them is an integer matrix.  Kernels, solves and
subquotient structures are computed one prime at a time with a Smith-type
elimination over Z/p^k (pivoting on entries of minimal p-valuation, which is
valid over that local ring) and reassembled by CRT.  Matrices stay small, so
everything is dense numpy int64, reduced mod p^k throughout.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .factorint import factorize


class LocalSmith:
    """Smith elimination of an integer matrix over Z/p^cap.

    After construction ``L @ A @ U ≡ D (mod p^cap)`` with D diagonal; the
    diagonal entries are p^v for v in ``pivots`` (nondecreasing), then zero.
    L and U are invertible mod p^cap and their inverses are tracked.
    """

    def __init__(self, A: np.ndarray, p: int, cap: int, track_left: bool = True):
        self.p, self.cap, self.pk = p, cap, p**cap
        self.track_left = track_left
        pk = self.pk
        M = np.array(A, dtype=np.int64) % pk
        r, c = M.shape
        self.rows, self.cols = r, c
        if track_left:
            self.L = np.eye(r, dtype=np.int64)
            self.Linv = np.eye(r, dtype=np.int64)
        else:
            self.L = self.Linv = None
        self.U = np.eye(c, dtype=np.int64)
        self.Uinv = np.eye(c, dtype=np.int64)
        self.pivots: list[int] = []
        t = 0
        while t < min(r, c):
            pos = self._first_nonzero_column(M, t)
            if pos is None:
                break
            j = pos
            if j != t:
                M[:, [j, t]] = M[:, [t, j]]
                self.U[:, [j, t]] = self.U[:, [t, j]]
                self.Uinv[[j, t], :] = self.Uinv[[t, j], :]
            # pivot on the least-valuation entry of the column, then rescan
            # the pivot row: an entry of smaller valuation there becomes the
            # new pivot column (bounded by cap rounds)
            for _ in range(cap + 1):
                i, v = self._min_val_in_column(M, t)
                if i != t:
                    M[[i, t], :] = M[[t, i], :]
                    if track_left:
                        self.L[[i, t], :] = self.L[[t, i], :]
                        self.Linv[:, [i, t]] = self.Linv[:, [t, i]]
                piv = p**v
                unit = int(M[t, t]) // piv
                uinv = pow(unit, -1, pk)
                M[t, :] = M[t, :] * uinv % pk
                if track_left:
                    self.L[t, :] = self.L[t, :] * uinv % pk
                    self.Linv[:, t] = self.Linv[:, t] * unit % pk
                col = M[:, t].copy()
                col[t] = 0
                if col.any():
                    f = col // piv
                    nz = np.nonzero(f)[0]
                    M[nz, :] = (M[nz, :] - np.outer(f[nz], M[t, :])) % pk
                    if track_left:
                        self.L[nz, :] = (self.L[nz, :] - np.outer(f[nz], self.L[t, :])) % pk
                        self.Linv[:, t] = (self.Linv[:, t] + self.Linv @ f) % pk
                jj = self._smaller_val_in_row(M, t, v)
                if jj is None:
                    break
                M[:, [jj, t]] = M[:, [t, jj]]
                self.U[:, [jj, t]] = self.U[:, [t, jj]]
                self.Uinv[[jj, t], :] = self.Uinv[[t, jj], :]
            row = M[t, :].copy()
            row[t] = 0
            if row.any():
                f = row // piv
                nz = np.nonzero(f)[0]
                M[:, nz] = (M[:, nz] - np.outer(M[:, t], f[nz])) % pk
                self.U[:, nz] = (self.U[:, nz] - np.outer(self.U[:, t], f[nz])) % pk
                self.Uinv[t, :] = (self.Uinv[t, :] + f @ self.Uinv) % pk
            self.pivots.append(v)
            t += 1
        self.D = M

    def _first_nonzero_column(self, M: np.ndarray, t: int):
        sub = M[t:, t:]
        if sub.size == 0:
            return None
        nz = sub.any(axis=0)
        idx = np.argmax(nz)
        if not nz[idx]:
            return None
        return int(idx) + t

    def _min_val_in_column(self, M: np.ndarray, t: int) -> tuple[int, int]:
        col = M[t:, t]
        for v in range(self.cap):
            mask = (col // self.p**v) % self.p != 0
            if mask.any():
                return int(np.argmax(mask)) + t, v
        raise AssertionError("pivot column became zero")

    def _smaller_val_in_row(self, M: np.ndarray, t: int, v: int):
        if v == 0:
            return None
        row = M[t, t:]
        for w in range(v):
            mask = (row // self.p**w) % self.p != 0
            if mask.any():
                return int(np.argmax(mask)) + t
        return None

    def kernel_gens(self) -> list[np.ndarray]:
        """Generators of {x : A x ≡ 0 mod p^cap} as vectors mod p^cap."""
        out = []
        for t, v in enumerate(self.pivots):
            if v > 0:
                g = self.U[:, t] * self.p ** (self.cap - v) % self.pk
                if g.any():
                    out.append(g)
        for t in range(len(self.pivots), self.cols):
            g = self.U[:, t] % self.pk
            if g.any():
                out.append(g)
        return out

    def solve(self, b: np.ndarray) -> np.ndarray | None:
        """Some x with A x ≡ b (mod p^cap), or None."""
        c = self.L @ (np.asarray(b, dtype=np.int64) % self.pk) % self.pk
        x = np.zeros(self.cols, dtype=np.int64)
        for t in range(self.rows):
            if t < len(self.pivots):
                piv = self.p ** self.pivots[t]
                if c[t] % piv:
                    return None
                if t < self.cols:
                    x[t] = c[t] // piv
            elif c[t] % self.pk:
                return None
        return self.U @ x % self.pk


def module_kernel_gens(A: np.ndarray, out_exps: list[int], p: int, cap: int) -> list[np.ndarray]:
    """Generators of {x : (A x)_i ≡ 0 mod p^out_exps[i]} over Z/p^cap."""
    r, c = A.shape
    if r == 0:
        return [np.eye(c, dtype=np.int64)[j] for j in range(c)]
    if all(k >= cap for k in out_exps):
        aug = A % p**cap  # the congruences are already mod p^cap
    else:
        aug = np.hstack([A % p**cap, np.diag(np.array([p**k for k in out_exps], dtype=np.int64))])
    ls = LocalSmith(aug, p, cap, track_left=False)
    gens, seen = [], set()
    for g in ls.kernel_gens():
        x = g[:c] % p**cap
        key = tuple(int(w) for w in x)
        if x.any() and key not in seen:
            seen.add(key)
            gens.append(x)
    return gens


def module_solve(A: np.ndarray, out_exps: list[int], b: np.ndarray, p: int, cap: int) -> np.ndarray | None:
    """Some x with (A x)_i ≡ b_i mod p^out_exps[i], or None."""
    r, c = A.shape
    if r == 0:
        return np.zeros(c, dtype=np.int64)
    aug = np.hstack([A % p**cap, np.diag(np.array([p**k for k in out_exps], dtype=np.int64))])
    sol = LocalSmith(aug, p, cap).solve(b)
    return None if sol is None else sol[:c] % p**cap


def subquotient_structure(
    kgens: list[np.ndarray],
    bgens: list[np.ndarray],
    dom_exps: list[int],
    p: int,
    cap: int,
) -> tuple[list[int], list[np.ndarray]]:
    """Structure of K/B for subgroups B ≤ K ≤ ⊕_j Z/p^dom_exps[j].

    K and B are given by generating vectors; returns the cyclic orders
    p^v > 1 of K/B together with a representative vector in K per factor.
    """
    if not kgens:
        if any(np.asarray(b).any() for b in bgens):
            raise ValueError("B not contained in K")
        return [], []
    G = np.stack(kgens, axis=1).astype(np.int64)
    g = G.shape[1]
    rels = module_kernel_gens(G, dom_exps, p, cap)
    xcols = []
    for b in bgens:
        x = module_solve(G, dom_exps, np.asarray(b, dtype=np.int64), p, cap)
        if x is None:
            raise ValueError("B not contained in K")
        xcols.append(x)
    cols = rels + xcols
    M = np.stack(cols, axis=1).astype(np.int64) if cols else np.zeros((g, 0), dtype=np.int64)
    ls = LocalSmith(M, p, cap)
    orders, reps = [], []
    for t in range(g):
        v = ls.pivots[t] if t < len(ls.pivots) else cap
        if v > 0:
            orders.append(p**v)
            reps.append(G @ ls.Linv[:, t] % p**cap)
    return orders, reps


def crt_idempotents(n: int) -> dict[int, int]:
    """For each p | n, an e_p ≡ 1 mod p^vp(n) and ≡ 0 mod n/p^vp(n)."""
    out = {}
    for p, k in factorize(n).items():
        q = p**k
        m = n // q
        out[p] = 1 if m == 1 else (m * pow(m, -1, q)) % n
    return out


def _vp(m: int, p: int, cap: int) -> int:
    v = 0
    while m % p == 0 and v < cap:
        m //= p
        v += 1
    return v


def _lcm_all(mods: list[int]) -> int:
    n = 1
    for m in mods:
        if m > 1:
            n = n * m // gcd(n, m)
    return n


class ComplexOps:
    """A cochain complex of finite abelian groups, presented by matrices.

    Subclasses supply per-degree coordinate moduli and integer differential
    matrices; cohomology, coboundary solves and cardinalities follow.
    """

    def coord_moduli(self, degree: int) -> list[int]:
        raise NotImplementedError

    def diff_matrix(self, degree: int) -> np.ndarray:
        raise NotImplementedError

    def cohomology_orders_and_reps(self, degree: int) -> tuple[list[int], list[np.ndarray]]:
        mods_i = self.coord_moduli(degree)
        mods_up = self.coord_moduli(degree + 1)
        d_i = self.diff_matrix(degree)
        if degree > 0:
            d_dn = self.diff_matrix(degree - 1)
        else:
            d_dn = np.zeros((len(mods_i), 0), dtype=np.int64)
        n = _lcm_all(mods_i + mods_up)
        if n == 1 or not mods_i:
            return [], []
        orders: list[int] = []
        reps: list[np.ndarray] = []
        ids = crt_idempotents(n)
        modvec = np.array(mods_i, dtype=np.int64)
        for p, cap in factorize(n).items():
            out_exps = [_vp(m, p, cap) for m in mods_up]
            dom_exps = [_vp(m, p, cap) for m in mods_i]
            kg = module_kernel_gens(d_i, out_exps, p, cap)
            bg = [d_dn[:, j] for j in range(d_dn.shape[1])]
            o_p, r_p = subquotient_structure(kg, bg, dom_exps, p, cap)
            for o, rep in zip(o_p, r_p):
                orders.append(o)
                reps.append(rep * ids[p] % modvec)
        return orders, reps

    def cocycle_gens(self, degree: int) -> list[np.ndarray]:
        """Generators of Z^degree as vectors mod the coordinate moduli."""
        mods_i = self.coord_moduli(degree)
        mods_up = self.coord_moduli(degree + 1)
        d_i = self.diff_matrix(degree)
        n = _lcm_all(mods_i + mods_up)
        if n == 1 or not mods_i:
            return []
        gens = []
        ids = crt_idempotents(n)
        modvec = np.array(mods_i, dtype=np.int64)
        for p, cap in factorize(n).items():
            out_exps = [_vp(m, p, cap) for m in mods_up]
            for gvec in module_kernel_gens(d_i, out_exps, p, cap):
                v = gvec * ids[p] % modvec
                if v.any():
                    gens.append(v)
        return gens

    def subgroup_size(self, gens: list[np.ndarray], degree: int) -> int:
        """Order of the subgroup of C^degree generated by gens."""
        mods = self.coord_moduli(degree)
        n = _lcm_all(mods)
        if n == 1 or not gens:
            return 1
        total = 1
        for p, cap in factorize(n).items():
            dom_exps = [_vp(m, p, cap) for m in mods]
            o, _ = subquotient_structure([np.asarray(g) % p**cap for g in gens], [], dom_exps, p, cap)
            for x in o:
                total *= x
        return total

    def coboundary_witness(self, degree: int, target: np.ndarray) -> np.ndarray | None:
        """Solve d x ≡ target with x in C^(degree-1); None if unsolvable."""
        mods_i = self.coord_moduli(degree)
        modvec = np.array(mods_i, dtype=np.int64)
        target = np.asarray(target, dtype=np.int64) % modvec if mods_i else np.zeros(0, dtype=np.int64)
        if degree == 0:
            return None if target.any() else np.zeros(0, dtype=np.int64)
        mods_dn = self.coord_moduli(degree - 1)
        d_dn = self.diff_matrix(degree - 1)
        n = _lcm_all(mods_i + mods_dn)
        if n == 1:
            return np.zeros(len(mods_dn), dtype=np.int64)
        x = np.zeros(len(mods_dn), dtype=np.int64)
        ids = crt_idempotents(n)
        for p, cap in factorize(n).items():
            out_exps = [_vp(m, p, cap) for m in mods_i]
            xp = module_solve(d_dn, out_exps, target, p, cap)
            if xp is None:
                return None
            x = (x + xp * ids[p]) % n
        if mods_dn:
            x %= np.array(mods_dn, dtype=np.int64)
        if mods_i:
            check = (d_dn @ x - target) % modvec
            if check.any():
                return None
        return x
