"""Independent brute-force oracles, used only by the test suite.

Each oracle recomputes a quantity the main path produces, by a different
algorithm sharing as little code as possible: full (non-normalized) cochain
cohomology by row-echelon counting, class numbers by pure enumeration with
no composition law, homomorphism counts by generator backtracking, and
residue-field square tests by exhaustive squaring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np


@dataclass
class OracleReport:
    oracle: str
    instance: str
    oracle_value: object
    main_value: object

    @property
    def agree(self) -> bool:
        return self.oracle_value == self.main_value

    def line(self) -> str:
        mark = "AGREE" if self.agree else "MISMATCH"
        return f"ORACLE {self.oracle} [{self.instance}] oracle={self.oracle_value} main={self.main_value} {mark}"


# --- full (non-normalized) inhomogeneous cochain cohomology ---


def _full_diff_matrix(table: list[list[int]], act, moduli: tuple[int, ...], degree: int) -> np.ndarray:
    """Differential on full inhomogeneous cochains, all tuples included."""
    g = len(table)
    k = len(moduli)
    src_tuples = list(itertools.product(range(g), repeat=degree))
    dst_tuples = list(itertools.product(range(g), repeat=degree + 1))
    src_index = {t: i for i, t in enumerate(src_tuples)}
    D = np.zeros((len(dst_tuples) * k, len(src_tuples) * k), dtype=np.int64)
    for ti, ys in enumerate(dst_tuples):
        mat = act(ys[0])
        src = src_index[ys[1:]]
        for p in range(k):
            for q in range(k):
                D[ti * k + p, src * k + q] += mat[p][q]
        sign = -1
        for pos in range(1, degree + 1):
            merged = ys[: pos - 1] + (table[ys[pos - 1]][ys[pos]],) + ys[pos + 1 :]
            src = src_index[merged]
            for p in range(k):
                D[ti * k + p, src * k + p] += sign
            sign = -sign
        src = src_index[ys[:degree]]
        for p in range(k):
            D[ti * k + p, src * k + p] += sign
    return D


def _echelon_count_image(D: np.ndarray, p: int, cap: int) -> int:
    """|image| of a map of free Z/p^cap modules.

    Greedy diagonalization: repeatedly pick the entry of least p-valuation
    in the remaining submatrix, clear its row and column (column operations
    preserve the column span, row operations move it by an automorphism),
    and multiply the sizes p^(cap - v) of the resulting cyclic summands.
    Counting only; no transforms, no representatives.
    """
    pk = p**cap
    M = np.array(D, dtype=np.int64) % pk
    rows, cols = M.shape
    size = 1
    t = 0
    while t < min(rows, cols):
        nzcols = M[t:, t:].any(axis=0)
        jrel = int(np.argmax(nzcols)) if nzcols.size else 0
        if not nzcols.size or not nzcols[jrel]:
            break
        j = jrel + t
        if j != t:
            M[:, [j, t]] = M[:, [t, j]]
        v = cap
        for _ in range(cap + 1):
            colvec = M[t:, t]
            for w in range(cap):
                mask = (colvec // p**w) % p != 0
                if mask.any():
                    i, v = int(np.argmax(mask)) + t, w
                    break
            if i != t:
                M[[i, t], :] = M[[t, i], :]
            piv = p**v
            unit = int(M[t, t]) // piv
            M[t, :] = M[t, :] * pow(unit, -1, pk) % pk
            col = M[:, t].copy()
            col[t] = 0
            if col.any():
                f = col // piv
                nz = np.nonzero(f)[0]
                M[nz, :] = (M[nz, :] - np.outer(f[nz], M[t, :])) % pk
            # a row entry of smaller valuation becomes the next pivot column
            jj = None
            rowvec = M[t, t:]
            for w in range(v):
                mask = (rowvec // p**w) % p != 0
                if mask.any():
                    jj = int(np.argmax(mask)) + t
                    break
            if jj is None:
                break
            M[:, [jj, t]] = M[:, [t, jj]]
        row = M[t, :].copy()
        row[t] = 0
        if row.any():
            f = row // piv
            nz = np.nonzero(f)[0]
            M[:, nz] = (M[:, nz] - np.outer(M[:, t], f[nz])) % pk
        size *= p ** (cap - v)
        t += 1
    return size


def full_cochain_h_size(table: list[list[int]], act, moduli: tuple[int, ...], n: int, degree: int) -> int:
    """|H^degree| from full inhomogeneous cochains, counting only."""
    from .factorint import factorize

    k = len(moduli)
    g = len(table)
    size_c = lambda deg: _prod(m for m in moduli) ** (g**deg)
    D_i = _full_diff_matrix(table, act, moduli, degree)
    D_dn = (
        _full_diff_matrix(table, act, moduli, degree - 1)
        if degree >= 1
        else np.zeros((g**degree * k, 0), dtype=np.int64)
    )
    h = 1
    for p, cap in factorize(n).items():
        im_i = _echelon_count_image(D_i, p, cap)
        im_dn = _echelon_count_image(D_dn, p, cap) if D_dn.shape[1] else 1
        cs = 1
        for m in moduli:
            mp = 1
            mm = m
            while mm % p == 0:
                mm //= p
                mp *= p
            cs *= mp
        c_size = cs ** (g**degree)
        z_size = c_size // im_i
        h *= z_size // im_dn
    return h


def _prod(it):
    out = 1
    for x in it:
        out *= x
    return out


# --- class numbers by pure enumeration (no composition) ---


def form_class_number(d: int) -> int:
    """Count reduced primitive forms of discriminant d < 0 by brute scan.

    Scans every (a, b) with |b| <= a <= sqrt(|d|/3) directly; no square
    roots mod 4a, no composition, no reduction.
    """
    import math

    count = 0
    amax = math.isqrt(abs(d) // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            count += 1
    return count


# --- homomorphism counting by backtracking over generator images ---


def hom_count(dom_table: list[list[int]], cod_table: list[list[int]]) -> int:
    """#hom(dom, cod) for small groups, independent of the groups module.

    Builds words for every domain element over a greedy generating set and
    checks every assignment of generator images against the full table.
    """
    nd, nc = len(dom_table), len(cod_table)
    if nd > 16 or nc > 16:
        raise ValueError("oracle guard: groups of order at most 16")
    gens: list[int] = []
    span = {0}
    while len(span) < nd:
        nxt = min(x for x in range(nd) if x not in span)
        gens.append(nxt)
        span = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for gph in gens:
                y = dom_table[x][gph]
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    words: dict[int, tuple[int, ...]] = {0: ()}
    frontier = [0]
    while frontier:
        x = frontier.pop(0)
        for gi, gph in enumerate(gens):
            y = dom_table[x][gph]
            if y not in words:
                words[y] = words[x] + (gi,)
                frontier.append(y)
    count = 0
    for imgs in itertools.product(range(nc), repeat=len(gens)):
        table = [0] * nd
        for x in range(nd):
            acc = 0
            for gi in words[x]:
                acc = cod_table[acc][imgs[gi]]
            table[x] = acc
        ok = all(
            table[dom_table[a][b]] == cod_table[table[a]][table[b]]
            for a in range(nd)
            for b in range(nd)
        )
        count += ok
    return count


# --- residue-field square tests by exhaustive squaring ---


def square_in_gfq(a: int, q: int) -> bool:
    """Is a (mod q) a nonzero square in F_q?  Exhaustive table."""
    a %= q
    if a == 0:
        raise ValueError("expected a unit")
    return a in {x * x % q for x in range(1, q)}


def square_in_gfq2(a: int, q: int, c: int) -> bool:
    """Is the rational a a square in F_{q^2} = F_q[t]/(t^2 - t + c)?"""
    a %= q
    if a == 0:
        raise ValueError("expected a unit")
    squares = set()
    for x0 in range(q):
        for x1 in range(q):
            # (x0 + x1 t)^2 = x0^2 - c x1^2 + (2 x0 x1 + x1^2) t
            s0 = (x0 * x0 - c * x1 * x1) % q
            s1 = (2 * x0 * x1 + x1 * x1) % q
            squares.add((s0, s1))
    return (a, 0) in squares
