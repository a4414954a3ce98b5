"""Brute-force H^2(G, Q/Z) by 2-cocycle linear algebra, for small groups only.

This deliberately shares nothing with the tails cover beyond the multiplication
table.  Normalized cocycles f: G x G -> Z/m (m = |G|) are determined by the
values f(g, x_k) on pc generators x_k: walking a BFS tree of the Cayley graph,

    f(g, h x) = f(g, h) + f(g h, x) - f(h, x),

and a function on G x {x_k} extends to a cocycle exactly when the same rule
holds along every non-tree edge (induction on the length of the last
argument).  Classes in H^2(G, Q/Z) are the cocycles modulo coboundaries and the
carry cocycles (a(g) + a(h) - a(gh)) / m of homomorphisms a: G -> Z/m, which
span the kernel of H^2(G, Z/m) -> H^2(G, Q/Z).

For Bogomolov mode a class restricts to zero on the abelian subgroup <y1, y2>
exactly when f(y1, y2) - f(y2, y1) = 0 in Z/m, because H^2(A, Q/Z) of an
abelian group is detected by the alternating commutator pairing.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from ..abelian import AbelianStructure, kernel_mod, local_quotient_invariants, local_smith
from ..config import ORACLE_BUDGET
from ..errors import BudgetExceeded
from ..pc.presentation import PcPresentation
from ..pc.tables import element_table


class OracleMode(str, Enum):
    SCHUR = "SchurMultiplier"
    BOGOMOLOV = "Bogomolov"


def _valuation(m: int, p: int) -> int:
    k = 0
    while m % p == 0 and m > 1:
        m //= p
        k += 1
    return k


def multiplication_table(pres: PcPresentation, budget: int) -> np.ndarray:
    t = element_table(pres, budget)
    # mult[g, h] = g*h
    return np.stack([t.right_perm(h) for h in range(t.size)], axis=1)


def _cochain_forms(mult: np.ndarray, gens: list[int], m: int):
    """Linear forms F[g, h] over the unknowns f(g, x_k), g != 1, plus the
    non-tree edge constraints."""
    n = mult.shape[0]
    d = len(gens)
    U = (n - 1) * d

    def unit(g: int, k: int) -> int:
        return (g - 1) * d + k  # only meaningful for g != 0

    X = np.zeros((n, d, U), dtype=np.int64)  # X[g, k] = form of f(g, x_k)
    for g in range(1, n):
        for k in range(d):
            X[g, k, unit(g, k)] = 1

    F = np.zeros((n, n, U), dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    tree = set()
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for k, x in enumerate(gens):
                hx = int(mult[h, x])
                if not seen[hx]:
                    seen[hx] = True
                    tree.add((h, k))
                    F[:, hx] = (F[:, h] + X[mult[:, h], k] - X[h, k][None, :]) % m
                    nxt.append(hx)
        frontier = nxt
    if not seen.all():
        raise AssertionError("pc generators do not generate the group")

    rows = []
    for h in range(n):
        for k, x in enumerate(gens):
            if (h, k) in tree:
                continue
            hx = int(mult[h, x])
            rows.append((F[:, hx] - F[:, h] - X[mult[:, h], k] + X[h, k][None, :]) % m)
    A = np.concatenate(rows) if rows else np.zeros((0, U), dtype=np.int64)
    return F, X, A


def _homomorphisms(pres: PcPresentation, exps: np.ndarray, m: int) -> list[np.ndarray]:
    """Values a(g) in Z/m of a generating set of Hom(G, Z/m)."""
    n = pres.n
    rows = []
    for i in range(n):
        row = [-int(x) for x in pres.power_words[i]]
        row[i] += pres.relative_orders[i]
        rows.append(row)
    for (i, j), v in pres.conjugate_words.items():
        row = [int(x) for x in v]
        row[i] -= 1
        rows.append(row)
    basis = kernel_mod(rows, m) if rows else [[int(i == j) for j in range(n)] for i in range(n)]
    out = []
    for vec in basis:
        vals = (exps @ np.array(vec, dtype=np.int64)) % m
        if vals.any():
            out.append(vals)
    return out


def h2_oracle(pres: PcPresentation, mode="SchurMultiplier", budget: int = ORACLE_BUDGET) -> AbelianStructure:
    """H^2(G, Q/Z) (SchurMultiplier) or B0(G) (Bogomolov) by cocycle algebra."""
    mode = OracleMode(mode)
    if pres.order > budget:
        raise BudgetExceeded(pres.order, budget, "h2_oracle")
    n = pres.order
    if n == 1:
        return AbelianStructure()
    p = pres.prime
    k = _valuation(n, p)
    m = n
    table = element_table(pres, budget)
    mult = multiplication_table(pres, budget)
    gens = [int(s) for s in table.strides]
    F, X, A = _cochain_forms(mult, gens, m)
    U = A.shape[1]
    # the cocycle constraints are shared by both modes; keep a reduced row basis
    basis = pres._cache.get("oracle_rows")
    if basis is not None:
        A = basis

    if mode is OracleMode.BOGOMOLOV:
        inv_ok = mult == mult.T  # commuting pairs
        reps, _, _ = table.classes()
        extra = []
        for y1 in reps:
            y1 = int(y1)
            for y2 in np.flatnonzero(inv_ok[y1]):
                extra.append((F[y1, y2] - F[y2, y1]) % m)
        if extra:
            A = np.concatenate([A, np.array(extra)])

    vals, Q, Qi = local_smith(A, p, k)
    if mode is OracleMode.SCHUR and basis is None:
        piv = [i for i, a in enumerate(vals) if a < k]
        pres._cache["oracle_rows"] = np.array(
            [(p ** vals[i] * Qi[i].astype(np.int64)) % m for i in piv], dtype=np.int64
        ).reshape(-1, U)
    # kernel coordinates: y_i in p^(k - a_i) Z/p^k
    live = [i for i, a in enumerate(vals) if a > 0]

    wvecs = []
    for h in range(1, n):  # coboundary of the indicator of h
        w = np.zeros(U, dtype=np.int64)
        for g in range(1, n):
            for kk, x in enumerate(gens):
                # d(phi)(g, x) = phi(x) - phi(gx) + phi(g)
                val = int(x == h) - int(mult[g, x] == h) + int(g == h)
                if val:
                    w[(g - 1) * len(gens) + kk] += val
        wvecs.append(w % m)
    for a in _homomorphisms(pres, table.exps, m):
        # carry cocycle of the integer lift of a with values in [0, m)
        w = np.zeros(U, dtype=np.int64)
        for g in range(1, n):
            for kk, x in enumerate(gens):
                s = int(a[g]) + int(a[x]) - int(a[mult[g, x]])
                if s % m:
                    raise AssertionError("homomorphism check failed")
                w[(g - 1) * len(gens) + kk] = (s // m) % m
        wvecs.append(w)

    coords = []
    for w in wvecs:
        y = (Qi @ w) % m
        row = []
        for i, a in enumerate(vals):
            step = p ** (k - a)
            if y[i] % step:
                raise AssertionError("coboundary is not a cocycle")
            if a > 0:
                row.append(int(y[i] // step) % p**a)
        coords.append(row)
    return local_quotient_invariants(coords, [vals[i] for i in live], p, k)
