"""Group actions by monomial maps: relation checks, faithfulness, fixed lattices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..abelian import hermite_normal_form, kernel_mod
from ..config import enumeration_budget
from ..errors import BudgetExceeded, PreconditionError
from ..pc.presentation import PcPresentation
from .maps import MonomialMap, compose

ActionTable = Mapping[str, MonomialMap]


def _dims(table: ActionTable) -> tuple[int, int]:
    maps = list(table.values())
    if not maps:
        raise PreconditionError("empty action table")
    d, N = maps[0].dim, maps[0].root_order
    for f in maps:
        if f.dim != d or f.root_order != N:
            raise PreconditionError("maps in a table must share dimension and root order")
    return d, N


def _gen_maps(pres: PcPresentation, table: ActionTable, shape_only: bool) -> list[MonomialMap]:
    missing = [g for g in pres.gens if g not in table]
    if missing:
        raise PreconditionError(f"action table misses generators {', '.join(missing)}")
    maps = [table[g] for g in pres.gens]
    if shape_only:
        maps = [MonomialMap(f.A, (0,) * f.dim, f.root_order) for f in maps]
    return maps


def evaluate_word(maps: list[MonomialMap], exponents) -> MonomialMap:
    """rho(x_1^e_1 ... x_n^e_n) for a normal-form exponent vector."""
    out = MonomialMap.identity(maps[0].dim, maps[0].root_order)
    for f, e in zip(maps, exponents):
        if e:
            out = compose(out, f ** int(e))
    return out


def _word_text(pres: PcPresentation, v) -> str:
    parts = [pres.gens[k] if x == 1 else f"{pres.gens[k]}^{x}" for k, x in enumerate(v) if x]
    return "*".join(parts) if parts else "1"


@dataclass
class ActionVerdict:
    ok: bool
    violation: str | None = None
    relations_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def verify_group_action(pres: PcPresentation, table: ActionTable, shape_only: bool = False) -> ActionVerdict:
    """Every power and conjugate relation of `pres` must act as the identity.

    rho is a homomorphism for the substitution convention of `compose`, so
    x_i^{x_j} = x_j^-1 x_i x_j is checked as rho(x_j)^-1 o rho(x_i) o rho(x_j).
    `shape_only` ignores scalars (used when some scalars are opaque units).
    """
    maps = _gen_maps(pres, table, shape_only)
    checked = 0
    for i, r in enumerate(pres.relative_orders):
        checked += 1
        lhs = maps[i] ** r
        rhs = evaluate_word(maps, pres.power_words[i])
        if lhs != rhs:
            rel = f"{pres.gens[i]}^{r} = {_word_text(pres, pres.power_words[i])}"
            return ActionVerdict(False, f"relation {rel} fails", checked)
    for i in range(pres.n):
        for j in range(i):
            checked += 1
            lhs = compose(compose(maps[j].inverse(), maps[i]), maps[j])
            w = pres.conjugate(i, j)
            if lhs != evaluate_word(maps, w):
                rel = f"{pres.gens[i]}^{pres.gens[j]} = {_word_text(pres, w)}"
                return ActionVerdict(False, f"relation {rel} fails", checked)
    return ActionVerdict(True, None, checked)


# ----------------------------------------------------------------------------
# faithfulness by full enumeration

def _as_permutation(f: MonomialMap):
    A = f.matrix
    if not ((A == 0) | (A == 1)).all() or not (A.sum(axis=1) == 1).all() or not (A.sum(axis=0) == 1).all():
        return None
    return A.argmax(axis=1)


@dataclass
class FaithfulnessVerdict:
    faithful: bool
    witness: str | None
    elements: int

    def __bool__(self) -> bool:
        return self.faithful


def faithfulness_check(pres: PcPresentation, table: ActionTable, budget: int | None = None) -> FaithfulnessVerdict:
    """True iff only the identity element acts as the identity map.

    Elements are enumerated in normal form x_1^e_1 ... x_n^e_n, reusing
    prefixes.  Tables of permuted variables with scalars take a fast path.
    """
    budget = enumeration_budget() if budget is None else budget
    if pres.order > budget:
        raise BudgetExceeded(pres.order, budget, "faithfulness check")
    if pres.n == 0:
        return FaithfulnessVerdict(True, None, 1)
    maps = _gen_maps(pres, table, False)
    d, N = maps[0].dim, maps[0].root_order
    perms = [_as_permutation(f) for f in maps]
    fast = all(p is not None for p in perms)

    if fast:
        # element = (sigma, c): x_i -> zeta^c_i x_sigma(i); f o g = (sigma_f[sigma_g], c_g + c_f[sigma_g])
        def comp(f, g):
            return f[0][g[0]], (g[1] + f[1][g[0]]) % N

        ident = (np.arange(d), np.zeros(d, dtype=np.int64))
        gens = [(p, f.scalars) for p, f in zip(perms, maps)]

        def is_id(x):
            return bool((x[0] == ident[0]).all() and not x[1].any())
    else:
        def comp(f, g):
            return g[0] @ f[0], (g[1] + g[0] @ f[1]) % N

        ident = (np.eye(d, dtype=np.int64), np.zeros(d, dtype=np.int64))
        gens = [(f.matrix, f.scalars) for f in maps]

        def is_id(x):
            return bool((x[0] == ident[0]).all() and not x[1].any())

    powers = []
    for g, r in zip(gens, pres.relative_orders):
        seq = [ident]
        for _ in range(r - 1):
            seq.append(comp(seq[-1], g))
        powers.append(seq)

    count = 0
    stack = [(0, ident, ())]
    while stack:
        level, cur, digits = stack.pop()
        if level == pres.n:
            count += 1
            if any(digits) and is_id(cur):
                return FaithfulnessVerdict(False, _word_text(pres, digits), count)
            continue
        for e in range(pres.relative_orders[level] - 1, -1, -1):
            stack.append((level + 1, comp(cur, powers[level][e]) if e else cur, digits + (e,)))
    return FaithfulnessVerdict(True, None, count)


# ----------------------------------------------------------------------------

def integer_left_kernel(B: np.ndarray) -> list[list[int]]:
    """Basis of {e in Z^d : e B = 0} via Hermite form of [B | I]."""
    B = np.asarray(B, dtype=np.int64)
    d, k = B.shape
    aug = np.concatenate([B, np.eye(d, dtype=np.int64)], axis=1).tolist()
    h = hermite_normal_form(aug, k + d)
    return [row[k:] for row in h if not any(row[:k])]


def invariant_sublattice(maps) -> list[list[int]]:
    """HNF basis of exponent vectors e whose monomial every map fixes, scalars included."""
    maps = list(maps)
    if not maps:
        raise PreconditionError("no maps given")
    d, N = maps[0].dim, maps[0].root_order
    for f in maps:
        if f.dim != d or f.root_order != N:
            raise PreconditionError("maps must share dimension and root order")
    B = np.concatenate([f.matrix - np.eye(d, dtype=np.int64) for f in maps], axis=1)
    K = np.array(integer_left_kernel(B), dtype=np.int64).reshape(-1, d)
    if K.shape[0] == 0:
        return []
    # scalar condition e.c = 0 mod N on coordinates t with e = t K
    rows = [(K @ f.scalars).tolist() for f in maps if f.scalars.any()]
    T = kernel_mod(rows, N) if rows else np.eye(K.shape[0], dtype=np.int64).tolist()
    T = np.array(T, dtype=np.int64).reshape(-1, K.shape[0])
    return hermite_normal_form((T @ K).tolist(), d)
