"""Whole-group tables for a consistent pc presentation.

Elements are indexed by their exponent vector read in mixed radix (x_1 most
significant), so index 0 is the identity.  Right multiplication by each pc
generator is stored as a permutation array; everything else (inverses, left
multiplication, conjugation, centralizers, closures) is derived from those
arrays with vectorized numpy gathers.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..config import enumeration_budget
from ..errors import BudgetExceeded, InconsistentPresentation
from .elements import GroupElement, check_consistency
from .presentation import PcPresentation


def _perm_power(perm: np.ndarray, k: int) -> np.ndarray:
    result = np.arange(perm.size, dtype=perm.dtype)
    base = perm
    while k:
        if k & 1:
            result = base[result]
        k >>= 1
        if k:
            base = base[base]
    return result


class ElementTable:
    def __init__(self, pres: PcPresentation, budget: int | None = None):
        budget = enumeration_budget() if budget is None else budget
        if pres.order > budget:
            raise BudgetExceeded(pres.order, budget)
        bad = check_consistency(pres)
        if bad:
            raise InconsistentPresentation(bad)
        self.pres = pres
        self.n = pres.n
        self.size = pres.order
        rel = np.array(pres.relative_orders, dtype=np.int64)
        self.rel = rel
        strides = np.ones(self.n, dtype=np.int64)
        for i in range(self.n - 2, -1, -1):
            strides[i] = strides[i + 1] * rel[i + 1]
        self.strides = strides
        if self.n:
            self.exps = np.stack(np.unravel_index(np.arange(self.size), tuple(rel)), axis=1).astype(np.int64)
        else:
            self.exps = np.zeros((1, 0), dtype=np.int64)
        nz = self.exps != 0
        self.depth = np.where(nz.any(axis=1), nz.argmax(axis=1), self.n)
        self.right = self._right_tables()
        self._right_inv = [np.argsort(r) for r in self.right]
        self.inv = self._inverse_table()
        self._conj = None
        self._classes = None

    # ------------------------------------------------------------------
    def index(self, exps) -> int:
        return int(np.dot(np.asarray(exps, dtype=np.int64), self.strides))

    def element(self, idx: int) -> GroupElement:
        return GroupElement(self.pres, tuple(int(x) for x in self.exps[idx]))

    def idx(self, g) -> int:
        if isinstance(g, GroupElement):
            return self.index(g.exponents)
        return int(g)

    def _right_tables(self) -> list[np.ndarray]:
        col = self.pres.collector()
        strides = [int(s) for s in self.strides]
        tables = []
        rows = self.exps.tolist()
        for k in range(self.n):
            out = np.empty(self.size, dtype=np.int64)
            word = [(k, 1)]
            for x, e in enumerate(rows):
                e = list(e)
                col.collect(e, word)
                out[x] = sum(a * b for a, b in zip(e, strides))
            tables.append(out)
        return tables

    def _inverse_table(self) -> np.ndarray:
        arr = np.zeros(self.size, dtype=np.int64)
        for m in range(self.n - 1, -1, -1):
            e = self.exps[:, m]
            rinv = self._right_inv[m]
            for t in range(1, int(e.max(initial=0)) + 1):
                sel = e >= t
                arr[sel] = rinv[arr[sel]]
        return arr

    # ------------------------------------------------------------------
    def right_perm(self, g) -> np.ndarray:
        """x -> x*g for all x."""
        e = self.exps[self.idx(g)]
        arr = np.arange(self.size, dtype=np.int64)
        for m in range(self.n):
            if e[m]:
                arr = _perm_power(self.right[m], int(e[m]))[arr]
        return arr

    def left_perm(self, g) -> np.ndarray:
        """x -> g*x for all x, as inv o R_{g^-1} o inv."""
        gi = self.inv[self.idx(g)]
        return self.inv[self.right_perm(gi)[self.inv]]

    def mul(self, a, b) -> int:
        return int(self.right_perm(b)[self.idx(a)])

    def conjugation_perms(self) -> list[np.ndarray]:
        """c_k[x] = x^{g_k} for each pc generator g_k."""
        if self._conj is None:
            inv = self.inv
            self._conj = [inv[r[inv[r]]] for r in self.right]
        return self._conj

    def classes(self):
        """(representatives, sizes, labels); reps are minimal indices, ascending."""
        if self._classes is None:
            conj = self.conjugation_perms()
            n = self.size
            if conj:
                src = np.concatenate([np.arange(n)] * len(conj))
                dst = np.concatenate(conj)
                graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
                _, labels = connected_components(graph, directed=True, connection="weak")
            else:
                labels = np.zeros(n, dtype=np.int64)
            ncomp = int(labels.max()) + 1
            reps = np.full(ncomp, n, dtype=np.int64)
            np.minimum.at(reps, labels, np.arange(n))
            sizes = np.bincount(labels, minlength=ncomp)
            order = np.argsort(reps)
            relabel = np.empty(ncomp, dtype=np.int64)
            relabel[order] = np.arange(ncomp)
            self._classes = (reps[order], sizes[order], relabel[labels])
        return self._classes

    def center_mask(self) -> np.ndarray:
        mask = np.ones(self.size, dtype=bool)
        for c in self.conjugation_perms():
            mask &= c == np.arange(self.size)
        return mask

    def centralizer_mask(self, x) -> np.ndarray:
        x = self.idx(x)
        return self.right_perm(x) == self.left_perm(x)

    def element_orders(self) -> np.ndarray:
        """Order of every element (all orders are powers of p)."""
        p = self.pres.prime
        pw = self.power_map(p)
        order = np.zeros(self.size, dtype=np.int64)
        order[0] = 1
        cur = np.arange(self.size)
        k = 1
        while (order == 0).any():
            cur = pw[cur]
            k *= p
            order[(cur == 0) & (order == 0)] = k
        return order

    def power_map(self, k: int) -> np.ndarray:
        """x -> x^k for all x (vectorized square-and-multiply over the gathers)."""
        result = np.zeros(self.size, dtype=np.int64)
        base = np.arange(self.size, dtype=np.int64)
        while k:
            if k & 1:
                result = self.mul_arrays(result, base)
            k >>= 1
            if k:
                base = self.mul_arrays(base, base)
        return result

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product a[i]*b[i] via b's normal form letters."""
        out = a.copy()
        eb = self.exps[b]
        for m in range(self.n):
            col = eb[:, m]
            for t in range(1, int(col.max(initial=0)) + 1):
                sel = col >= t
                out[sel] = self.right[m][out[sel]]
        return out

    # ------------------------------------------------------------------
    def closure(self, gens) -> np.ndarray:
        """Boolean mask of the subgroup generated by `gens`."""
        mask = np.zeros(self.size, dtype=bool)
        mask[0] = True
        perms = [self.right_perm(g) for g in {self.idx(g) for g in gens} if g != 0]
        frontier = np.array([0], dtype=np.int64)
        while frontier.size and perms:
            new = np.unique(np.concatenate([p[frontier] for p in perms]))
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return mask

    def normal_closure(self, gens) -> np.ndarray:
        conj = self.conjugation_perms()
        gens = {self.idx(g) for g in gens}
        while True:
            mask = self.closure(gens)
            extra = set()
            for h in self.induced_generators(mask):
                for c in conj:
                    y = int(c[h])
                    if not mask[y]:
                        extra.add(y)
            if not extra:
                return mask
            gens |= extra

    def induced_generators(self, mask: np.ndarray) -> list[int]:
        """One element of each possible depth, with minimal leading exponent."""
        out = []
        for i in range(self.n):
            cand = np.flatnonzero(mask & (self.depth == i))
            if cand.size:
                lead = self.exps[cand, i]
                out.append(int(cand[np.argmin(lead)]))
        return out

    def is_normal(self, mask: np.ndarray) -> bool:
        return all(mask[c[mask]].all() for c in self.conjugation_perms())

    def is_abelian_subgroup(self, mask: np.ndarray) -> bool:
        gens = self.induced_generators(mask)
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                if self.mul(a, b) != self.mul(b, a):
                    return False
        return True

    def commutator_idx(self, a: int, b: int) -> int:
        ab = self.mul(a, b)
        ba = self.mul(b, a)
        return int(self.right_perm(ab)[self.inv[ba]])


def element_table(pres: PcPresentation, budget: int | None = None) -> ElementTable:
    """Cached ElementTable for `pres` (the budget is checked on every call)."""
    budget = enumeration_budget() if budget is None else budget
    if pres.order > budget:
        raise BudgetExceeded(pres.order, budget)
    t = pres._cache.get("table")
    if t is None:
        t = ElementTable(pres, budget)
        pres._cache["table"] = t
    return t
