"""Structural queries: classes, lower central series, quotients, products."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..abelian import AbelianStructure, group_from_relations
from ..errors import PresentationError
from .elements import GroupElement, commutator, conjugate, generator, identity, multiply
from .presentation import PcPresentation
from .tables import element_table


@dataclass
class ClassStructure:
    representatives: list[GroupElement]
    sizes: list[int]
    center: list[GroupElement]
    table: object

    def centralizer(self, x: GroupElement) -> list[GroupElement]:
        mask = self.table.centralizer_mask(x)
        return [self.table.element(i) for i in np.flatnonzero(mask)]

    def centralizer_order(self, x: GroupElement) -> int:
        return int(self.table.centralizer_mask(x).sum())


def class_structure(pres: PcPresentation, budget: int | None = None) -> ClassStructure:
    t = element_table(pres, budget)
    reps, sizes, _ = t.classes()
    center = [t.element(i) for i in np.flatnonzero(t.center_mask())]
    return ClassStructure([t.element(int(r)) for r in reps], [int(s) for s in sizes], center, t)


def lower_central_series(pres: PcPresentation, budget: int | None = None) -> list[np.ndarray]:
    """Masks of gamma_1 = G > gamma_2 > ... > 1."""
    t = element_table(pres, budget)
    series = [np.ones(t.size, dtype=bool)]
    while series[-1].sum() > 1:
        gens = set()
        for h in t.induced_generators(series[-1]):
            for k in range(t.n):
                g = int(t.strides[k])  # index of the k-th pc generator
                c = t.commutator_idx(h, g)
                if c:
                    gens.add(c)
        nxt = t.normal_closure(gens) if gens else np.eye(1, t.size, 0, dtype=bool)[0]
        if nxt.sum() == series[-1].sum():
            raise PresentationError("lower central series stalls: group is not nilpotent")
        series.append(nxt)
    return series


def nilpotency_class(pres: PcPresentation, budget: int | None = None) -> int:
    c = pres._cache.get("class")
    if c is None:
        c = len(lower_central_series(pres, budget)) - 1
        pres._cache["class"] = c
    return c


# ----------------------------------------------------------------------------

def direct_product(a: PcPresentation, b: PcPresentation, name: str | None = None) -> PcPresentation:
    if a.prime != b.prime:
        raise PresentationError(f"direct product of groups for different primes {a.prime}, {b.prime}")
    na, nb = a.n, b.n
    gens_a = list(a.gens)
    gens_b = list(b.gens)
    if set(gens_a) & set(gens_b):
        gens_a = [f"{g}_1" for g in gens_a]
        gens_b = [f"{g}_2" for g in gens_b]
    powers = [tuple(w) + (0,) * nb for w in a.power_words] + [(0,) * na + tuple(w) for w in b.power_words]
    conj = {k: tuple(v) + (0,) * nb for k, v in a.conjugate_words.items()}
    for (i, j), v in b.conjugate_words.items():
        conj[(i + na, j + na)] = (0,) * na + tuple(v)
    return PcPresentation(a.prime, gens_a + gens_b, a.relative_orders + b.relative_orders,
                          powers, conj, name=name or f"{a.name or 'A'}x{b.name or 'B'}")


@dataclass
class QuotientMap:
    quotient: PcPresentation
    projection: np.ndarray   # G index -> Q index
    kernel_mask: np.ndarray
    source_generators: list[int]  # pc generators of G whose images form Q's sequence

    def project(self, g: GroupElement) -> GroupElement:
        t = element_table(g.pres)
        q = int(self.projection[t.index(g.exponents)])
        rel = self.quotient.relative_orders
        return GroupElement(self.quotient, tuple(int(x) for x in np.unravel_index(q, rel))) \
            if rel else GroupElement(self.quotient, ())


def quotient_map(pres: PcPresentation, normal_generators, budget: int | None = None) -> QuotientMap:
    """G/N for N the normal closure of `normal_generators`, with the projection."""
    t = element_table(pres, budget)
    nmask = t.normal_closure([t.idx(g) for g in normal_generators])
    ngens = t.induced_generators(nmask)
    size = t.size
    if ngens:
        perms = [t.right_perm(g) for g in ngens]
        src = np.concatenate([np.arange(size)] * len(perms))
        dst = np.concatenate(perms)
        graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(size, size))
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.arange(size)
    # canonical label of a coset: its minimal element index
    ncomp = int(labels.max()) + 1
    canon = np.full(ncomp, size, dtype=np.int64)
    np.minimum.at(canon, labels, np.arange(size))
    label = canon[labels]

    counts = [len(np.unique(label[t.depth >= i])) for i in range(t.n)] + [1]
    chosen = []
    rel = []
    for i in range(t.n):
        r = counts[i] // counts[i + 1]
        if r > 1:
            chosen.append(i)
            rel.append(r)
    qsize = int(np.prod(rel)) if rel else 1
    assert qsize * int(nmask.sum()) == size

    # all normal words q_1^{a_1}...q_m^{a_m} as elements of G
    elems = np.zeros(1, dtype=np.int64)
    for i, r in zip(chosen, rel):
        step = t.right[i]
        cols = [elems]
        cur = elems
        for _ in range(1, r):
            cur = step[cur]
            cols.append(cur)
        elems = np.stack(cols, axis=1).reshape(-1)
    lab2q = np.full(size, -1, dtype=np.int64)
    lab2q[label[elems]] = np.arange(qsize)
    if (lab2q[label[elems]] != np.arange(qsize)).any():
        raise AssertionError("quotient normal words are not distinct")
    proj = lab2q[label]

    def qvec(g_idx: int) -> tuple[int, ...]:
        q = int(proj[g_idx])
        return tuple(int(x) for x in np.unravel_index(q, rel)) if rel else ()

    names = [pres.gens[i] for i in chosen]
    powers = []
    for k, (i, r) in enumerate(zip(chosen, rel)):
        gi = generator(pres, i)
        powers.append(qvec(t.index(_power(gi, r).exponents)))
        if any(powers[-1][: k + 1]):
            raise AssertionError("quotient power word is not in later generators")
    conj = {}
    for k, i in enumerate(chosen):
        for l, j in enumerate(chosen[:k]):
            c = conjugate(generator(pres, i), generator(pres, j))
            v = qvec(t.index(c.exponents))
            unit = tuple(int(m == k) for m in range(len(chosen)))
            if v != unit:
                conj[(k, l)] = v
    q = PcPresentation(pres.prime, names, rel, powers, conj, name=f"{pres.name or 'G'}/N")
    return QuotientMap(q, proj, nmask, chosen)


def _power(g: GroupElement, k: int) -> GroupElement:
    out = identity(g.pres)
    for _ in range(k):
        out = multiply(out, g)
    return out


def quotient(pres: PcPresentation, normal_generators, budget: int | None = None) -> PcPresentation:
    return quotient_map(pres, normal_generators, budget).quotient


def derived_subgroup_generators(pres: PcPresentation) -> list[GroupElement]:
    gens = [generator(pres, i) for i in range(pres.n)]
    return [commutator(a, b) for i, a in enumerate(gens) for b in gens[:i]]


def abelian_invariants(pres: PcPresentation, budget: int | None = None) -> AbelianStructure:
    """Structure of G/[G,G]."""
    q = quotient(pres, derived_subgroup_generators(pres), budget)
    rows = []
    for i, (r, w) in enumerate(zip(q.relative_orders, q.power_words)):
        row = [-x for x in w]
        row[i] += r
        rows.append(row)
    return group_from_relations(q.n, rows) if q.n else AbelianStructure()


def quick_vanish_check(pres: PcPresentation, budget: int | None = None) -> str:
    """'Vanishes' when the absolute-commutator criterion certifies B0 = 0."""
    if pres.prime <= 3:
        return "NotApplicable"
    if nilpotency_class(pres, budget) > 3:
        return "NotApplicable"
    t = element_table(pres, budget)
    orders = None
    seen = set()
    for i in range(pres.n):
        for j in range(i):
            c = commutator(generator(pres, i), generator(pres, j))
            if c.is_identity():
                continue
            ex = c.exponents
            nz = [k for k, x in enumerate(ex) if x]
            if len(nz) != 1 or ex[nz[0]] != 1:
                return "NotApplicable"
            k = nz[0]
            if k in seen:
                return "NotApplicable"
            seen.add(k)
            if orders is None:
                orders = t.element_orders()
            if orders[t.index(ex)] != pres.relative_orders[k]:
                return "NotApplicable"
    return "Vanishes"
