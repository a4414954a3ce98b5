"""Certificate that B0(G) != 0 from a normal abelian subgroup N.

Two conditions together force B0(G) != 0:

1. the transgression H^1(N, Q/Z)^G -> H^2(G/N, Q/Z) is not onto, which we
   certify by comparing orders only;
2. for every commuting pair (y1, y2) of G the image <y1 N, y2 N> is cyclic.

Characters of N are stored as integer vectors psi with phi(b_i) = psi_i / E,
where b_1..b_k is a basis of N and E its exponent.  G acts by
(g.phi)(n) = phi(g^-1 n g).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .abelian import AbelianStructure, kernel_mod, quotient_structure
from .errors import PreconditionError
from .multiplier.bogomolov import schur_multiplier
from .pc.elements import GroupElement
from .pc.presentation import PcPresentation
from .pc.structure import quotient_map
from .pc.tables import element_table


@dataclass(frozen=True)
class Character:
    """phi(b_i) = values[i] / exponent for the basis b_i of N."""

    basis: tuple[str, ...]
    values: tuple[int, ...]
    exponent: int

    def __call__(self, coords) -> tuple[int, int]:
        """Value on an element with the given basis coordinates, as a reduced fraction."""
        num = sum(int(c) * v for c, v in zip(coords, self.values)) % self.exponent
        from math import gcd
        g = gcd(num, self.exponent)
        return num // g, self.exponent // g

    def __str__(self) -> str:
        parts = [f"{b}->{v}/{self.exponent}" for b, v in zip(self.basis, self.values) if v]
        return "{" + ", ".join(parts) + "}" if parts else "0"


@dataclass
class _NormalAbelian:
    mask: np.ndarray
    basis: list[int]            # element indices of G
    names: list[str]
    ranges: list[int]           # products b_1^{c_1}..b_k^{c_k}, 0 <= c_i < ranges[i], list N once
    coords: np.ndarray          # G index -> coordinate vector (rows of -1 outside N)
    relations: list[list[int]]  # N = Z^k / relations
    exponent: int


def _element_name(table, idx: int) -> str:
    return str(table.element(idx))


def _normal_abelian(pres: PcPresentation, n_gens, budget=None) -> _NormalAbelian:
    t = element_table(pres, budget)
    gens = [t.idx(g) if isinstance(g, GroupElement) else t.idx(_parse_elem(pres, g)) for g in n_gens]
    mask = t.normal_closure(gens)
    if not t.is_abelian_subgroup(mask):
        raise PreconditionError("the normal closure of the given generators is not abelian")
    size = int(mask.sum())
    orders = t.element_orders()

    def enumerate_products(basis, ranges):
        elems = np.zeros(1, dtype=np.int64)
        coords = np.zeros((1, 0), dtype=np.int64)
        for b, r in zip(basis, ranges):
            perm = t.right_perm(b)
            cols, cc = [elems], [np.concatenate([coords, np.zeros((len(elems), 1), dtype=np.int64)], 1)]
            cur = elems
            for k in range(1, r):
                cur = perm[cur]
                cols.append(cur)
                cc.append(np.concatenate([coords, np.full((len(elems), 1), k, dtype=np.int64)], 1))
            elems = np.concatenate(cols)
            coords = np.concatenate(cc)
        return elems, coords

    # the given generators form a basis when their orders multiply to |N|
    basis = [g for g in dict.fromkeys(gens) if g != 0]
    ranges = [int(orders[g]) for g in basis]
    ok = basis and int(np.prod(ranges)) == size
    if ok:
        elems, cvec = enumerate_products(basis, ranges)
        ok = np.unique(elems).size == size
    if not ok:
        basis = t.induced_generators(mask)
        ranges = []
        for b in basis:
            d = int(t.depth[b])
            lead = int(t.exps[b, d])
            ranges.append(int(t.rel[d]) // lead)
        elems, cvec = enumerate_products(basis, ranges)
        if np.unique(elems).size != size:
            raise AssertionError("induced generators do not enumerate N")
    k = len(basis)
    coords = np.full((t.size, k), -1, dtype=np.int64)
    coords[elems] = cvec
    relations = []
    for i, (b, r) in enumerate(zip(basis, ranges)):
        top = int(t.power_map(r)[b])
        row = [-int(c) for c in coords[top]]
        row[i] += r
        relations.append(row)
    exponent = int(orders[mask].max()) if size > 1 else 1
    names = [_element_name(t, b) for b in basis]
    return _NormalAbelian(mask, basis, names, ranges, coords, relations, exponent)


def _parse_elem(pres: PcPresentation, text: str) -> GroupElement:
    from .pc.elements import collect
    letters = [s.strip() for s in str(text).split("*") if s.strip()]
    return collect(pres, letters)


def character_action(G: PcPresentation, n_gens, g, budget=None) -> np.ndarray:
    """Integer matrix C with g.psi = C psi (mod the exponent of N)."""
    na = _normal_abelian(G, n_gens, budget)
    return _action_matrix(G, na, g, budget)


def _action_matrix(G, na: _NormalAbelian, g, budget=None) -> np.ndarray:
    t = element_table(G, budget)
    gi = t.idx(g if not isinstance(g, str) else _parse_elem(G, g))
    left_inv = t.left_perm(t.inv[gi])
    right = t.right_perm(gi)
    rows = []
    for b in na.basis:
        conj = int(right[left_inv[b]])  # g^-1 b g
        rows.append(na.coords[conj])
    return np.array(rows, dtype=np.int64).reshape(len(na.basis), len(na.basis))


@dataclass
class FixedCharacters:
    structure: AbelianStructure
    generators: list[Character]
    dual: AbelianStructure          # H^1(N, Q/Z) = Hom(N, Q/Z)


def fixed_character_subgroup(G: PcPresentation, n_gens, budget=None) -> FixedCharacters:
    """H^1(N, Q/Z)^G as the kernel of (action - 1) on the character group."""
    t = element_table(G, budget)
    na = _normal_abelian(G, n_gens, budget)
    k = len(na.basis)
    E = na.exponent
    if k == 0:
        return FixedCharacters(AbelianStructure(), [], AbelianStructure())
    rows = [list(r) for r in na.relations]
    dual_lat = kernel_mod(rows, E)
    for j in range(G.n):
        C = _action_matrix(G, na, int(t.strides[j]), budget)
        rows += (C - np.eye(k, dtype=np.int64)).tolist()
    lat = kernel_mod(rows, E)
    full = [[E * int(i == j) for j in range(k)] for i in range(k)]
    structure = quotient_structure(lat, full)
    dual = quotient_structure(dual_lat, full)
    gens = [Character(tuple(na.names), tuple(int(x) % E for x in v), E)
            for v in lat if any(int(x) % E for x in v)]
    return FixedCharacters(structure, gens, dual)


def transgression_obstruction(G: PcPresentation, n_gens, budget=None) -> dict:
    """'Obstructed' when |H^1(N)^G| < |H^2(G/N, Q/Z)|."""
    fixed = fixed_character_subgroup(G, n_gens, budget)
    qm = quotient_map(G, _as_elements(G, n_gens), budget)
    h2 = schur_multiplier(qm.quotient)
    verdict = "Obstructed" if (fixed.structure.order or 1) < (h2.order or 1) else "Inconclusive"
    return {"verdict": verdict, "fixed": fixed, "h2_quotient": h2, "quotient_order": qm.quotient.order}


def _as_elements(G, n_gens):
    return [g if isinstance(g, GroupElement) else _parse_elem(G, g) for g in n_gens]


def bicyclic_image_condition(G: PcPresentation, n_gens, budget=None, all_elements: bool = False) -> dict:
    """Is <y1 N, y2 N> cyclic for every commuting pair (y1, y2)?

    y1 runs over class representatives (or every element with
    `all_elements`), y2 over the centralizer of y1.  In a p-group an abelian
    subgroup on two generators is cyclic iff one generator lies in the cyclic
    group of the other, which is what is tested.
    """
    t = element_table(G, budget)
    qm = quotient_map(G, _as_elements(G, n_gens), budget)
    Q = qm.quotient
    qt = element_table(Q, budget)
    m = Q.order
    # cyc[a, b]: b is a power of a
    cyc = np.zeros((m, m), dtype=bool)
    cur = np.zeros(m, dtype=np.int64)
    base = np.arange(m, dtype=np.int64)
    for _ in range(m):
        cyc[base, cur] = True
        cur = qt.mul_arrays(cur, base) if Q.n else cur
    proj = qm.projection
    ys = range(t.size) if all_elements else (int(r) for r in t.classes()[0])
    pairs = 0
    for y1 in ys:
        y2s = np.flatnonzero(t.centralizer_mask(y1))
        q1, q2 = proj[y1], proj[y2s]
        ok = cyc[q1, q2] | cyc[q2, q1]
        pairs += y2s.size
        if not ok.all():
            y2 = int(y2s[np.argmin(ok)])
            return {"holds": False, "witness": (str(t.element(y1)), str(t.element(y2))), "pairs": pairs}
    return {"holds": True, "witness": None, "pairs": pairs}


@dataclass
class HkCertificate:
    group: str
    prime: int
    normal_generators: list[str]
    n_order: int
    h1_order: int
    fixed: AbelianStructure
    fixed_generators: list[Character]
    h2_quotient: AbelianStructure
    obstruction: str
    bicyclic: bool
    witness: tuple | None
    pairs_examined: int
    verdict: str                    # Nontrivial | Inconclusive
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "group": self.group, "prime": self.prime,
            "normal_generators": self.normal_generators, "n_order": self.n_order,
            "h1_order": self.h1_order, "h1_fixed": list(self.fixed.invariants),
            "h1_fixed_generators": [str(c) for c in self.fixed_generators],
            "h2_quotient": list(self.h2_quotient.invariants), "obstruction": self.obstruction,
            "bicyclic_condition": self.bicyclic,
            "witness": list(self.witness) if self.witness else None,
            "pairs_examined": self.pairs_examined, "verdict": self.verdict,
        }


def hk_certificate(G: PcPresentation, n_gens, budget=None) -> HkCertificate:
    """Run both conditions; the verdict is never 'Trivial'."""
    trans = transgression_obstruction(G, n_gens, budget)
    bic = bicyclic_image_condition(G, n_gens, budget)
    fixed = trans["fixed"]
    na = _normal_abelian(G, n_gens, budget)
    verdict = "Nontrivial" if trans["verdict"] == "Obstructed" and bic["holds"] else "Inconclusive"
    names = [str(g) for g in n_gens]
    return HkCertificate(G.name, G.prime, names, int(na.mask.sum()), fixed.dual.order or 1,
                         fixed.structure, fixed.generators, trans["h2_quotient"], trans["verdict"],
                         bic["holds"], bic["witness"], bic["pairs"], verdict)
