"""The tails cover of a pc presentation.

Every relation of the base gets its own central generator t_r.  Collecting the
overlap checks in the cover produces integer relations among the tails; the
abelian group they present is R/[F,R], whose torsion is the Schur multiplier
and whose free rank is the number of pc generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..abelian import AbelianStructure, IntMatrix, group_from_relations, hermite_normal_form, smith_normal_form
from ..errors import InconsistentPresentation, PreconditionError
from ..pc.collector import Collector, to_word
from ..pc.elements import GroupElement, check_consistency, overlap_pairs
from ..pc.presentation import PcPresentation


@dataclass
class CoverContext:
    base: PcPresentation
    ntails: int
    tail_labels: list[str]
    collector: Collector
    relations: IntMatrix                # HNF of the consistency relations
    structure: AbelianStructure         # Z^T / relations
    _v: IntMatrix = field(repr=False, default_factory=list)
    _diag: list[int] = field(repr=False, default_factory=list)

    @property
    def multiplier(self) -> AbelianStructure:
        return self.structure.torsion

    def torsion_coordinates(self, vec) -> tuple[int, ...]:
        """Coordinates of a tail vector in the torsion summands Z/d_i."""
        row = [int(x) for x in vec]
        out = []
        for i, d in enumerate(self._diag):
            if d > 1:
                c = sum(row[k] * self._v[k][i] for k in range(self.ntails))
                out.append(c % d)
        return tuple(out)

    def lift_product(self, a, b):
        """Tail-carrying product of the lifts (exponents, zero tail) of a and b."""
        return self.collector.multiply(list(a), list(b))


def build_cover(pres: PcPresentation) -> CoverContext:
    cached = pres._cache.get("cover")
    if cached is not None:
        return cached
    bad = check_consistency(pres)
    if bad:
        raise InconsistentPresentation(bad)
    n = pres.n
    labels = [f"{g}^{r}" for g, r in zip(pres.gens, pres.relative_orders)]
    ptail = list(range(n))
    ctail = [[None] * n for _ in range(n)]
    k = n
    for i in range(n):
        for j in range(i):
            ctail[i][j] = k
            labels.append(f"{pres.gens[i]}^{pres.gens[j]}")
            k += 1
    conj = [[None] * n for _ in range(n)]
    for (i, j), v in pres.conjugate_words.items():
        conj[i][j] = to_word(v)
    col = Collector(pres.relative_orders, [to_word(w) for w in pres.power_words], conj,
                    ptail=ptail, ctail=ctail, ntails=k)
    rows = []
    for label, left, right in overlap_pairs(pres, col):
        if left[0] != right[0]:
            raise InconsistentPresentation([label])
        diff = [a - b for a, b in zip(left[1], right[1])]
        if any(diff):
            rows.append(diff)
    hnf = hermite_normal_form(rows, k)
    _, s, v = smith_normal_form(hnf) if hnf else ([], [], [[int(i == j) for j in range(k)] for i in range(k)])
    diag = [s[i][i] if i < len(s) else 0 for i in range(k)]
    structure = group_from_relations(k, hnf)
    if structure.free_rank != n:
        raise AssertionError(f"tails quotient has free rank {structure.free_rank}, expected {n}")
    ctx = CoverContext(pres, k, labels, col, hnf, structure, v, diag)
    pres._cache["cover"] = ctx
    return ctx


def lifted_commutator(cover: CoverContext, x, y) -> tuple[int, ...]:
    """[x~, y~] in the tail group for a commuting pair (x, y) of the base.

    Lifts are the normal words with zero tail; any other lift differs by a
    central tail, which cancels in the commutator.
    """
    ex = x.exponents if isinstance(x, GroupElement) else tuple(x)
    ey = y.exponents if isinstance(y, GroupElement) else tuple(y)
    xy, txy = cover.lift_product(ex, ey)
    yx, tyx = cover.lift_product(ey, ex)
    if xy != yx:
        raise PreconditionError("lifted_commutator needs a commuting pair")
    # x~y~ = y~x~ [x~,y~] and the commutator is central
    return tuple(a - b for a, b in zip(txy, tyx))


def cover_element_commutator(cover: CoverContext, x, tx, y, ty):
    """Full cover commutator of (x, tx), (y, ty); returns (exps, tails)."""
    col = cover.collector
    xy = col.multiply(x, y, tx, ty)
    yx = col.multiply(y, x, ty, tx)
    inv_e, inv_t = col.inverse(yx[0], yx[1])
    return col.multiply(inv_e, xy[0], inv_t, xy[1])
