"""B0(G) = M(G)/M0(G) inside the tails quotient."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..abelian import AbelianStructure, Lattice, quotient_structure
from ..pc.presentation import PcPresentation
from ..pc.tables import element_table
from .cover import build_cover, lifted_commutator


@dataclass
class BogomolovResult:
    m: AbelianStructure
    m0: AbelianStructure
    b0: AbelianStructure
    generator_log: list[dict] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    pairs_examined: int = 0
    classes: int = 0
    early_exit: bool = False

    @property
    def verdict(self) -> str:
        return "Trivial" if self.b0.is_trivial else "Nontrivial"


def bogomolov_multiplier(pres: PcPresentation, budget: int | None = None) -> BogomolovResult:
    """Compute M, M0 and B0 for a consistent presentation.

    M0 is spanned by lifted commutators [x~, y~] with x a class representative
    and y a generator of C(x): tails are central, so the value is invariant
    under simultaneous conjugation, and y -> [x~, y~] is a homomorphism on
    C(x), so generators of the centralizer suffice.
    """
    t0 = time.perf_counter()
    cover = build_cover(pres)
    t1 = time.perf_counter()
    table = element_table(pres, budget)
    reps, _, _ = table.classes()
    t2 = time.perf_counter()

    lattice = Lattice(cover.ntails, cover.relations)
    log: list[dict] = []
    pairs = 0
    early = False
    b0 = cover.multiplier
    if b0.is_trivial:
        early = True
    else:
        for x in reps:
            x = int(x)
            if x == 0:
                continue
            ex = tuple(int(v) for v in table.exps[x])
            for y in table.induced_generators(table.centralizer_mask(x)):
                if y == x:
                    continue
                ey = tuple(int(v) for v in table.exps[y])
                pairs += 1
                vec = lifted_commutator(cover, ex, ey)
                if lattice.add(vec):
                    b0 = lattice.quotient().torsion
                    log.append({
                        "x": _word(pres, ex),
                        "y": _word(pres, ey),
                        "tail": list(cover.torsion_coordinates(vec)),
                    })
                    if b0.is_trivial:
                        early = True
                        break
            if early:
                break
    t3 = time.perf_counter()
    m = cover.multiplier
    m0 = quotient_structure(lattice.basis, cover.relations) if lattice.basis else AbelianStructure()
    if m0.free_rank:
        raise AssertionError("lifted commutators left the multiplier")
    if (m0.order or 1) * (b0.order or 1) != (m.order or 1):
        raise AssertionError("|M0| * |B0| != |M|")
    timings = {
        "cover_ms": round(1000 * (t1 - t0), 3),
        "classes_ms": round(1000 * (t2 - t1), 3),
        "m0_ms": round(1000 * (t3 - t2), 3),
    }
    return BogomolovResult(m, m0, b0, log, timings, pairs, int(len(reps)), early)


def _word(pres: PcPresentation, exps) -> str:
    parts = [f"{g}^{e}" if e != 1 else g for g, e in zip(pres.gens, exps) if e]
    return "*".join(parts) if parts else "1"


def schur_multiplier(pres: PcPresentation) -> AbelianStructure:
    return build_cover(pres).multiplier

