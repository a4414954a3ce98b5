"""Seeded sampling checks of the commutator identities used in the hand proofs.

Laws:

* ``L2.1.1``  [x, yz] = [x,z][x,y][x,y,z] and [xy, z] = [x,z][x,z,y][y,z],
  checked in G and in the tails cover (random lifts).
* ``L2.1.4``  for commuting x, y the lifted commutators satisfy
  [x~, y~] = -[y~, x~] in the tail group (the additive form of [x,y'] = [x',y]).
* ``L2.1.7``  for commuting x, y: [x~^a, y~^b] = ab [x~, y~] in the tail group.
* ``L2.2``    [x, y^n] = [x,y]^n [x,y,y]^C(n,2) [x,y,y,y]^C(n,3), class <= 3.
* ``L2.3``    [a^n, b] = [a,b]^n [a,b,a]^C(n,2) [a,b,a,a]^C(n,3)
  [a,b,a,a,a]^C(n,4) [a,b,a,[a,b]]^sigma(n), class <= 5, n in {2, p, p+1}.

A law whose class precondition fails is *refused*, which is reported
separately from a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from ..abelian import hnf_contains
from ..catalog.arithmetic import sigma
from .elements import GroupElement, commutator, identity, multiply, power
from .presentation import PcPresentation

LAWS = ("L2.1.1", "L2.1.4", "L2.1.7", "L2.2", "L2.3")


@dataclass
class IdentityReport:
    law: str
    samples: int
    seed: int
    failures: list = field(default_factory=list)
    refused: str | None = None

    @property
    def passed(self) -> bool:
        return self.refused is None and not self.failures

    @property
    def verdict(self) -> str:
        if self.refused is not None:
            return "NotApplicable"
        return "Pass" if not self.failures else "Fail"

    def to_dict(self) -> dict:
        return {"law": self.law, "samples": self.samples, "seed": self.seed,
                "outcome": self.verdict, "failures": self.failures[:20],
                "failure_count": len(self.failures), "refused": self.refused}


def random_element(pres: PcPresentation, rng: np.random.Generator) -> GroupElement:
    return GroupElement(pres, tuple(int(rng.integers(0, r)) for r in pres.relative_orders))


def _comm(*xs: GroupElement) -> GroupElement:
    """Left-normed commutator [x1, x2, ..., xk]."""
    c = xs[0]
    for x in xs[1:]:
        c = commutator(c, x)
    return c


def _prod(*xs: GroupElement) -> GroupElement:
    out = identity(xs[0].pres)
    for x in xs:
        out = multiply(out, x)
    return out


# ----------------------------------------------------------------------------
# the cover: elements are (exponents, tails); equalities hold modulo the
# consistency relations among the tails

class _CoverGroup:
    def __init__(self, cover):
        self.col = cover.collector
        self.nt = cover.ntails

    def mul(self, a, b):
        e, t = self.col.multiply(list(a[0]), list(b[0]), list(a[1]), list(b[1]))
        return tuple(e), tuple(t)

    def inv(self, a):
        e, t = self.col.inverse(list(a[0]), list(a[1]))
        return tuple(e), tuple(t)

    def comm(self, a, b):
        return self.mul(self.inv(self.mul(b, a)), self.mul(a, b))

    def power(self, a, k):
        if k < 0:
            a, k = self.inv(a), -k
        out = (tuple([0] * len(a[0])), tuple([0] * self.nt))
        while k:
            if k & 1:
                out = self.mul(out, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return out


def _random_lift(x: GroupElement, nt: int, rng) -> tuple:
    return tuple(x.exponents), tuple(int(v) for v in rng.integers(-3, 4, size=nt))


# ----------------------------------------------------------------------------

def _law_211(pres, rng, samples, failures):
    from ..multiplier.cover import build_cover

    cover = build_cover(pres)
    cov = _CoverGroup(cover)
    nt = cov.nt
    for s in range(samples):
        x, y, z = (random_element(pres, rng) for _ in range(3))
        lhs = _comm(x, multiply(y, z))
        rhs = _prod(_comm(x, z), _comm(x, y), _comm(x, y, z))
        lhs2 = _comm(multiply(x, y), z)
        rhs2 = _prod(_comm(x, z), _comm(x, z, y), _comm(y, z))
        if lhs != rhs or lhs2 != rhs2:
            failures.append({"sample": s, "x": str(x), "y": str(y), "z": str(z), "where": "G"})
            continue
        X, Y, Z = (_random_lift(g, nt, rng) for g in (x, y, z))
        c = cov.comm
        left = c(X, cov.mul(Y, Z))
        right = cov.mul(cov.mul(c(X, Z), c(X, Y)), c(c(X, Y), Z))
        # tails collection is a group only modulo the consistency relations
        diff = [u - v for u, v in zip(left[1], right[1])]
        if left[0] != right[0] or (any(diff) and not hnf_contains(cover.relations, diff)):
            failures.append({"sample": s, "x": str(x), "y": str(y), "z": str(z), "where": "cover"})


def _commuting_pair(table, pres, rng):
    x = random_element(pres, rng)
    cand = np.flatnonzero(table.centralizer_mask(x))
    y = table.element(int(cand[rng.integers(0, cand.size)]))
    return x, y


def _law_214_217(pres, rng, samples, failures, law, budget):
    from ..multiplier.cover import build_cover
    from .tables import element_table

    cover = build_cover(pres)
    cov = _CoverGroup(cover)
    table = element_table(pres, budget)
    rel = cover.relations
    nt = cov.nt
    exp_bound = max(pres.relative_orders) ** 2
    for s in range(samples):
        x, y = _commuting_pair(table, pres, rng)
        X, Y = _random_lift(x, nt, rng), _random_lift(y, nt, rng)
        cxy = cov.comm(X, Y)
        if any(cxy[0]):
            failures.append({"sample": s, "x": str(x), "y": str(y), "why": "lifted commutator left the tails"})
            continue
        if law == "L2.1.4":
            cyx = cov.comm(_random_lift(y, nt, rng), _random_lift(x, nt, rng))
            diff = [a + b for a, b in zip(cxy[1], cyx[1])]
            ok = not any(cyx[0]) and (not any(diff) or hnf_contains(rel, diff))
            if not ok:
                failures.append({"sample": s, "x": str(x), "y": str(y)})
        else:
            a = int(rng.integers(-exp_bound, exp_bound + 1))
            b = int(rng.integers(-exp_bound, exp_bound + 1))
            c = cov.comm(cov.power(X, a), cov.power(Y, b))
            diff = [u - a * b * v for u, v in zip(c[1], cxy[1])]
            ok = not any(c[0]) and (not any(diff) or hnf_contains(rel, diff))
            if not ok:
                failures.append({"sample": s, "x": str(x), "y": str(y), "a": a, "b": b})


def _law_22(pres, rng, samples, failures):
    top = max(pres.relative_orders) ** 2 + pres.prime
    for s in range(samples):
        x, y = random_element(pres, rng), random_element(pres, rng)
        n = int(rng.integers(1, top + 1))
        lhs = commutator(x, power(y, n))
        rhs = _prod(power(_comm(x, y), n), power(_comm(x, y, y), comb(n, 2)),
                    power(_comm(x, y, y, y), comb(n, 3)))
        if lhs != rhs:
            failures.append({"sample": s, "x": str(x), "y": str(y), "n": n})


def _law_23(pres, rng, samples, failures):
    p = pres.prime
    ns = (2, p, p + 1)
    for s in range(samples):
        a, b = random_element(pres, rng), random_element(pres, rng)
        n = ns[s % 3]
        ab = _comm(a, b)
        lhs = commutator(power(a, n), b)
        rhs = _prod(power(ab, n), power(_comm(a, b, a), comb(n, 2)),
                    power(_comm(a, b, a, a), comb(n, 3)), power(_comm(a, b, a, a, a), comb(n, 4)),
                    power(commutator(_comm(a, b, a), ab), sigma(n)))
        if lhs != rhs:
            failures.append({"sample": s, "a": str(a), "b": str(b), "n": n})


def verify_identities(pres: PcPresentation, laws=LAWS, samples: int = 1000, seed: int = 0,
                      budget: int | None = None):
    """One report per law, each with its own stream derived from `seed`.

    A single law name returns a single report.
    """
    from .structure import nilpotency_class

    if isinstance(laws, str):
        return verify_identities(pres, (laws,), samples, seed, budget)[0]

    reports = []
    for i, law in enumerate(laws):
        if law not in LAWS:
            raise ValueError(f"unknown law {law!r}; choose from {', '.join(LAWS)}")
        rng = np.random.default_rng([seed, i])
        rep = IdentityReport(law, samples, seed)
        if law in ("L2.2", "L2.3"):
            limit = 3 if law == "L2.2" else 5
            c = nilpotency_class(pres, budget)
            if c > limit:
                rep.refused = f"nilpotency class {c} exceeds {limit}"
                reports.append(rep)
                continue
        if law == "L2.1.1":
            _law_211(pres, rng, samples, rep.failures)
        elif law in ("L2.1.4", "L2.1.7"):
            _law_214_217(pres, rng, samples, rep.failures, law, budget)
        elif law == "L2.2":
            _law_22(pres, rng, samples, rep.failures)
        else:
            _law_23(pres, rng, samples, rep.failures)
        reports.append(rep)
    return reports
