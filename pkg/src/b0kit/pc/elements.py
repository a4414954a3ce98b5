"""Group elements in normal form and the basic arithmetic on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import PresentationError
from .collector import to_word
from .presentation import PcPresentation


@dataclass(frozen=True)
class GroupElement:
    """x_1^{e_1} ... x_n^{e_n} with 0 <= e_i < r_i."""

    pres: PcPresentation
    exponents: tuple[int, ...]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        return power(self, k)

    def __invert__(self) -> "GroupElement":
        return inverse(self)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __str__(self) -> str:
        parts = [f"{g}^{e}" if e != 1 else g
                 for g, e in zip(self.pres.gens, self.exponents) if e]
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"GroupElement({self})"


def element(pres: PcPresentation, exponents: Sequence[int]) -> GroupElement:
    ex = tuple(int(x) for x in exponents)
    if len(ex) != pres.n or any(not 0 <= x < r for x, r in zip(ex, pres.relative_orders)):
        raise ValueError(f"{ex} is not a normal-form exponent vector")
    return GroupElement(pres, ex)


def identity(pres: PcPresentation) -> GroupElement:
    return GroupElement(pres, (0,) * pres.n)


def generator(pres: PcPresentation, name_or_index) -> GroupElement:
    i = pres.index_of(name_or_index) if isinstance(name_or_index, str) else int(name_or_index)
    return GroupElement(pres, tuple(int(k == i) for k in range(pres.n)))


def generators(pres: PcPresentation) -> list[GroupElement]:
    return [generator(pres, i) for i in range(pres.n)]


def _letters(pres: PcPresentation, word: Iterable) -> list[tuple[int, int]]:
    """Accept letters as names, "name^-1" strings, (name|index, exp) pairs."""
    out = []
    for item in word:
        if isinstance(item, str):
            name, _, exp = item.partition("^")
            out.append((pres.index_of(name.strip()), int(exp) if exp else 1))
        else:
            g, k = item
            out.append((pres.index_of(g) if isinstance(g, str) else int(g), int(k)))
    for g, _ in out:
        if not 0 <= g < pres.n:
            raise PresentationError(f"generator index {g} out of range")
    return out


def collect(pres: PcPresentation, word: Iterable) -> GroupElement:
    """Normal form of a word of signed generator letters."""
    e = [0] * pres.n
    pres.collector().collect_signed(e, _letters(pres, word))
    return GroupElement(pres, tuple(e))


def _same(a: GroupElement, b: GroupElement) -> PcPresentation:
    if a.pres is not b.pres:
        raise PresentationError("operands belong to different presentations")
    return a.pres


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    pres = _same(a, b)
    e = list(a.exponents)
    pres.collector().collect(e, to_word(b.exponents))
    return GroupElement(pres, tuple(e))


def inverse(a: GroupElement) -> GroupElement:
    e, _ = a.pres.collector().inverse(a.exponents)
    return GroupElement(a.pres, tuple(e))


def power(a: GroupElement, k: int) -> GroupElement:
    if k < 0:
        return power(inverse(a), -k)
    result = identity(a.pres)
    base = a
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """[a, b] = a^-1 b^-1 a b, computed as (ba)^-1 (ab)."""
    _same(a, b)
    return multiply(inverse(multiply(b, a)), multiply(a, b))


def conjugate(a: GroupElement, b: GroupElement) -> GroupElement:
    """a^b = b^-1 a b."""
    _same(a, b)
    return multiply(inverse(b), multiply(a, b))


def element_order(a: GroupElement) -> int:
    k, x = 1, a
    while not x.is_identity():
        x = multiply(x, a)
        k += 1
    return k


# ----------------------------------------------------------------------------
# consistency

def overlap_pairs(pres: PcPresentation, collector=None):
    """Yield (label, left, right) for each overlap; left/right are (exps, tails).

    Works for the base group and, given a tails collector, for the cover.
    """
    col = collector or pres.collector()
    n = pres.n
    rel = pres.relative_orders

    def gen(i):
        e, t = col.identity()
        e[i] = 1
        return e, t

    def mul(x, y):
        return col.multiply(x[0], y[0], x[1], y[1])

    def genpow(i, k):
        e, t = col.identity()
        col.collect(e, [(i, 1)] * k, t)
        return e, t

    gens_ = [gen(i) for i in range(n)]
    prod_ = {}

    def pair(j, i):  # x_j x_i collected
        key = (j, i)
        if key not in prod_:
            prod_[key] = mul(gens_[j], gens_[i])
        return prod_[key]

    for k in range(n):
        for j in range(k):
            for i in range(j):
                # generators satisfy k > j > i
                left = mul(pair(k, j), gens_[i])
                right = mul(gens_[k], pair(j, i))
                yield f"{pres.gens[k]}*{pres.gens[j]}*{pres.gens[i]}", left, right
    for j in range(n):
        full = genpow(j, rel[j])
        for i in range(j):
            left = mul(full, gens_[i])
            right = mul(genpow(j, rel[j] - 1), pair(j, i))
            yield f"{pres.gens[j]}^{rel[j]}*{pres.gens[i]}", left, right
    for j in range(n):
        for i in range(j):
            left = mul(gens_[j], genpow(i, rel[i]))
            right = mul(pair(j, i), genpow(i, rel[i] - 1))
            yield f"{pres.gens[j]}*{pres.gens[i]}^{rel[i]}", left, right
    for i in range(n):
        left = mul(gens_[i], genpow(i, rel[i]))
        right = mul(genpow(i, rel[i]), gens_[i])
        yield f"{pres.gens[i]}*{pres.gens[i]}^{rel[i]}", left, right


def check_consistency(pres: PcPresentation) -> list[str]:
    """Labels of the overlaps whose two collections disagree (empty = consistent)."""
    cached = pres._cache.get("violations")
    if cached is None:
        cached = [label for label, left, right in overlap_pairs(pres) if left[0] != right[0]]
        pres._cache["violations"] = cached
    return list(cached)


def is_consistent(pres: PcPresentation) -> bool:
    return not check_consistency(pres)
