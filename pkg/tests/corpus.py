"""Small groups used as oracle and property corpora."""

from __future__ import annotations

import warnings

from b0kit.catalog import family_presentation
from b0kit.pc.elements import generator
from b0kit.pc.presentation import parse_presentation
from b0kit.pc.structure import quotient

SMALL_DSL = {
    "C3": "group C3 prime 3\ngens a",
    "C9": "group C9 prime 3\ngens a, b\npow a^3 = b",
    "C27": "group C27 prime 3\ngens a, b, c\npow a^3 = b\npow b^3 = c",
    "C81": "group C81 prime 3\ngens a, b, c, d\npow a^3 = b\npow b^3 = c\npow c^3 = d",
    "C3xC3": "group C3xC3 prime 3\ngens a, b",
    "C9xC3": "group C9xC3 prime 3\ngens a, b, c\npow a^3 = c",
    "C3^3": "group C3^3 prime 3\ngens a, b, c",
    "C3^4": "group C3^4 prime 3\ngens a, b, c, d",
    "C9xC9": "group C9xC9 prime 3\ngens a, b, c, d\npow a^3 = c\npow b^3 = d",
    "Heis27": "group Heis27 prime 3\ngens a, b, c\ncomm [b, a] = c",
    "Ext27_9": "group Ext27_9 prime 3\ngens a, b, c\npow a^3 = c\ncomm [b, a] = c",
    "Heis27xC3": "group Heis27xC3 prime 3\ngens a, b, c, d\ncomm [b, a] = c",
    "C3wrC3": "group C3wrC3 prime 3\ngens a, b, c, d\ncomm [b, a] = c\ncomm [c, a] = d",
    "C5xC5": "group C5xC5 prime 5\ngens a, b",
    "C25": "group C25 prime 5\ngens a, b\npow a^5 = b",
    "C7": "group C7 prime 7\ngens a",
}

# catalog families at p = 3 cut down to order 81 by killing trailing generators
CATALOG_QUOTIENTS = ("phi18", "phi19", "phi23", "phi25_222", "phi35", "phi40")


def small_group(name: str):
    return parse_presentation(SMALL_DSL[name], name=name)


def catalog_quotient(fid: str, order: int = 81):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        G = family_presentation(fid, 3)
    k = G.n
    while G.order // G.prime ** (G.n - k) > order:
        k -= 1
    Q = quotient(G, [generator(G, i) for i in range(k, G.n)])
    Q.name = f"{fid}/tail@p3"
    return Q


def oracle_corpus():
    """At least ten groups of order <= 81."""
    out = [small_group(n) for n in SMALL_DSL]
    out += [catalog_quotient(f) for f in CATALOG_QUOTIENTS[:3]]
    return out


# pairs for the product property, total order <= 3^5
PRODUCT_PAIRS = (
    ("C3", "C3xC3"),
    ("C9", "C3^3"),
    ("Heis27", "C9"),
    ("Ext27_9", "C3xC3"),
    ("C3", "C3wrC3"),
)
