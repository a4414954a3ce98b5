"""Groups outside the catalog, written in the presentation language.

The Heisenberg group of order 27 has Schur multiplier C3 x C3 and
trivial Bogomolov multiplier.  For groups this small the cocycle
oracle gives an independent answer.
"""

from b0kit.multiplier import OracleMode, bogomolov_multiplier, h2_oracle, schur_multiplier
from b0kit.pc.presentation import parse_presentation

HEIS = """
group Heis27 prime 3
gens a, b, c
comm [b, a] = c
"""

G = parse_presentation(HEIS)
print("order", G.order)
print("M(G) from the cover :", schur_multiplier(G))
print("M(G) from cocycles  :", h2_oracle(G, OracleMode.SCHUR))
res = bogomolov_multiplier(G)
print("B0(G)               :", res.b0, "(cocycles:", h2_oracle(G, OracleMode.BOGOMOLOV), ")")
