"""Bogomolov multipliers for every transcribed family at p = 5.

Each row builds the tails cover of the group, collects the lifted
commutators of commuting pairs, and compares the quotient M(G)/M0(G)
with the published verdict.  Only phi18 should come out nontrivial.
"""

import warnings

from b0kit.cli import run_table

warnings.simplefilter("ignore")
rep = run_table(5)

print(f"{'family':<12}{'|M(G)|':>10}{'B0':>8}  match")
for row in rep.results:
    m = 1
    for d in row.get("m", []):
        m *= d
    b0 = "x".join(f"C{d}" for d in row.get("b0", [])) or "1"
    print(f"{row['family']:<12}{m:>10}{b0:>8}  {row.get('match')}")

print()
print("summary:", rep.summary)
