"""Monomial action scripts for the rationality argument.

Every shipped script is checked stage by stage: the table must define
a group action, the substitution must be unimodular and invariant, and
so on.  The printed Step 2 and Step 3 tables contain misprints; the
literal versions fail at a named relation.
"""

from b0kit.monomial import SCRIPT_NAMES, build_script, load_script, shipped_script, verify_script

for p in (5, 7):
    for name in SCRIPT_NAMES:
        rep = verify_script(shipped_script(name, p))
        print(f"p={p} {name:<12} {rep.verdict}")

print()
for name in ("phi15_step2", "phi15_step3"):
    rep = verify_script(load_script(build_script(name, 5, literal=True)))
    print(f"literal {name}: {rep.verdict}, {rep.first_violation}")
