"""Checking a Hoshi-Kang certificate for phi18.

The printed choice N = <a3, b, g> passes the cohomology part of the
test but not the bicyclic part: a1 and a2 commute and map onto C5 x C5
in G/N.  Taking N = <a2, a3, g> instead gives a full certificate.
"""

from b0kit.catalog import family_presentation
from b0kit.hoshikang import bicyclic_image_condition, hk_certificate, transgression_obstruction

G = family_presentation("phi18", 5)

printed = ["a3", "b", "g"]
trans = transgression_obstruction(G, printed)
print("N = <a3, b, g>")
print("  H2 quotient:", trans["h2_quotient"].invariants, "->", trans["verdict"])
bic = bicyclic_image_condition(G, printed)
print("  bicyclic images:", bic["holds"], "witness", bic["witness"])
print("  verdict:", hk_certificate(G, printed).verdict)

alt = ["a2", "a3", "g"]
cert = hk_certificate(G, alt)
print("N = <a2, a3, g>")
print("  fixed characters:", cert.fixed.invariants)
print("  H2 quotient:", cert.h2_quotient.invariants)
print("  verdict:", cert.verdict)
