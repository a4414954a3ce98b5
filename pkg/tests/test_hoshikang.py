import numpy as np
import pytest

from corpus import small_group
from b0kit.catalog import family_presentation
from b0kit.errors import PreconditionError
from b0kit.hoshikang import (Character, bicyclic_image_condition, character_action,
                             fixed_character_subgroup, hk_certificate, transgression_obstruction)
from b0kit.pc.elements import commutator, generator
from b0kit.pc.structure import quotient_map

G5 = family_presentation("phi18", 5)


def test_printed_normal_subgroup_cohomology():
    fixed = fixed_character_subgroup(G5, ["a3", "b", "g"])
    assert fixed.structure.order == 5
    assert fixed.dual.order == 125
    trans = transgression_obstruction(G5, ["a3", "b", "g"])
    assert trans["h2_quotient"].invariants == (5, 5)
    assert trans["verdict"] == "Obstructed"
    assert trans["quotient_order"] == 125


def test_printed_normal_subgroup_bicyclic_counterexample():
    # a1 and a2 commute, and their images span C5 x C5 in G/N
    a1, a2 = generator(G5, "a1"), generator(G5, "a2")
    assert commutator(a1, a2).is_identity()
    qm = quotient_map(G5, [generator(G5, x) for x in ("a3", "b", "g")])
    q1, q2 = qm.project(a1), qm.project(a2)
    powers = {tuple((q1 ** k).exponents) for k in range(5)}
    assert tuple(q2.exponents) not in powers
    res = bicyclic_image_condition(G5, ["a3", "b", "g"])
    assert res["holds"] is False
    assert res["witness"] == ("a2", "a1")


def test_alternative_normal_subgroup_certifies():
    cert = hk_certificate(G5, ["a2", "a3", "g"])
    assert cert.verdict == "Nontrivial"
    assert cert.fixed.invariants == (5, 5)
    assert cert.h2_quotient.invariants == (5, 5, 5)
    assert cert.bicyclic and cert.witness is None
    assert bicyclic_image_condition(G5, ["a2", "a3", "g"], all_elements=True)["holds"]
    d = cert.to_dict()
    assert d["verdict"] == "Nontrivial" and d["n_order"] == 125


def test_fixed_characters_are_fixed():
    fixed = fixed_character_subgroup(G5, ["a2", "a3", "g"])
    assert fixed.generators
    for gname in G5.gens:
        C = character_action(G5, ["a2", "a3", "g"], gname)
        for chi in fixed.generators:
            v = np.array(chi.values)
            assert ((C @ v - v) % chi.exponent == 0).all()


def test_never_certifies_trivial():
    G = small_group("C5xC5")
    cert = hk_certificate(G, ["a"])
    assert cert.verdict == "Inconclusive"


def test_uses_normal_closure_and_rejects_nonabelian():
    # the normal closure of a1 is <a1, a2, a3>
    assert hk_certificate(G5, ["a1"]).n_order == 125
    with pytest.raises(PreconditionError, match="not abelian"):
        hk_certificate(G5, ["a"])


def test_character_values():
    chi = Character(("b", "g"), (1, 3), 5)
    assert chi((1, 0)) == (1, 5)
    assert chi((2, 1)) == (0, 1)
    assert str(chi) == "{b->1/5, g->3/5}"
    assert str(Character(("b",), (0,), 5)) == "0"
