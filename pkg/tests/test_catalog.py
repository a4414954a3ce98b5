from math import comb

import pytest
from sympy import primerange
from sympy.ntheory import is_quad_residue, primitive_root

from b0kit.catalog import (family_presentation, family_source, get_family, list_families,
                           phi43_kl, smallest_nonresidue, smallest_primitive_root)
from b0kit.catalog.arithmetic import prime_factors, pth_power_expansion, sigma
from b0kit.errors import PreconditionError, PresentationError
from b0kit.pc.elements import is_consistent

PRIMES = list(primerange(5, 60))


@pytest.mark.parametrize("p", PRIMES)
def test_arithmetic_against_sympy(p):
    v = smallest_nonresidue(p)
    assert not is_quad_residue(v, p)
    assert all(is_quad_residue(u, p) for u in range(2, v))
    assert smallest_primitive_root(p) == primitive_root(p)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("r", [0, 1, 2])
def test_phi43_kl_solves_the_norm_equation(p, r):
    k, l, n = phi43_kl(p, r)
    v = smallest_nonresidue(p)
    assert ((k - v) ** 2 - v * (l + v) ** 2 - r) % p == 0
    assert n == v + comb(p, 3)
    # lexicographically least
    for k2 in range(1, k + 1):
        for l2 in range(1, p + 1):
            if (k2, l2) < (k, l):
                assert ((k2 - v) ** 2 - v * (l2 + v) ** 2 - r) % p != 0


def test_arithmetic_edge_cases():
    assert prime_factors(360) == [2, 3, 5]
    assert [sigma(n) for n in (1, 2, 3, 5)] == [0, 1, 5, 30]
    assert pth_power_expansion(["a1", "a2", "a3"], 0, 5) == [("a1", 5), ("a2", 10), ("a3", 10)]
    with pytest.raises(ValueError):
        smallest_nonresidue(2)
    with pytest.raises(ValueError):
        smallest_primitive_root(9)
    with pytest.raises(ValueError):
        phi43_kl(3)


def test_catalog_listing():
    fams = list_families()
    assert len(fams) == 42
    transcribed = [e for e in fams if e.transcribed]
    assert len(transcribed) == 20
    assert [e.index for e in transcribed] == sorted(e.index for e in transcribed)
    nontrivial = sorted(e.index for e in fams if e.table1_verdict == "Nontrivial")
    assert nontrivial == [10, 18, 20, 21, 36, 38, 39]
    untranscribed = {e.index for e in fams if not e.transcribed}
    assert {10, 20, 21, 26, 28, 29, 36, 38, 39} <= untranscribed
    assert all(e.expected == "NotTranscribed" for e in fams if not e.transcribed)


@pytest.mark.parametrize("p", [5, 7, 11])
@pytest.mark.parametrize("fid", [e.family_id for e in list_families(False)])
def test_families_are_consistent(fid, p):
    G = family_presentation(fid, p, check=False)
    assert is_consistent(G)
    assert G.order == p ** 6


def test_aliases_and_errors():
    assert get_family("Phi18").family_id == "phi18"
    assert get_family("phi15_21-4").family_id == "phi15_21^4"
    assert get_family("phi42").family_id == "phi42_222"
    with pytest.raises(PresentationError, match="not transcribed"):
        get_family("phi20")
    with pytest.raises(PresentationError, match="unknown family"):
        get_family("phi99")
    with pytest.raises(PresentationError):
        family_presentation("phi18", 9)
    with pytest.raises(PreconditionError):
        family_presentation("phi18", 2)
    with pytest.raises(PreconditionError), pytest.warns(UserWarning):
        family_presentation("phi43_222", 3)
    assert "gens" in family_source("phi18")


def test_p3_warns_and_notes():
    with pytest.warns(UserWarning, match="p > 3"):
        G = family_presentation("phi18", 3)
    assert any("p > 3" in n for n in G.notes)


def test_parameter_override():
    a = family_presentation("phi42_222", 7)
    b = family_presentation("phi42_222", 7, {"r": 3})
    assert a.power_words != b.power_words
    assert is_consistent(b)
