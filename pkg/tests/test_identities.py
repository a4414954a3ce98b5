import pytest

from corpus import small_group
from b0kit.catalog import family_presentation
from b0kit.pc.identities import LAWS, IdentityReport, verify_identities


def test_all_laws_hold_on_small_samples():
    for fid in ("phi23", "phi37"):
        for rep in verify_identities(family_presentation(fid, 5), samples=60, seed=3):
            assert rep.verdict in ("Pass", "NotApplicable")
            assert not rep.failures


def test_class_limits_are_refused():
    G = family_presentation("phi35", 5)  # class 5
    rep = verify_identities(G, "L2.2", samples=10)
    assert rep.verdict == "NotApplicable"
    assert "class 5" in rep.refused
    assert verify_identities(G, "L2.3", samples=10).verdict == "Pass"


def test_single_law_returns_single_report():
    rep = verify_identities(small_group("Heis27"), "L2.1.1", samples=20)
    assert isinstance(rep, IdentityReport)
    assert rep.passed and rep.samples == 20


def test_seeded_runs_are_reproducible():
    G = family_presentation("phi18", 5)
    a = [r.to_dict() for r in verify_identities(G, samples=40, seed=11)]
    b = [r.to_dict() for r in verify_identities(G, samples=40, seed=11)]
    assert a == b
    assert [d["law"] for d in a] == list(LAWS)


def test_unknown_law():
    with pytest.raises(ValueError):
        verify_identities(small_group("C3"), ("L9",))


def test_report_shape():
    d = IdentityReport("L2.2", 5, 0, failures=[{"sample": 1}]).to_dict()
    assert d["outcome"] == "Fail" and d["failure_count"] == 1
    assert IdentityReport("L2.2", 5, 0, refused="x").verdict == "NotApplicable"
