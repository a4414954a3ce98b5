"""Acceptance criteria 1-8, one recorded pass/fail line each.

Run with `pytest tests/test_acceptance.py -v`; the lines appear in the
"acceptance criteria" section of the terminal summary.  Running this file
directly with python prints the same lines.
"""

from __future__ import annotations

import random
import time
import warnings

import pytest

from acceptance_log import record
from corpus import PRODUCT_PAIRS, oracle_corpus, small_group
from b0kit.catalog import family_presentation
from b0kit.cli import _table_row, run_table
from b0kit.hoshikang import hk_certificate
from b0kit.monomial import SCRIPT_NAMES, perturb, shipped_script, verify_script
from b0kit.multiplier import bogomolov_multiplier, h2_oracle, schur_multiplier
from b0kit.pc.identities import verify_identities
from b0kit.pc.structure import abelian_invariants, direct_product

PAPER_NORMAL = ["a3", "b", "g"]
ALT_NORMAL = ["a2", "a3", "g"]


@pytest.fixture(scope="module")
def tables():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        one = run_table(5, workers=1, seed=0)
        two = run_table(5, workers=2, seed=0)
    return one, two


def test_c1_table_reproduction(tables):
    rep = tables[0]
    rows = rep.results
    verdicts = {r["family"]: r["verdict"] for r in rows}
    nontrivial = sorted(f for f, v in verdicts.items() if v == "Nontrivial")
    ok = (nontrivial == ["phi18"]
          and all(v == "Trivial" for f, v in verdicts.items() if f != "phi18")
          and all(r["match"] for r in rows)
          and rep.timings["elapsed_s"] < 1800)
    record(1, ok, f"p=5, {len(rows)} families, nontrivial={nontrivial}, "
                  f"{rep.timings['elapsed_s']:.1f}s")
    assert ok
    phi18 = next(r for r in rows if r["family"] == "phi18")
    assert phi18["b0"] == [5]


def test_c2_p7_spot_check():
    t0 = time.perf_counter()
    expected = {"phi13": "Trivial", "phi19": "Trivial", "phi22": "Trivial",
                "phi35": "Trivial", "phi18": "Nontrivial"}
    rows = {f: _table_row((f, 7, None)) for f in expected}
    elapsed = time.perf_counter() - t0
    got = {f: r["verdict"] for f, r in rows.items()}
    ok = got == expected and elapsed < 7200
    record(2, ok, f"p=7 {got}, {elapsed:.1f}s")
    assert ok


def test_c2_budget_reported_explicitly():
    row = _table_row(("phi18", 7, 1000))
    assert row["verdict"] == "Inconclusive"
    assert "exceeds budget" in row["error"]


def test_c3_oracle_equivalence():
    corpus = oracle_corpus()
    assert len(corpus) >= 10
    bad = []
    for G in corpus:
        assert G.order <= 81
        res = bogomolov_multiplier(G)
        if schur_multiplier(G) != h2_oracle(G, "SchurMultiplier"):
            bad.append(f"{G.name}: M")
        if res.b0 != h2_oracle(G, "Bogomolov"):
            bad.append(f"{G.name}: B0")
        if not res.b0.is_trivial:
            bad.append(f"{G.name}: B0 nonzero")
    record(3, not bad, f"{len(corpus)} groups of order <= 81" + (f", mismatches {bad}" if bad else ""))
    assert not bad


def test_c4_hk_cohomology_shape():
    # the parts of the certificate that hold for the printed N
    for p in (5, 7):
        cert = hk_certificate(family_presentation("phi18", p), PAPER_NORMAL)
        assert cert.fixed.order == p
        assert cert.h2_quotient.invariants == (p, p)
        assert cert.obstruction == "Obstructed"


@pytest.mark.xfail(strict=True, reason="bicyclic condition fails for N = <a3, b, g>; see decisions ledger")
def test_c4_hk_certificate_paper_normal_subgroup():
    details = []
    ok = True
    for p in (5, 7):
        cert = hk_certificate(family_presentation("phi18", p), PAPER_NORMAL)
        ok &= (cert.fixed.order == p and cert.h2_quotient.invariants == (p, p)
               and cert.bicyclic and cert.verdict == "Nontrivial")
        details.append(f"p={p}: |H1(N)^G|={cert.fixed.order}, H2={cert.h2_quotient}, "
                       f"bicyclic={cert.bicyclic}, {cert.verdict}")
    direct = bogomolov_multiplier(family_presentation("phi18", 5)).verdict
    ok &= direct == "Nontrivial"
    record(4, ok, "N=<a3,b,g> " + "; ".join(details) + f"; direct B0 at p=5 {direct}")
    assert ok


def test_c4_hk_certificate_alternative_normal_subgroup():
    for p in (5, 7):
        G = family_presentation("phi18", p)
        cert = hk_certificate(G, ALT_NORMAL)
        assert cert.verdict == "Nontrivial"
        assert cert.bicyclic
        assert cert.verdict == bogomolov_multiplier(G).verdict


LAW_GROUPS = {"L2.1.1": "phi18", "L2.1.4": "phi18", "L2.1.7": "phi18", "L2.2": "phi18", "L2.3": "phi35"}


def test_c5_identity_suites():
    failures = {}
    for law, fid in LAW_GROUPS.items():
        rep = verify_identities(family_presentation(fid, 5), law, samples=1000, seed=2024)
        assert rep.refused is None, rep.refused
        failures[law] = len(rep.failures)
    ok = not any(failures.values())
    record(5, ok, f"1000 samples each, failures {failures}")
    assert ok


def test_c6_product_property():
    bad = []
    for a, b in PRODUCT_PAIRS:
        G, H = small_group(a), small_group(b)
        P = direct_product(G, H)
        assert P.order <= 3 ** 5
        kunneth = (schur_multiplier(G).direct_sum(schur_multiplier(H))
                   .direct_sum(abelian_invariants(G).tensor(abelian_invariants(H))))
        if schur_multiplier(P) != kunneth:
            bad.append(f"{a}x{b}: M")
        b0 = bogomolov_multiplier(G).b0.direct_sum(bogomolov_multiplier(H).b0)
        if bogomolov_multiplier(P).b0 != b0:
            bad.append(f"{a}x{b}: B0")
    record(6, not bad, f"{len(PRODUCT_PAIRS)} pairs" + (f", failures {bad}" if bad else ""))
    assert not bad


def test_c7_noether_skeleton():
    problems = []
    stages = perturbed = 0
    for p in (5, 7):
        for name in SCRIPT_NAMES:
            script = shipped_script(name, p)
            rep = verify_script(script)
            if not rep.ok:
                problems.append(f"{name}@{p}: {rep.first_violation}")
            stages += len(rep.stages)
            for st in script.stages:
                bad, what = perturb(script, st.name, random.Random(7))
                prep = verify_script(bad)
                perturbed += 1
                if prep.ok or not prep.first_violation:
                    problems.append(f"perturbation not caught: {what}")
    step1 = shipped_script("phi15_step1", 7)
    assert any(c["kind"] == "Faithful" for s in step1.stages for c in s.claims)
    ok = not problems
    record(7, ok, f"{stages} stages verified at p=5,7; {perturbed}/{perturbed} perturbations caught"
                  + (f"; problems {problems}" if problems else ""))
    assert ok


def test_c8_determinism(tables):
    one, two = tables
    same = one.to_json(timings=False) == two.to_json(timings=False)
    record(8, same, "workers=1 vs workers=2, JSON without timing fields "
                    + ("byte-identical" if same else "differs"))
    assert same


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
