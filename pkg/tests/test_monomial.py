import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from b0kit.catalog import family_presentation
from b0kit.errors import PreconditionError
from b0kit.monomial import (MonomialMap, SCRIPT_NAMES, build_script, compose, faithfulness_check,
                            integer_left_kernel, invariant_sublattice, inverse, load_script, perturb,
                            shipped_primes, shipped_script, step1_table, verify_group_action,
                            verify_script)
from b0kit.monomial.builder import TableBuilder
from b0kit.pc.presentation import parse_presentation

N = 25


@st.composite
def unimodular_maps(draw, n=3):
    # products of elementary matrices and a signed permutation
    A = np.eye(n, dtype=np.int64)
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            E = np.eye(n, dtype=np.int64)
            E[i, j] = draw(st.integers(-2, 2))
            A = A @ E
    perm = draw(st.permutations(range(n)))
    signs = draw(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))
    A = A[list(perm)] * np.array(signs)[:, None]
    c = draw(st.lists(st.integers(0, N - 1), min_size=n, max_size=n))
    return MonomialMap.from_arrays(A, c, N)


exps = st.lists(st.integers(-4, 4), min_size=3, max_size=3)


@settings(max_examples=150, deadline=None)
@given(unimodular_maps(), unimodular_maps(), exps, st.integers(0, N - 1))
def test_compose_is_substitution(f, g, e, s):
    # (f o g) applies g, then substitutes f into the result
    s1, e1 = g.apply(e, s)
    assert compose(f, g).apply(e, s) == f.apply(e1, s1)
    assert (f @ g) == compose(f, g)


@settings(max_examples=100, deadline=None)
@given(unimodular_maps(), unimodular_maps(), unimodular_maps())
def test_compose_is_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@settings(max_examples=100, deadline=None)
@given(unimodular_maps(), st.integers(-4, 4))
def test_inverse_and_powers(f, k):
    ident = MonomialMap.identity(3, N)
    assert compose(f, inverse(f)) == ident
    assert compose(inverse(f), f) == ident
    assert compose(f ** k, f ** -k) == ident
    assert f ** (k + 1) == compose(f ** k, f)


def test_inverse_needs_unimodular_matrix():
    f = MonomialMap(((2, 0), (0, 1)), (0, 0), 5)
    with pytest.raises(PreconditionError):
        inverse(f)


def test_map_validation_and_description():
    with pytest.raises(ValueError):
        MonomialMap(((1, 0),), (0,), 5)
    f = MonomialMap(((0, 1), (-1, -1)), (2, 0), 5)
    assert f.describe(["u", "v"]) == "u -> z^2*v; v -> u^-1*v^-1"
    assert f.fixes((0, 0)) and not f.fixes((1, 0))
    assert MonomialMap(((1,),), (7,), 5).c == (2,)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_lemma36_cycle_has_order_p(p):
    t = TableBuilder([f"x{i}" for i in range(1, p)], ("b",), p)
    t.cycle("b", t.vars)
    b = t.map("b")
    assert (b ** p).is_identity()
    assert not any((b ** k).is_identity() for k in range(1, p))
    C = parse_presentation(f"group C prime {p}\ngens b")
    assert verify_group_action(C, {"b": b}).ok
    assert faithfulness_check(C, {"b": b}).faithful


def test_group_action_violation_is_named():
    C = parse_presentation("group C prime 5\ngens b")
    swap = MonomialMap(((0, 1), (1, 0)), (0, 0), 5)
    verdict = verify_group_action(C, {"b": swap})
    assert not verdict.ok and verdict.violation == "relation b^5 = 1 fails"
    with pytest.raises(PreconditionError):
        verify_group_action(parse_presentation("group C prime 5\ngens a, b"), {"b": swap})


@pytest.mark.parametrize("p", [5, 7])
def test_step1_faithfulness(p):
    G = family_presentation("phi15_21^4", p)
    full = step1_table(p)
    table = {g: full.map(g) for g in full.gens}
    assert verify_group_action(G, table).ok
    assert faithfulness_check(G, table).faithful
    x = step1_table(p, ("x",))
    vx = faithfulness_check(G, {g: x.map(g) for g in x.gens})
    assert not vx.faithful and vx.witness == "b1"
    y = step1_table(p, ("y",))
    vy = faithfulness_check(G, {g: y.map(g) for g in y.gens})
    assert not vy.faithful and vy.witness == f"b1*b2^{p - 1}"


def test_integer_left_kernel():
    B = np.array([[1, -1], [-1, 1], [0, 0]])
    K = integer_left_kernel(B)
    assert K == [[1, 1, 0], [0, 0, 1]]
    for k in K:
        assert not (np.array(k) @ B).any()


def test_invariant_sublattice_examples():
    swap = MonomialMap(((0, 1), (1, 0)), (0, 0), 5)
    assert invariant_sublattice([swap]) == [[1, 1]]
    scale = MonomialMap(((1, 0), (0, 1)), (1, 0), 5)
    assert invariant_sublattice([scale]) == [[5, 0], [0, 1]]
    # x0 -> zeta x1, x1 -> x0: x0 x1 picks up zeta, so (5, 5) generates
    both = MonomialMap(((0, 1), (1, 0)), (1, 0), 5)
    assert invariant_sublattice([both]) == [[5, 5]]
    for e in invariant_sublattice([swap, scale]):
        assert swap.fixes(e) and scale.fixes(e)


# ----------------------------------------------------------------------------
# scripts

def test_shipped_primes_and_names():
    for name in SCRIPT_NAMES:
        assert shipped_primes(name) == [5, 7]
    with pytest.raises(KeyError):
        shipped_script("nope", 5)


@pytest.mark.parametrize("name", ["lemma36", "cor37", "lemma38"])
def test_generic_scripts_at_larger_prime(name):
    rep = verify_script(load_script(build_script(name, 11)))
    assert rep.ok, rep.first_violation


def test_script_json_round_trip():
    s = shipped_script("phi15_step2", 5)
    again = load_script(s.dumps())
    assert again.to_dict() == s.to_dict()
    assert json.loads(s.dumps())["format"] == "b0kit-action-script"
    assert s.presentation().order == 5 ** 6


def test_literal_step2_table_fails_at_w():
    rep = verify_script(load_script(build_script("phi15_step2", 5, literal=True)))
    assert not rep.ok
    assert rep.first_violation == "w: group action: relation a3^a2 = a3 fails"
    corrected = shipped_script("phi15_step2", 5)
    assert corrected.stage("w").corrections


def test_literal_step3_table_fails_at_v():
    rep = verify_script(load_script(build_script("phi15_step3", 5, literal=True)))
    assert not rep.ok
    assert rep.first_violation.startswith("v: group action: relation a3^5 = 1 fails")


def test_perturbation_is_named():
    s = shipped_script("lemma36", 5)
    bad, what = perturb(s, "x", random.Random(1))
    assert what.startswith("x: exponent of")
    rep = verify_script(bad)
    assert rep.verdict == "Fail" and rep.first_violation.startswith("x: group action")
    # the original is untouched
    assert verify_script(s).ok


def test_report_dict():
    d = verify_script(shipped_script("cor37", 5)).to_dict()
    assert d["outcome"] == "Pass" and d["first_violation"] is None
    assert [st["stage"] for st in d["stages"]] == ["x", "z"]
    assert all(c["ok"] for st in d["stages"] for c in st["checks"])


def test_singular_table_is_a_named_violation():
    doc = build_script("lemma36", 5)
    # x1 -> x2^2 makes the exponent matrix singular
    doc["stages"][0]["generators"]["b"]["rows"]["x1"] = {"x2": 2}
    rep = verify_script(load_script(doc))
    assert not rep.ok
    assert rep.first_violation.startswith("x: ")
