import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import catalog_quotient, small_group
from b0kit.abelian import AbelianStructure, hnf_contains
from b0kit.catalog import family_presentation
from b0kit.errors import BudgetExceeded, InconsistentPresentation, PreconditionError
from b0kit.multiplier import (OracleMode, bogomolov_multiplier, build_cover, h2_oracle,
                              lifted_commutator, schur_multiplier)
from b0kit.multiplier.cover import cover_element_commutator
from b0kit.pc.elements import conjugate, element, multiply
from b0kit.pc.presentation import parse_presentation
from b0kit.pc.tables import element_table

C = AbelianStructure

# Schur multipliers from the standard tables for groups of order dividing 81
KNOWN_M = {
    "C3": C(()), "C9": C(()), "C81": C(()), "C3xC3": C((3,)), "C9xC3": C((3,)),
    "C3^3": C((3, 3, 3)), "C3^4": C((3,) * 6), "C9xC9": C((9,)), "Heis27": C((3, 3)),
    "Ext27_9": C(()), "Heis27xC3": C((3,) * 4), "C5xC5": C((5,)), "C25": C(()), "C7": C(()),
}


@pytest.mark.parametrize("name", sorted(KNOWN_M))
def test_schur_multiplier_known_values(name):
    assert schur_multiplier(small_group(name)) == KNOWN_M[name]


@pytest.mark.parametrize("name", ["C3", "C9", "C3xC3", "C9xC3", "C3^3", "Heis27", "Ext27_9", "C5xC5", "C25"])
def test_cover_agrees_with_cocycle_oracle(name):
    G = small_group(name)
    assert schur_multiplier(G) == h2_oracle(G, OracleMode.SCHUR)
    assert bogomolov_multiplier(G).b0 == h2_oracle(G, OracleMode.BOGOMOLOV)


def test_oracle_on_catalog_quotient():
    Q = catalog_quotient("phi25_222")
    assert Q.order == 81
    assert schur_multiplier(Q) == h2_oracle(Q)
    assert h2_oracle(Q, "Bogomolov").is_trivial


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        h2_oracle(family_presentation("phi18", 5))


@pytest.mark.parametrize("name", ["C3^3", "C9xC9", "C5xC5"])
def test_abelian_groups_have_m0_equal_m(name):
    res = bogomolov_multiplier(small_group(name))
    assert res.m0 == res.m
    assert res.b0.is_trivial


def test_tails_quotient_free_rank_is_generator_count():
    for G in (small_group("Heis27"), family_presentation("phi18", 5), family_presentation("phi2_51", 5)):
        cover = build_cover(G)
        assert cover.structure.free_rank == G.n
        assert cover.ntails == G.n + G.n * (G.n - 1) // 2


def test_phi18_result_fields():
    res = bogomolov_multiplier(family_presentation("phi18", 5))
    assert res.b0 == C((5,))
    assert (res.m0.order or 1) * 5 == res.m.order
    assert not res.early_exit
    assert res.pairs_examined > 0 and res.classes > 0
    assert res.generator_log and {"x", "y", "tail"} <= set(res.generator_log[0])
    assert set(res.timings) == {"cover_ms", "classes_ms", "m0_ms"}


def test_trivial_multiplier_exits_early():
    res = bogomolov_multiplier(small_group("C81"))
    assert res.early_exit and res.pairs_examined == 0


def test_inconsistent_presentation_is_rejected():
    bad = parse_presentation("group Bad prime 3\ngens a, b, c\npow a^3 = b\ncomm [b, a] = c")
    with pytest.raises(InconsistentPresentation):
        build_cover(bad)


def test_lifted_commutator_needs_commuting_pair():
    G = small_group("Heis27")
    cover = build_cover(G)
    with pytest.raises(PreconditionError):
        lifted_commutator(cover, element(G, (1, 0, 0)), element(G, (0, 1, 0)))


# ----------------------------------------------------------------------------
# properties of lifted commutators on phi18 at p = 5

G18 = family_presentation("phi18", 5)
T18 = element_table(G18)
COVER18 = build_cover(G18)
REPS18 = [int(r) for r in T18.classes()[0] if r]


def _same_class(u, v):
    diff = [a - b for a, b in zip(u, v)]
    return hnf_contains(COVER18.relations, diff)


@st.composite
def commuting_pairs(draw):
    x = draw(st.sampled_from(REPS18))
    cent = T18.centralizer_mask(x).nonzero()[0]
    return x, int(cent[draw(st.integers(0, len(cent) - 1))])


group_elems = st.integers(0, T18.size - 1)
tails = st.lists(st.integers(-3, 3), min_size=COVER18.ntails, max_size=COVER18.ntails)


@settings(max_examples=60, deadline=None)
@given(commuting_pairs(), group_elems)
def test_lifted_commutator_is_conjugation_invariant(pair, g):
    x, y = (T18.element(i) for i in pair)
    g = T18.element(g)
    base = lifted_commutator(COVER18, x, y)
    moved = lifted_commutator(COVER18, conjugate(x, g), conjugate(y, g))
    assert _same_class(base, moved)


@settings(max_examples=60, deadline=None)
@given(commuting_pairs(), tails, tails)
def test_lifted_commutator_ignores_choice_of_lift(pair, tx, ty):
    x, y = (T18.element(i).exponents for i in pair)
    exps, t = cover_element_commutator(COVER18, list(x), tx, list(y), ty)
    assert not any(exps)
    assert _same_class(t, lifted_commutator(COVER18, x, y))


@settings(max_examples=60, deadline=None)
@given(commuting_pairs(), st.integers(1, 4))
def test_lifted_commutator_is_multiplicative_in_centralizer(pair, k):
    # y -> [x~, y~] is a homomorphism on C(x)
    x, y = (T18.element(i) for i in pair)
    yk = element(G18, (0,) * G18.n)
    for _ in range(k):
        yk = multiply(yk, y)
    lhs = lifted_commutator(COVER18, x, yk)
    rhs = [k * v for v in lifted_commutator(COVER18, x, y)]
    assert _same_class(lhs, rhs)
