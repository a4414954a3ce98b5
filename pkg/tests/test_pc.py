import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import small_group
from b0kit.catalog import family_presentation, get_family, list_families
from b0kit.errors import InconsistentPresentation, PresentationError
from b0kit.pc.elements import (check_consistency, collect, commutator, conjugate, element,
                               element_order, generator, identity, inverse, is_consistent,
                               multiply, power)
from b0kit.pc.presentation import ExprContext, eval_exponent, is_prime, parse_presentation
from b0kit.pc.structure import (abelian_invariants, class_structure, direct_product,
                                lower_central_series, nilpotency_class, quick_vanish_check,
                                quotient, quotient_map)
from b0kit.pc.tables import element_table
from b0kit.abelian import AbelianStructure

G18 = family_presentation("phi18", 5)


def elements_of(pres):
    return st.tuples(*[st.integers(0, r - 1) for r in pres.relative_orders]).map(
        lambda e: element(pres, e))


@settings(max_examples=200, deadline=None)
@given(elements_of(G18), elements_of(G18), elements_of(G18))
def test_collection_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=200, deadline=None)
@given(elements_of(G18), elements_of(G18))
def test_inverse_power_and_commutator(x, y):
    assert (x * inverse(x)).is_identity()
    assert (inverse(x) * x).is_identity()
    assert power(x, element_order(x)).is_identity()
    assert power(x, -2) == inverse(x * x)
    assert commutator(x, y) == inverse(x) * inverse(y) * x * y
    assert conjugate(x, y) == inverse(y) * x * y
    assert x * y == y * x * commutator(x, y)


def test_relations_hold_in_normal_form():
    a, a1, b = generator(G18, "a"), generator(G18, "a1"), generator(G18, "b")
    assert commutator(a1, a) == generator(G18, "a2")
    assert commutator(generator(G18, "a2"), a) == generator(G18, "a3")
    assert commutator(a1, b) == generator(G18, "a3")
    assert commutator(a, b) == generator(G18, "g")
    assert power(a, 5).is_identity()


def test_collect_word():
    G = small_group("Heis27")
    w = collect(G, [("b", 1), ("a", 1)])
    assert w.exponents == (1, 1, 1)
    assert collect(G, [(1, -1), (0, -1), (1, 1), (0, 1)]) == commutator(generator(G, "b"), generator(G, "a"))
    assert identity(G).is_identity()


def test_mixing_groups_is_refused():
    with pytest.raises(Exception):
        multiply(identity(G18), identity(small_group("C3")))


@pytest.mark.parametrize("name,order,exponent,classes", [
    ("Heis27", 27, 3, 11),
    ("Ext27_9", 27, 9, 11),
    ("C3wrC3", 81, 9, 17),
    ("C81", 81, 81, 81),
    ("C3^3", 27, 3, 27),
])
def test_small_group_invariants(name, order, exponent, classes):
    G = small_group(name)
    assert G.order == order
    t = element_table(G)
    assert int(t.element_orders().max()) == exponent
    reps, sizes, _ = t.classes()
    assert len(reps) == classes
    assert int(sizes.sum()) == order
    assert all(order % int(s) == 0 for s in sizes)


def test_class_structure_centralizers():
    G = small_group("Heis27")
    cs = class_structure(G)
    for x in (element(G, (1, 0, 0)), element(G, (0, 0, 1))):
        cent = cs.centralizer(x)
        assert cs.centralizer_order(x) == len(cent)
        assert all(multiply(x, y) == multiply(y, x) for y in cent)
    assert cs.centralizer_order(element(G, (0, 0, 1))) == 27
    assert cs.centralizer_order(element(G, (1, 0, 0))) == 9


@pytest.mark.parametrize("entry", list_families(include_untranscribed=False), ids=lambda e: e.family_id)
def test_catalog_nilpotency_class_matches_table(entry):
    G = family_presentation(entry.family_id, 5)
    assert G.order == 5 ** 6
    assert nilpotency_class(G) == entry.nilpotency_class


def test_lower_central_series_and_abelianization():
    G = small_group("C3wrC3")
    sizes = [int(m.sum()) for m in lower_central_series(G)]
    assert sizes == [81, 9, 3, 1]
    assert abelian_invariants(G) == AbelianStructure((3, 3))
    assert abelian_invariants(small_group("C9xC3")) == AbelianStructure((3, 9))


def test_quotient_by_center():
    G = small_group("Heis27")
    Q = quotient(G, [generator(G, "c")])
    assert Q.order == 9 and nilpotency_class(Q) == 1
    qm = quotient_map(G, [generator(G, "c")])
    x, y = generator(G, "a"), generator(G, "b")
    assert qm.project(multiply(x, y)) == multiply(qm.project(x), qm.project(y))
    assert qm.project(commutator(x, y)).is_identity()


def test_direct_product():
    P = direct_product(small_group("Heis27"), small_group("C9"))
    assert P.order == 27 * 9
    assert is_consistent(P)
    assert nilpotency_class(P) == 2
    assert abelian_invariants(P) == AbelianStructure((3, 3, 9))


def test_to_dsl_round_trip():
    for G in (G18, family_presentation("phi42_222", 7), small_group("Ext27_9")):
        H = parse_presentation(G.to_dsl())
        assert H.relative_orders == G.relative_orders
        assert H.power_words == G.power_words
        assert H.conjugate_words == G.conjugate_words


# ----------------------------------------------------------------------------
# DSL

def test_dsl_parameters_and_expressions():
    src = "group T prime p\nparam k=2\ngens a, b, c\npow a^p = c^k\ncomm [b, a] = c^(k+1)"
    G = parse_presentation(src, p=5)
    assert G.power_words[0] == (0, 0, 2)
    assert G.conjugate(1, 0) == (0, 1, 3)
    H = parse_presentation(src, p=5, params={"k": 4})
    assert H.power_words[0] == (0, 0, 4)
    ctx = ExprContext(7)
    assert eval_exponent("C(p,3)", ctx) == 35
    assert eval_exponent("-inv2", ctx) == -4
    assert eval_exponent("theta", ctx) == 3
    assert eval_exponent("v", ctx) == 3
    assert eval_exponent("2^3 % 5", ctx) == 3


@pytest.mark.parametrize("src,line,fragment", [
    ("group X prime 3\ngens a, b\npow c^3 = b", 3, "undeclared"),
    ("group X prime 3\ngens a, a", 2, "duplicate"),
    ("group X prime 3\ngens a, b\npow b^3 = a", 3, "not later"),
    ("group X prime 3\ngens a, b\npow a^4 = b", 3, "not a power"),
    ("group X prime 3\ngens a, b\nfoo bar", 3, "unrecognized"),
    ("group X prime 3\ngens a, b\ncomm [b, a] = a", 3, "tail generator"),
    ("group X prime 3\ngens a, b\npow a^3 = b^q", 3, "unknown symbol"),
])
def test_dsl_errors_carry_line_numbers(src, line, fragment):
    with pytest.raises(PresentationError) as err:
        parse_presentation(src)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_dsl_needs_a_prime():
    with pytest.raises(PresentationError):
        parse_presentation("group X prime p\ngens a")
    with pytest.raises(PresentationError):
        parse_presentation("group X prime 4\ngens a")
    assert parse_presentation("group X prime p\ngens a", p=3).order == 3


def test_inconsistency_is_detected():
    # b = a^3 commutes with a, yet b^a = b c
    bad = parse_presentation("group Bad prime 3\ngens a, b, c\npow a^3 = b\ncomm [b, a] = c")
    assert check_consistency(bad)
    assert not is_consistent(bad)
    with pytest.raises(InconsistentPresentation), pytest.warns(UserWarning, match="p > 3"):
        family_presentation("phi37", 3)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_quick_vanish_check():
    assert quick_vanish_check(family_presentation("phi2_51", 5)) == "Vanishes"
    assert quick_vanish_check(G18) == "NotApplicable"
    assert quick_vanish_check(small_group("Heis27")) == "NotApplicable"


def test_element_table_indexing():
    t = element_table(G18)
    assert t.size == 5 ** 6
    rng = np.random.default_rng(0)
    for _ in range(50):
        i, j = (int(x) for x in rng.integers(0, t.size, 2))
        assert t.element(t.mul(i, j)) == multiply(t.element(i), t.element(j))
    assert int(t.center_mask().sum()) == 25
