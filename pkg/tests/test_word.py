import pytest
from hypothesis import given, strategies as st

from trisect.ring import LaurentPoly, parse_poly
from trisect.word import (PhiMap, Word, WordError, abelianize, default_relator, fox_lift, gen_index,
                          gen_name, parse_word)

G = 3
PHI = PhiMap.from_dict(G, 2, {"x1": [1, 0], "y1": [0, 1], "x2": [1, 0], "y2": [0, -1]})

letters = st.tuples(st.sampled_from("xy"), st.integers(1, G), st.sampled_from((1, -1)))
words = st.lists(letters, max_size=8).map(lambda ls: Word(tuple(ls)))


def test_parse_and_print():
    w = parse_word("x1 Y2 y3", G)
    assert w.letters == (("x", 1, 1), ("y", 2, -1), ("y", 3, 1))
    assert str(w) == "x1 Y2 y3"
    assert str(w.inverse()) == "Y3 y2 X1"
    assert parse_word("", G) == Word()
    for bad in ("z1", "x4", "x0", "x"):
        with pytest.raises(WordError):
            parse_word(bad, G)


def test_generator_order():
    assert [gen_name(k, G) for k in range(2 * G)] == ["x1", "x2", "x3", "y1", "y2", "y3"]
    assert gen_index("y", 2, G) == 4


def test_default_relator():
    assert str(default_relator(2)) == "x1 y1 X1 Y1 x2 y2 X2 Y2"
    assert abelianize(default_relator(2), 2) == [0, 0, 0, 0]


def test_free_reduction():
    w = parse_word("x1 y2 Y2 X1 x3", G)
    assert w.reduced() == parse_word("x3", G)


def test_phi_values():
    assert PHI(parse_word("x1 y2", G)) == LaurentPoly.monomial((1, -1))
    assert PHI(parse_word("x3 y3", G)) == 1
    assert PHI.to_dict()["y2"] == [0, -1]
    assert not PHI.is_trivial()
    assert PhiMap.trivial(G, 2).is_trivial()
    with pytest.raises(WordError):
        PhiMap.from_dict(G, 2, {"x7": [1, 0]})


def test_fox_single_letters():
    t1 = LaurentPoly.var(0, 2)
    v = fox_lift(parse_word("X1", G), PHI)
    assert v[0] == -(t1 ** -1)
    assert all(x.is_zero() for x in v[1:])


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


@given(words, words)
def test_fox_product_rule(u, v):
    lhs = fox_lift(u * v, PHI)
    rhs = _add(fox_lift(u, PHI), [PHI(u) * x for x in fox_lift(v, PHI)])
    assert lhs == rhs


@given(words)
def test_fox_inverse_rule(w):
    assert fox_lift(w.inverse(), PHI) == [-(PHI(w) ** -1) * x for x in fox_lift(w, PHI)]


@given(words)
def test_fox_reduction_invariance(w):
    assert fox_lift(w.reduced(), PHI) == fox_lift(w, PHI)


@given(words)
def test_fox_augments_to_abelianization(w):
    assert [x.augment() for x in fox_lift(w, PHI)] == abelianize(w, G)


@given(words)
def test_fox_boundary(w):
    # sum_k (phi(g_k) - 1) * lift_k = phi(w) - 1
    v = fox_lift(w, PHI)
    tot = LaurentPoly.zero(2)
    for k, x in enumerate(v):
        tot = tot + (PHI.of_gen(k) - 1) * x
    assert tot == PHI(w) - 1


def _vec(strs):
    return [parse_poly(s, 2) for s in strs]


def test_worked_example_lifts(ex9):
    # lifted curve classes of the genus-3 example, all based at one lift of the base point
    phi = ex9.phi
    a1 = fox_lift(ex9.alpha[0], phi)
    assert a1 == _vec(["t1^-1", "-t1^-1", "t1^-1", "t1^-1*t2^-1", "t1^-1", "t1^-1"])
    assert fox_lift(ex9.beta[0], phi) == _vec(["-t1^-1*t2^-1", "t1^-1*t2^-1", "0", "0", "0", "1"])
    assert fox_lift(ex9.gamma[2], phi) == _vec(["t1^-1 - t1^-1*t2^-1", "-t1^-1 + t1^-1*t2^-1", "1", "0", "0", "0"])
    r = fox_lift(ex9.relator, phi)
    assert r == _vec(["1 - t2", "t2 - 1", "0", "t1 - 1", "t1*t2 - t2", "0"])
