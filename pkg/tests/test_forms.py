import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from trisect import zlinalg as Z
from trisect.checks import relabel
from trisect.fixtures import load_fixture
from trisect.forms import (FormError, congruence_diagonalize, h1h3_form, h1h3_twisted, is_hermitian,
                           signature, wall_form, wall_form_twisted)
from trisect.homology import homology_z
from trisect.ring import Frac, LaurentPoly, parse_poly
from trisect.surface import build_surface_model, j_pairing

PERM_SIGN = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (1, 0, 2): -1, (2, 1, 0): -1}


def P(*s):
    return [parse_poly(x, 2) for x in s]


def test_congruence_diagonalize():
    assert signature([[0, 1], [1, 0]]) == 0
    assert signature([[2, 1], [1, 2]]) == 2
    assert signature([[0, 0], [0, 0]]) == 0
    assert congruence_diagonalize([[0, 2], [2, 0]]) == [Fraction(4), Fraction(-1)]


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6), st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_signature_is_a_congruence_invariant(entries, p):
    a, b, c, d, e, f = entries
    M = [[a, b, c], [b, d, e], [c, e, f]]
    Pm = [p[0:3], p[3:6], p[6:9]]
    if Z.det_z(Pm) == 0:
        return
    PT = [list(r) for r in zip(*Pm)]
    N = Z.matmul(Z.matmul(PT, M), Pm)
    assert signature(N) == signature(M)


def test_cp2():
    f = wall_form(load_fixture("cp2"))
    assert f.matrix == [[1]]
    assert (f.signature, f.parity, f.unimodular) == (1, "odd", True)


def test_s2s2_is_hyperbolic():
    f = wall_form(load_fixture("s2s2"))
    assert f.matrix == [[0, 1], [1, 0]]
    assert (f.signature, f.parity, f.unimodular) == (0, "even", True)


def test_trivial_cases():
    assert wall_form(load_fixture("s4")).matrix == []
    assert wall_form(load_fixture("s1xs3")).matrix == []
    assert h1h3_form(load_fixture("s1xs3")).matrix == [[-1]]


def test_example_untwisted(ex9):
    f = wall_form(ex9)
    # generator x3 + y3: c = -x3 and <-x3, x3 + y3> = -1 in the standard symplectic form
    assert f.matrix == [[-1]]
    assert f.unimodular and f.parity == "odd"
    g = h1h3_form(ex9)
    assert abs(Z.det_z(g.matrix)) == 1


def test_example_h1h3_on_stated_generators(ex9):
    m = build_surface_model(ex9.genus, ex9.relator)
    h1 = [[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]]
    h3 = [[1, -1, 0, 0, 0, 0], [0, 0, 0, 1, 1, 0]]
    assert [[j_pairing(m, u, v) for v in h3] for u in h1] == [[0, 1], [-1, 0]]


@pytest.mark.parametrize("name", ["cp2", "s2s2", "paper-sec9"])
def test_permutation_sign(name):
    d = load_fixture(name)
    base = wall_form(d)
    for p, s in PERM_SIGN.items():
        f = wall_form(d.permuted(p))
        assert f.signature == s * base.signature
        assert Z.det_z(f.matrix) == s ** len(base.matrix) * Z.det_z(base.matrix)


@pytest.mark.parametrize("seed", range(3))
def test_wall_form_under_relabeling(seed):
    d = load_fixture("s2s2")
    d2 = relabel(d, random.Random(seed))
    f = wall_form(d2)
    assert abs(Z.det_z(f.matrix)) == 1 and f.parity == "even" and f.signature == 0


def test_wall_form_kernel_shift(ex9):
    # the value only depends on the class of a
    hz = homology_z(ex9)
    m = build_surface_model(ex9.genus, ex9.relator)
    a = hz.degrees[2].generators[0]
    b, c = hz.degrees[2].decompositions[0]
    n = 6
    Lb, Lc = ex9.classes("beta"), ex9.classes("gamma")
    for k in Z.lattice_intersect(Z.from_columns(Lb, n), Z.from_columns(Lc, n), n):
        c2 = [x + y for x, y in zip(c, k)]
        b2 = [x - y for x, y in zip(b, k)]
        assert [p + q + r for p, q, r in zip(a, b2, c2)] == [0] * n
        assert j_pairing(m, c2, a) == j_pairing(m, c, a)


def test_example_twisted(ex9, ex9_twisted):
    h2 = P("0", "0", "1", "0", "0", "1")
    f = wall_form_twisted(ex9, tw=ex9_twisted, basis=[h2])
    assert f.matrix == [[Frac(LaurentPoly.const(-1, 2))]]
    assert is_hermitian(f.matrix)
    h1 = P("1 - t2", "0", "0", "t1 - 1", "0", "0")
    h3 = P("1", "-1", "0", "0", "0", "0")
    g = h1h3_twisted(ex9, tw=ex9_twisted, h1=[h1], h3=[h3])
    assert g.matrix == [[Frac(parse_poly("t1^-1 - 1", 2))]]


def test_twisted_default_bases(ex9, ex9_twisted):
    f = wall_form_twisted(ex9, tw=ex9_twisted)
    assert f.nondegenerate and len(f.matrix) == 1
    g = h1h3_twisted(ex9, tw=ex9_twisted)
    assert g.nondegenerate


def test_twisted_form_is_well_defined_on_classes(ex9, ex9_setup, ex9_twisted):
    # shifting a by an element of L_a meet L_b leaves the value unchanged
    from trisect.flinalg import sub_intersect
    S = ex9_setup
    h2 = P("0", "0", "1", "0", "0", "1")
    base = wall_form_twisted(ex9, tw=ex9_twisted, basis=[h2]).matrix[0][0]
    ab = sub_intersect(S.P["alpha"], S.P["beta"])
    for v in ab.basis[:2]:
        shifted = [x + parse_poly("t1 - 2", 2) * y for x, y in zip(h2, v)]
        val = wall_form_twisted(ex9, tw=ex9_twisted, basis=[shifted]).matrix[0][0]
        assert val == base


def test_degenerate_pairing_raises(ex9, ex9_twisted):
    r = ex9_twisted.r
    with pytest.raises(FormError):
        h1h3_twisted(ex9, tw=ex9_twisted, h1=[r], h3=[P("1", "-1", "0", "0", "0", "0")])
