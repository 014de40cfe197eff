"""Acceptance criteria 1-7, one test each.

Every test records a single pass/fail line (printed in the terminal summary)
before asserting, and must finish in under five seconds.
"""
import json
import random
import time
from itertools import product

import pytest

from trisect import zlinalg as Z
from trisect.checks import CHECKS, run_all
from trisect.fixtures import fixture_text, load_fixture
from trisect.flinalg import Subspace, sub_intersect, sub_member, sub_sum
from trisect.forms import h1h3_twisted, wall_form, wall_form_twisted
from trisect.homology import homology_twisted, homology_z, twisted_setup
from trisect.ring import Frac, LaurentPoly, frac_units_equal, parse_poly
from trisect.surface import build_surface_model, j_pairing
from trisect.torsion import PM_MONOMIAL, parse_basis, torsion_X

from conftest import ACCEPTANCE

LIMIT = 5.0
N = 6  # 2g for the genus-3 example


def P(*s):
    return [parse_poly(x, 2) for x in s]


def e(i):
    return [int(i == j) for j in range(N)]


X1, X2, X3, Y1, Y2, Y3 = (e(i) for i in range(N))


def add(*vs):
    return [sum(x) for x in zip(*vs)]


def neg(v):
    return [-x for x in v]


def record(k, checks: dict, t0):
    dt = time.perf_counter() - t0
    checks = dict(checks)
    checks[f"under {LIMIT:.0f}s ({dt:.2f}s)"] = dt < LIMIT
    bad = [name for name, ok in checks.items() if not ok]
    msg = "all sub-checks hold" if not bad else "failing: " + "; ".join(bad)
    ACCEPTANCE[k] = (not bad, msg)
    assert not bad, msg


def lattice(cols):
    return Z.from_columns(cols, N)


def test_criterion_1_integral_homology():
    t0 = time.perf_counter()
    d = load_fixture("paper-sec9")
    rep = homology_z(d)
    La, Lb, Lc = (d.classes(s) for s in ("alpha", "beta", "gamma"))
    total = La + Lb + Lc
    c = {}
    c["H1 = Z^2"] = rep.degrees[1].rank == 2 and not rep.degrees[1].torsion
    c["H2 = Z"] = rep.degrees[2].rank == 1 and not rep.degrees[2].torsion
    c["H3 = Z^2"] = rep.degrees[3].rank == 2 and not rep.degrees[3].torsion
    # H1 generated by x1, y1: they span H1(Sigma) modulo the curves, and so do ours
    ident = [e(i) for i in range(N)]
    c["H1 generators x1, y1"] = (Z.lattices_equal(total + [X1, Y1], ident, N)
                                 and Z.lattices_equal(total + rep.degrees[1].generators, total + [X1, Y1], N))
    # H2 generated by x3 + y3 modulo (L_a meet L_b) + (L_a meet L_c)
    top = Z.lattice_intersect(lattice(La), lattice(Z.lattice_sum(lattice(Lb), lattice(Lc), N)), N)
    bottom = Z.lattice_intersect(lattice(La), lattice(Lb), N) + Z.lattice_intersect(lattice(La), lattice(Lc), N)
    a = add(X3, Y3)
    c["H2 generator x3 + y3"] = (Z.in_lattice(lattice(top), a, N)
                                 and Z.lattices_equal(bottom + [a], top, N)
                                 and Z.lattices_equal(bottom + rep.degrees[2].generators, top, N))
    # H3 = L_a meet L_b meet L_c spanned by x1 - x2, y1 + y2
    c["H3 generators x1 - x2, y1 + y2"] = Z.lattices_equal(rep.degrees[3].generators,
                                                          [add(X1, neg(X2)), add(Y1, Y2)], N)
    record(1, c, t0)


def test_criterion_2_twisted_homology():
    t0 = time.perf_counter()
    d = load_fixture("paper-sec9")
    S = twisted_setup(d)
    tw = homology_twisted(d, setup=S)
    c = {"dims (1, 1, 1)": tw.dims() == (1, 1, 1)}
    c["relator class exact"] = S.r == P("1 - t2", "t2 - 1", "0", "t1 - 1", "t1*t2 - t2", "0")
    Pa, Pb, Pc = S.P["alpha"], S.P["beta"], S.P["gamma"]
    span = lambda *vs: Subspace(N, 2, vs)
    spaces = {
        1: (S.Zs, sub_sum(sub_sum(Pa, Pb), Pc)),
        2: (sub_intersect(Pa, sub_sum(Pb, Pc)), sub_sum(sub_intersect(Pa, Pb), sub_intersect(Pa, Pc))),
        3: (sub_intersect(sub_intersect(Pa, Pb), Pc), S.R),
    }
    stated = {
        1: P("1 - t2", "0", "0", "t1 - 1", "0", "0"),
        2: P("0", "0", "1", "0", "0", "1"),
        3: P("1", "-1", "0", "0", "0", "0"),
    }
    for k, (top, bottom) in spaces.items():
        v = stated[k]
        ours = tw.bases[k][0]
        ok = top.contains(v) and not sub_member(bottom, v)
        # one-dimensional quotients: the two representatives give the same line
        ok = ok and sub_member(sub_sum(bottom, span(v)), ours) and sub_member(sub_sum(bottom, span(ours)), v)
        c[f"H{k} representative agrees in the subquotient"] = ok
    record(2, c, t0)


def test_criterion_3_forms():
    t0 = time.perf_counter()
    d = load_fixture("paper-sec9")
    c = {}
    w = wall_form(d)
    c[f"untwisted H2 matrix (1) (computed {w.matrix})"] = w.matrix == [[1]]
    # H1 x H3 on the stated generators, after checking they are generators
    rep = homology_z(d)
    total = sum((d.classes(s) for s in ("alpha", "beta", "gamma")), [])
    h1 = [X1, Y1]
    h3 = [add(X1, neg(X2)), add(Y1, Y2)]
    gens_ok = (Z.lattices_equal(total + h1, total + rep.degrees[1].generators, N)
               and Z.lattices_equal(h3, rep.degrees[3].generators, N))
    m = build_surface_model(d.genus, d.relator)
    M13 = [[j_pairing(m, u, v) for v in h3] for u in h1]
    c["H1 x H3 matrix [[0, 1], [-1, 0]]"] = gens_ok and M13 == [[0, 1], [-1, 0]]
    tw = homology_twisted(d)
    wt = wall_form_twisted(d, tw=tw, basis=[P("0", "0", "1", "0", "0", "1")])
    val = wt.matrix[0][0]
    c[f"twisted H2 value 1 (computed {val})"] = val == Frac(LaurentPoly.one(2))
    ht = h1h3_twisted(d, tw=tw, h1=[P("1 - t2", "0", "0", "t1 - 1", "0", "0")], h3=[P("1", "-1", "0", "0", "0", "0")])
    c["twisted H1 x H3 value t1^-1 - 1"] = ht.matrix == [[Frac(parse_poly("t1^-1 - 1", 2))]]
    record(3, c, t0)


def test_criterion_4_torsion():
    t0 = time.perf_counter()
    d = load_fixture("paper-sec9")
    h, u = parse_basis(json.loads(fixture_text("sec9-basis")), 3, 2)
    c = {"bases are h3 = x1 - x2, h2 = x3 + y3, h1 = (1 - t2) x1 + (t1 - 1) y1, u = x1":
         h == {3: [P("1", "-1", "0", "0", "0", "0")], 2: [P("0", "0", "1", "0", "0", "1")],
               1: [P("1 - t2", "0", "0", "t1 - 1", "0", "0")]} and str(u) == "x1"}
    rep = torsion_X(d, h=h, u=u)
    t1 = LaurentPoly.var(0, 2)
    c["tau canonicalizes to t1 - 1"] = str(rep.canonical()) == "t1 - 1"
    c["tau equals 1 - t1 up to a signed monomial"] = frac_units_equal(rep.tau, Frac(1 - t1))
    c["ambiguity pm-monomial"] = rep.ambiguity == PM_MONOMIAL
    record(4, c, t0)


def _congruent_to_hyperbolic(M) -> bool:
    H = [[0, 1], [1, 0]]
    for a, b, cc, dd in product(range(-2, 3), repeat=4):
        Pm = [[a, b], [cc, dd]]
        if abs(a * dd - b * cc) != 1:
            continue
        PT = [[a, cc], [b, dd]]
        if Z.matmul(Z.matmul(PT, M), Pm) == H:
            return True
    return False


def test_criterion_5_s2xs2():
    t0 = time.perf_counter()
    d = load_fixture("s2s2")
    rep = homology_z(d)
    c = {
        "H1 = 0": rep.degrees[1].rank == 0 and not rep.degrees[1].torsion,
        "H3 = 0": rep.degrees[3].rank == 0,
        "H2 = Z^2": rep.degrees[2].rank == 2 and not rep.degrees[2].torsion,
    }
    M = wall_form(d).matrix
    c["lambda congruent over Z to [[0, 1], [1, 0]]"] = len(M) == 2 and _congruent_to_hyperbolic(M)
    record(5, c, t0)


def test_criterion_6_acyclic():
    t0 = time.perf_counter()
    d = load_fixture("s1xs3")
    tw = homology_twisted(d)
    rep = torsion_X(d)
    c = {
        "twisted homology zero": tw.dims() == (0, 0, 0),
        "tau = 1 up to a signed monomial": frac_units_equal(rep.tau, Frac(LaurentPoly.one(1))),
    }
    record(6, c, t0)


def test_criterion_7_property_suites():
    t0 = time.perf_counter()
    results = run_all(seed=0, stop_on_failure=False)
    c = {name: ok for name, ok, _ in results}
    c["every suite ran"] = [r[0] for r in results] == [n for n, _ in CHECKS]
    record(7, c, t0)
