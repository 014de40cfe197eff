import pytest
import sympy
from hypothesis import settings, strategies as st

from trisect.fixtures import load_fixture
from trisect.ring import LaurentPoly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

T = sympy.symbols("t1:4")


def to_sympy(p: LaurentPoly):
    return sum((c * sympy.Mul(*[T[i] ** k for i, k in enumerate(e)]) for e, c in p.terms.items()),
               sympy.Integer(0))


def from_sympy(expr, nvars: int) -> LaurentPoly:
    expr = sympy.expand(expr)
    if expr == 0:
        return LaurentPoly.zero(nvars)
    num, den = sympy.fraction(sympy.together(expr))
    # den is a monomial for a Laurent polynomial
    pn = sympy.Poly(num, *T[:nvars])
    pd = sympy.Poly(den, *T[:nvars])
    assert len(pd.terms()) == 1
    (de, dc), = pd.terms()
    terms = {}
    for e, c in pn.terms():
        q = sympy.Rational(c, dc)
        assert q.q == 1
        terms[tuple(a - b for a, b in zip(e, de))] = int(q)
    return LaurentPoly(terms, nvars)


def polys(nvars: int, max_terms: int = 4, span: int = 2, coeff: int = 5):
    term = st.tuples(st.tuples(*[st.integers(-span, span)] * nvars), st.integers(-coeff, coeff))
    return st.lists(term, max_size=max_terms).map(lambda ts: LaurentPoly(_sum_terms(ts), nvars))


def _sum_terms(ts):
    out = {}
    for e, c in ts:
        out[e] = out.get(e, 0) + c
    return out


def units(nvars: int):
    return st.tuples(st.tuples(*[st.integers(-3, 3)] * nvars), st.sampled_from((1, -1))).map(
        lambda ec: LaurentPoly.monomial(ec[0], ec[1]))


@pytest.fixture(scope="session")
def ex9():
    return load_fixture("paper-sec9")


@pytest.fixture(scope="session")
def ex9_setup(ex9):
    from trisect.homology import twisted_setup
    return twisted_setup(ex9)


@pytest.fixture(scope="session")
def ex9_twisted(ex9, ex9_setup):
    from trisect.homology import homology_twisted
    return homology_twisted(ex9, setup=ex9_setup)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {msg}")
