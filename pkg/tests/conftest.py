import itertools
import sys

from hypothesis import settings, strategies as st

from lienormal.algebra import FieldElem, Poly, T, Z, ZERO, field

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

VARIABLES = [Z, T(1), T(1, 1), T(2), T(2, 2)]


@st.composite
def polys(draw, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = [draw(st.integers(0, max_exp)) for _ in VARIABLES]
        mono = tuple((v, e) for v, e in zip(VARIABLES, exps) if e)
        coeff = draw(st.integers(-5, 5))
        terms[mono] = terms.get(mono, 0) + coeff
    return Poly({m: c for m, c in terms.items() if c})


@st.composite
def nonzero_polys(draw, **kw):
    p = draw(polys(**kw))
    if p.is_zero():
        return Poly.const(draw(st.integers(1, 4)))
    return p


@st.composite
def field_elems(draw):
    return FieldElem(draw(polys(max_terms=3)), draw(nonzero_polys(max_terms=2, max_exp=1)))


def cofactor_det(m):
    """Leibniz-formula determinant, used as an independent oracle."""
    n = len(m)
    total = ZERO
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = field(-1 if inv % 2 else 1)
        for i, p in enumerate(perm):
            term = term * m[i][p]
        total = total + term
    return total


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
