import copy
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lienormal.algebra import T, ONE, ZERO, ff_det, field, identity, mat_mul, tvar, zvar
from lienormal.chevalley import (
    LieElement, ad_unipotent, ad_unipotent_matrix, basis_element, bracket,
    bracket_failures, chevalley_basis, decompose, adjoint_formula_failures, unipotent,
)
from lienormal.errors import NotInLieAlgebra
from lienormal.roots import add, neg

x = tvar(1)


def test_a1_matrices():
    b = chevalley_basis("A", 1)
    assert b.X[(1,)] == ((0, 1), (0, 0))
    assert b.X[(-1,)] == ((0, 0), (1, 0))
    assert b.H[0] == ((1, 0), (0, -1))


def test_a2_highest_root_vector():
    b = chevalley_basis("A", 2)
    assert b.X[(1, 1)] == ((0, 0, 1), (0, 0, 0), (0, 0, 0))
    assert b.X[(-1, -1)] == ((0, 0, 0), (0, 0, 0), (1, 0, 0))


@pytest.mark.parametrize("t, l", [("A", 1), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3),
                                  ("D", 2), ("D", 3), ("D", 4), ("G2", 2)])
def test_bracket_relations(t, l):
    assert bracket_failures(chevalley_basis(t, l)) == []


@pytest.mark.parametrize("t, l", [("B", 2), ("C", 3), ("D", 4), ("G2", 2)])
def test_defining_representation_shape(t, l):
    b = chevalley_basis(t, l)
    assert all(len(m) == b.rs.rep_dim for m in b.X.values())
    for h in b.H:
        assert all(h[i][j] == 0 for i in range(b.n) for j in range(b.n) if i != j)
    for m in b.X.values():
        p = [list(r) for r in m]
        for _ in range(b.n):
            p = [[sum(p[i][k] * m[k][j] for k in range(b.n)) for j in range(b.n)]
                 for i in range(b.n)]
        assert all(v == 0 for r in p for v in r)


def test_corrupted_basis_is_detected():
    b = chevalley_basis("C", 2)
    bad = copy.copy(b)
    bad.X = dict(b.X)
    root = b.rs.positive_roots[-1]
    m = [list(r) for r in bad.X[root]]
    i, j = b.pivots[root]
    m[i][j] *= 2
    bad.X[root] = tuple(map(tuple, m))
    bad.N = {}
    assert bracket_failures(bad)


def test_decompose_basis_element():
    b = chevalley_basis("A", 3)
    el = decompose([[field(v) for v in r] for r in b.H[0]], b)
    assert [str(c) for c in el.cartan] == ["1", "0", "0"]
    assert el.roots == {}


def test_decompose_rejects_identity():
    with pytest.raises(NotInLieAlgebra):
        decompose(identity(3), chevalley_basis("A", 2))


def test_decompose_root_vector():
    t1 = tvar(1)
    el = decompose([[ZERO, ZERO], [t1, ZERO]], chevalley_basis("A", 1))
    assert el.roots == {(-1,): t1}


@pytest.mark.parametrize("t, l", [("A", 3), ("B", 2), ("G2", 2)])
def test_decompose_roundtrip(t, l):
    b = chevalley_basis(t, l)
    z = zvar()
    el = LieElement(b, [z * (i + 1) for i in range(l)],
                    {a: z ** (k % 3) * (k - 2) for k, a in enumerate(b.rs.roots)})
    assert decompose(el.matrix, b) == el


def test_unipotent_identity_at_zero():
    b = chevalley_basis("B", 2)
    assert unipotent((1, 0), ZERO, b) == identity(5)


def test_unipotent_a1():
    b = chevalley_basis("A", 1)
    assert unipotent((-1,), x, b) == [[ONE, ZERO], [x, ONE]]


@pytest.mark.parametrize("t, l", [("A", 2), ("C", 2), ("G2", 2)])
def test_unipotent_determinant_one(t, l):
    b = chevalley_basis(t, l)
    for beta in b.rs.roots:
        assert ff_det(unipotent(beta, x, b)) == ONE


@given(st.integers(-5, 5), st.integers(-5, 5), st.sampled_from([("A", 2), ("G2", 2), ("B", 2)]))
def test_one_parameter_group(p, q, case):
    b = chevalley_basis(*case)
    z = zvar()
    for beta in b.rs.roots[:3]:
        u = mat_mul(unipotent(beta, z * p, b), unipotent(beta, z * q + 1, b))
        assert u == unipotent(beta, z * (p + q) + 1, b)


def test_adjoint_on_negative_root():
    b = chevalley_basis("C", 2)
    beta = (1, 1)
    got = ad_unipotent(beta, x, basis_element(b, root=neg(beta)))
    want = basis_element(b, root=neg(beta))
    for i, c in enumerate(b.rs.coroot_coefficients(beta)):
        if c:
            want = want + basis_element(b, cartan_index=i).scale(x * c)
    want = want + basis_element(b, root=beta).scale(-(x * x))
    assert got == want
    assert got == ad_unipotent_matrix(beta, x, basis_element(b, root=neg(beta)))


def test_adjoint_at_zero_is_identity():
    b = chevalley_basis("G2", 2)
    el = LieElement(b, [1, 2], {a: k for k, a in enumerate(b.rs.roots)})
    for beta in b.rs.roots:
        assert ad_unipotent(beta, ZERO, el) == el


def test_adjoint_no_string():
    b = chevalley_basis("A", 2)
    got = ad_unipotent((0, -1), x, basis_element(b, root=(1, 0)))
    assert got == basis_element(b, root=(1, 0))


def test_cartan_rule_carries_x():
    b = chevalley_basis("A", 2)
    got = ad_unipotent_matrix((1, 0), x, basis_element(b, cartan_index=0))
    # H_1 -> H_1 - x <alpha_1, alpha_1> X_{alpha_1}
    assert got == basis_element(b, cartan_index=0) + basis_element(b, root=(1, 0)).scale(-2 * x)


@pytest.mark.parametrize("t, l", [("A", 2), ("B", 2), ("C", 2)])
def test_adjoint_closed_form_matches_conjugation(t, l):
    assert adjoint_formula_failures(chevalley_basis(t, l)) == []


@pytest.mark.parametrize("t, l", [("A", 3), ("B", 3), ("G2", 2)])
def test_structure_constant_sign_matches_first_order_term(t, l):
    b = chevalley_basis(t, l)
    for beta in b.rs.roots:
        for a in b.rs.roots:
            s = add(a, beta)
            if a in (beta, neg(beta)) or not b.rs.is_root(s):
                continue
            ad = ad_unipotent_matrix(beta, x, basis_element(b, root=a))
            # the x-linear coefficient of X_{a+beta}
            coeff = ad.coefficient(s)
            linear = coeff.num.terms.get(((T(1), 1),), 0)
            assert linear == b.structure_constant(beta, a)
            m = bracket([list(r) for r in b.X[beta]], [list(r) for r in b.X[a]])
            assert all(m[i][j] == b.structure_constant(beta, a) * b.X[s][i][j]
                       for i in range(b.n) for j in range(b.n))
