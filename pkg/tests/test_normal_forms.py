import random

import pytest
from hypothesis import given, strategies as st

from lienormal.algebra import ONE, ZERO, field, mat_eq, parse, tvar, zvar
from lienormal.chevalley import chevalley_basis, decompose
from lienormal.errors import OutOfScope, PreconditionViolated, SingularGauge, VerificationFailed
from lienormal.normal_forms import (
    DiffOp, ScalarODE, build_parameter_matrix, companion, derived_equation,
    expand_parameter_equation, mitschi_singer_matrix, mitschi_singer_reduction,
    search_g2_gamma, sl_genericity_chain, verify_annihilator,
)
from lienormal.roots import neg

z = zvar()
t1, t2 = tvar(1), tvar(2)
Y = 9  # index of the fresh differential indeterminate standing for y


def y(k=0):
    return tvar(Y, k)


def d(f, k=1):
    for _ in range(k):
        f = f.derive()
    return f


def template_applied(group_type, l):
    """The nested-derivative equation evaluated on y by direct differentiation."""
    t = [None] + [tvar(i) for i in range(1, l + 1)]
    if group_type == "A":
        return y(l + 1) - sum((t[i] * y(i - 1) for i in range(1, l + 1)), ZERO)
    if group_type == "C":
        return y(2 * l) - sum((d(t[i] * y(l - i), l - i) * (-1) ** (i - 1)
                               for i in range(1, l + 1)), ZERO)
    if group_type == "B":
        return y(2 * l + 1) - sum(((d(t[i] * y(l + 1 - i), l - i) + d(t[i] * y(l - i), l + 1 - i))
                                   * (-1) ** (i - 1) for i in range(1, l + 1)), ZERO)
    return (y(7) + t1 * y(1) * 2 + d(t1 * y()) * 2 + d(t2 * y(4)) * 2 + d(t2 * y(1), 4)
            - d(t2 * d(t2 * y(1))) * 2)


def evaluate(ode):
    return sum((c * y(i) for i, c in enumerate(ode.coeffs)), ZERO)


@pytest.mark.parametrize("t, l", [("A", 1), ("A", 4), ("C", 2), ("C", 3), ("C", 4),
                                  ("B", 2), ("B", 3), ("G2", 2)])
def test_expansion_matches_direct_differentiation(t, l):
    ode = expand_parameter_equation(t, l)
    assert ode.coeffs[-1] == ONE
    assert evaluate(ode) == template_applied(t, l)


def test_type_a_coefficients():
    ode = expand_parameter_equation("A", 3)
    assert [str(c) for c in ode.coeffs] == ["-t1", "-t2", "-t3", "0", "1"]


def test_c2_expansion():
    ode = expand_parameter_equation("C", 2)
    assert ode == ScalarODE([t2, -tvar(1, 1), -t1, ZERO, ONE])


def test_g2_expansion_has_quartic_derivative_term():
    ode = expand_parameter_equation("G2", 2)
    assert ode.order == 7
    # (t2 y')'''' contributes 4 t2''' y''
    assert ode.coeffs[2] == tvar(2, 3) * 4 - t2 * tvar(2, 1) * 6


def test_type_d_is_out_of_scope():
    with pytest.raises(OutOfScope):
        expand_parameter_equation("D", 4)


def test_printing():
    assert str(expand_parameter_equation("A", 3)) == "y^(4) - t1*y - t2*y' - t3*y''"
    assert str(expand_parameter_equation("C", 2)) == "y^(4) + t2*y - t1'*y' - t1*y''"


def test_printing_roundtrip_of_coefficients():
    ode = expand_parameter_equation("G2", 2)
    for c in ode.coeffs:
        assert parse(str(c)) == c


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4),
       st.lists(st.integers(-3, 3), min_size=2, max_size=4))
def test_operator_composition_is_associative_on_functions(p, q):
    f = sum((z ** i * c for i, c in enumerate(p)), ZERO) + t1
    g = sum((z ** i * c for i, c in enumerate(q)), ZERO)
    op = DiffOp.d(2) @ DiffOp.mul(f) @ DiffOp.d(1) @ DiffOp.mul(g)
    applied = sum((c * y(k) for k, c in op.coeffs.items()), ZERO)
    assert applied == d(f * d(g * y()), 2)


def test_parameter_matrix_a2():
    m = build_parameter_matrix("A", 2).matrix
    assert mat_eq(m, [[ZERO, ONE, ZERO], [ZERO, ZERO, ONE], [t1, t2, ZERO]])


def test_parameter_matrix_a1():
    assert mat_eq(build_parameter_matrix("A", 1).matrix, [[ZERO, ONE], [t1, ZERO]])


@pytest.mark.parametrize("t, l", [("C", 2), ("B", 3), ("D", 4), ("G2", 2)])
def test_parameter_matrix_support(t, l):
    a = build_parameter_matrix(t, l)
    assert a.cartan_is_zero()
    assert decompose(a.matrix, a.basis) == a
    simples = set(a.basis.rs.simple_roots)
    params = [r for r in a.support() if r not in simples]
    assert len(params) == l and all(not a.basis.rs.is_positive(r) for r in params)
    assert all(a.coefficient(s) == ONE for s in simples)


@pytest.mark.parametrize("l", range(1, 6))
def test_parameter_equations_a(l):
    cert = verify_annihilator(build_parameter_matrix("A", l), expand_parameter_equation("A", l))
    assert cert.valid and cert.eps == (1,) * l


@pytest.mark.parametrize("l", [2, 3])
def test_parameter_equations_c(l):
    cert = verify_annihilator(build_parameter_matrix("C", l), expand_parameter_equation("C", l), True)
    assert cert.valid and not cert.rank_witness.is_zero()


@pytest.mark.parametrize("l", [2, 3])
def test_type_b_needs_factor_two(l):
    a = build_parameter_matrix("B", l)
    ode = expand_parameter_equation("B", l)
    with pytest.raises(VerificationFailed):
        verify_annihilator(a, ode, sign_search=True)
    cert = verify_annihilator(a, ode, sign_search=True, scales=(1, -1, 2, -2))
    assert cert.eps == (2,) * l


def test_g2_printed_equation_does_not_verify():
    assert search_g2_gamma() == {"alpha1": None, "alpha2": None}


def test_g2_default_equation_is_linear_and_skew():
    ode = derived_equation(build_parameter_matrix("G2", 2))
    assert ode.order == 7 and all(c.is_polynomial() for c in ode.coeffs)
    # D^7 - (D^4 t2 D + D t2 D^4) + D t2 D t2 D + 2 (t1 D + D t1)
    D, T1, T2 = DiffOp.d, DiffOp.mul(t1), DiffOp.mul(t2)
    op = (D(7) - (D(4) @ T2 @ D(1) + D(1) @ T2 @ D(4)) + D(1) @ T2 @ D(1) @ T2 @ D(1)
          + (T1 @ D(1) + D(1) @ T1).scale(2))
    assert ode == op.to_ode()


@pytest.mark.parametrize("n", range(1, 7))
def test_companion_tautology(n):
    rng = random.Random(n)
    bottom = [sum((z ** k * rng.randint(-3, 3) for k in range(3)), ZERO) + tvar(1) * rng.randint(0, 1)
              for _ in range(n)]
    ode = ScalarODE([-b for b in bottom] + [ONE])
    cert = verify_annihilator(companion(bottom), ode)
    assert cert.valid and cert.rank_witness == ONE


def test_perturbed_equation_fails():
    ode = expand_parameter_equation("A", 3)
    bad = ScalarODE([ode.coeffs[0] - 1] + ode.coeffs[1:])
    with pytest.raises(VerificationFailed):
        verify_annihilator(build_parameter_matrix("A", 3), bad)


def test_order_mismatch_fails():
    with pytest.raises(VerificationFailed):
        verify_annihilator(build_parameter_matrix("A", 2), expand_parameter_equation("A", 3))


def test_certificate_rows():
    cert = verify_annihilator(build_parameter_matrix("A", 2), expand_parameter_equation("A", 2))
    assert cert.row_vectors[0] == [ONE, ZERO, ZERO]
    assert all(r.is_zero() for r in cert.combo_residual)


def test_mitschi_singer_a1():
    m = mitschi_singer_matrix("A", 1, [1]).matrix
    assert mat_eq(m, [[z * z, ONE], [ONE, -(z * z)]])


def test_mitschi_singer_zero_h():
    res = mitschi_singer_reduction("A", 2, [0, 0])
    assert res.failures() == []


@pytest.mark.parametrize("t, l", [("A", 1), ("A", 2), ("A", 3), ("C", 2), ("G2", 2)])
def test_mitschi_singer_reduction(t, l):
    res = mitschi_singer_reduction(t, l, [1] * l)
    assert res.failures() == []
    allowed = set(res.normal.basis.rs.simple_roots) | {neg(r) for r in
                                                       res.normal.basis.rs.positive_roots}
    assert set(res.normal.support()) <= allowed
    assert all(f.is_polynomial() for f in res.specialization)


def test_genericity_rank_one():
    a1 = z + 1
    ch = sl_genericity_chain([a1, field(2) / z], z ** 2, ONE / z)
    assert ch.failures() == []
    f = ch.gauge.factors
    assert f[0].kind == "diagonal" and list(f[0].entries) == [ONE, ONE / (z * z)]
    assert list(f[1].entries) == [ONE / z, z]
    m = ch.final.matrix
    assert m[0][0].is_zero() and m[1][1].is_zero() and m[0][1] == ONE


def test_genericity_trivial_determinant():
    ch = sl_genericity_chain([z, ZERO], ONE, ONE)
    assert ch.failures() == []
    assert [f.kind for f in ch.gauge.factors[:2]] == ["diagonal", "diagonal"]
    assert all(e == ONE for f in ch.gauge.factors[:2] for e in f.entries)


def test_genericity_rank_two_shapes():
    a = [z ** 2 - 1, z * 3, field(3) / z]
    ch = sl_genericity_chain(a, z ** 3, ONE / z)
    assert ch.shape_failures == []
    assert ch.a1[1][2] == z ** 3 and ch.a1[2][0] == a[0] / z ** 3
    c = -(field(1) / z)
    assert ch.a2[0][0] == c and ch.a2[2][2] == -(c * 2)
    assert ch.failures() == []


def test_genericity_preconditions():
    with pytest.raises(PreconditionViolated):
        sl_genericity_chain([z, field(1) / z], z ** 2, ONE / z)
    with pytest.raises(PreconditionViolated):
        sl_genericity_chain([z, field(2) / z], z ** 2, z)
    with pytest.raises(SingularGauge):
        sl_genericity_chain([z, ZERO], ZERO, ONE)
