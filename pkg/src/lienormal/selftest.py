"""Invariant suites run by the `selftest` subcommand."""
import random

from .algebra import (
    ONE, ZERO, field, inverse, mat_add, mat_eq, mat_mul, tvar, zvar,
)
from .chevalley import adjoint_formula_failures, bracket_failures, chevalley_basis, unipotent
from .gauge import log_derivative
from .normal_forms import ScalarODE, companion, verify_annihilator
from .errors import VerificationFailed

SMALL_CASES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3),
               ("D", 2), ("D", 3), ("G2", 2)]


def _random_poly(rng, degree=2):
    z = zvar()
    out = ZERO
    for d in range(degree + 1):
        out = out + z ** d * rng.randint(-3, 3)
    return out


def bracket_suite(basis_factory=chevalley_basis):
    bad = []
    for t, l in SMALL_CASES:
        bad += [f"{t}{l}: {m}" for m in bracket_failures(basis_factory(t, l))]
    return bad


def adjoint_suite(basis_factory=chevalley_basis):
    bad = []
    for t, l in [("A", 1), ("A", 2), ("A", 3), ("G2", 2)]:
        bad += [f"{t}{l}: {m}" for m in adjoint_formula_failures(basis_factory(t, l))]
    return bad


def _random_group_element(rng, basis):
    m = None
    for _ in range(3):
        beta = rng.choice(basis.rs.roots)
        u = unipotent(beta, _random_poly(rng), basis)
        m = u if m is None else mat_mul(u, m)
    return m


def cocycle_suite(seed=0, trials=4):
    rng = random.Random(seed)
    bad = []
    for t, l in [("A", 2), ("C", 2), ("G2", 2)]:
        basis = chevalley_basis(t, l)
        for k in range(trials):
            b1 = _random_group_element(rng, basis)
            b2 = _random_group_element(rng, basis)
            left = log_derivative(mat_mul(b1, b2))
            right = mat_add(log_derivative(b1),
                            mat_mul(mat_mul(b1, log_derivative(b2)), inverse(b1)))
            if not mat_eq(left, right):
                bad.append(f"{t}{l} trial {k}: cocycle identity fails")
    return bad


def companion_suite(seed=0, max_order=4):
    rng = random.Random(seed)
    bad = []
    for n in range(1, max_order + 1):
        bottom = [_random_poly(rng) for _ in range(n)]
        ode = ScalarODE([-b for b in bottom] + [ONE])
        try:
            verify_annihilator(companion(bottom), ode)
        except VerificationFailed as e:
            bad.append(f"order {n}: {e}")
    # the symbolic companion matrix
    for n in range(1, max_order + 1):
        bottom = [tvar(i) for i in range(1, n + 1)]
        ode = ScalarODE([-b for b in bottom] + [ONE])
        try:
            verify_annihilator(companion(bottom), ode)
        except VerificationFailed as e:
            bad.append(f"symbolic order {n}: {e}")
    return bad


SUITES = {
    "bracket": bracket_suite,
    "adjoint": adjoint_suite,
    "cocycle": cocycle_suite,
    "companion": companion_suite,
}


def run_all(basis_factory=chevalley_basis):
    """{suite name: list of failure messages}."""
    out = {}
    for name, fn in SUITES.items():
        if name in ("bracket", "adjoint"):
            out[name] = fn(basis_factory)
        else:
            out[name] = fn()
    return out
