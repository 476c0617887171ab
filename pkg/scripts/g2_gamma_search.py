"""Gamma candidates for G2: relation of A(t) versus the order-7 template.

An operator L = sum a_i D^i is skew-adjoint when L* = -L with
L* = sum (-D)^i a_i.  The relation of A(t) for the long-root candidate is
skew-adjoint; the template is not, and no rescaling t_i -> c_i t_i changes
that, which is why the template cannot be verified.
"""
from lienormal.normal_forms import (
    DiffOp, build_parameter_matrix, derived_equation, expand_parameter_equation, search_g2_gamma,
)
from lienormal.roots import G2_GAMMA_CANDIDATES


def adjoint(ode):
    out = DiffOp()
    for i, a in enumerate(ode.coeffs):
        out = out + (DiffOp.d(i) @ DiffOp.mul(a)).scale((-1) ** i)
    return out


def is_skew(ode):
    op = DiffOp({i: c for i, c in enumerate(ode.coeffs)})
    total = adjoint(ode) + op
    return all(c.is_zero() for c in total.coeffs.values())


def main():
    template = expand_parameter_equation("G2", 2)
    print(f"template: {template}")
    print(f"  skew-adjoint: {is_skew(template)}")
    for name, root in sorted(G2_GAMMA_CANDIDATES.items()):
        ode = derived_equation(build_parameter_matrix("G2", 2, name))
        linear = all(c.is_polynomial() for c in ode.coeffs)
        print(f"candidate {name} (gamma_1 = {root}):")
        print(f"  relation: {str(ode)[:400]}")
        print(f"  polynomial coefficients: {linear}; skew-adjoint: {linear and is_skew(ode)}")
    result = search_g2_gamma()
    print("template check:", {k: (v is not None) for k, v in result.items()})


if __name__ == "__main__":
    main()
