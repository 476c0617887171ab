"""Compare each template equation with the equation read off the parameter matrix.

For every (type, rank) this prints the expanded template, the monic relation
of A(t) for the cyclic vector e_1, and the result of the sign search plus a
wider diagnostic scaling search.
"""
import argparse
from fractions import Fraction

from lienormal.errors import VerificationFailed
from lienormal.normal_forms import (
    build_parameter_matrix, derived_equation, expand_parameter_equation, verify_annihilator,
)

CASES = [("A", 1), ("A", 2), ("A", 3), ("C", 2), ("C", 3), ("B", 2), ("B", 3), ("G2", 2)]


def label(t, l):
    return t if t == "G2" else f"{t}{l}"


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--scales", default="1,-1,2,-2,1/2,-1/2",
                   help="values tried per parameter in the diagnostic search")
    args = p.parse_args()
    scales = tuple(Fraction(s) for s in args.scales.split(","))
    for t, l in CASES:
        a = build_parameter_matrix(t, l)
        template = expand_parameter_equation(t, l)
        print(f"== {label(t, l)}")
        print(f"  template : {template}")
        print(f"  matrix   : {derived_equation(a)}")
        for kind, kw in (("signs", {}), ("scales", {"scales": scales})):
            try:
                cert = verify_annihilator(a, template, sign_search=True, **kw)
                print(f"  {kind:9}: verified with eps = {tuple(str(e) for e in cert.eps)}")
            except VerificationFailed as e:
                print(f"  {kind:9}: {e}")


if __name__ == "__main__":
    main()
