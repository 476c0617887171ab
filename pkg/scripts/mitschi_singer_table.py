"""Specializations f_i obtained by reducing A_0 + z^2 A_1 for several types."""
import argparse
from fractions import Fraction

from lienormal.normal_forms import mitschi_singer_reduction

CASES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2), ("C", 3), ("D", 4), ("G2", 2)]


def label(t, l):
    return t if t == "G2" else f"{t}{l}"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--h", default="1", help="value used for every Cartan coordinate")
    args = p.parse_args()
    h = Fraction(args.h)
    for t, l in CASES:
        res = mitschi_singer_reduction(t, l, [h] * l)
        status = "certified" if not res.failures() else "FAILED"
        print(f"{label(t, l)} ({status}, {len(res.gauge.factors)} factors)")
        for i, f in enumerate(res.specialization, start=1):
            print(f"  f{i} = {f}")


if __name__ == "__main__":
    main()
