"""Reduce random Borel-shaped connections of every type and time the certificates."""
import argparse
import random
import time

from lienormal.algebra import ONE, ZERO, zvar
from lienormal.chevalley import LieElement, chevalley_basis
from lienormal.gauge import reduce_to_normal_form
from lienormal.roots import neg

CASES = [("A", 2), ("A", 4), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4), ("G2", 2)]


def random_input(basis, rng, degree):
    z = zvar()

    def poly():
        return sum((z ** d * rng.randint(-3, 3) for d in range(degree + 1)), ZERO)

    roots = {s: ONE for s in basis.rs.simple_roots}
    for a in basis.rs.positive_roots:
        roots[neg(a)] = poly()
    return LieElement(basis, [poly() for _ in range(basis.rank)], roots)


def label(t, l):
    return t if t == "G2" else f"{t}{l}"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = random.Random(args.seed)
    print(f"{'case':6} {'trials':>6} {'certified':>9} {'factors':>8} {'max deg f':>9} {'seconds':>8}")
    for t, l in CASES:
        basis = chevalley_basis(t, l)
        ok = factors = maxdeg = 0
        t0 = time.perf_counter()
        for _ in range(args.trials):
            res = reduce_to_normal_form(random_input(basis, rng, args.degree))
            ok += not res.failures()
            factors += len(res.gauge.factors)
            maxdeg = max([maxdeg] + [f.num.degree() for f in res.specialization])
        dt = time.perf_counter() - t0
        print(f"{label(t, l):<6} {args.trials:>6} {ok:>9} {factors / args.trials:>8.1f} {maxdeg:>9} {dt:>8.2f}")


if __name__ == "__main__":
    main()
