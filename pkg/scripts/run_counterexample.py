#!/usr/bin/env python3
"""Tabulate the expansion defect of the point-mass counterexample.

For every modulus q0 in (2, q0max] the instance f = 1_{q0-1}, g = c_{q0}
has lhs = phi(q0) against rhs = mu(q0)^2/phi(q0) at shift 1, so the
conjectured exact finite expansion fails everywhere on the grid.

Usage:
    python scripts/run_counterexample.py [--q0-max 12] [--N 20]
"""

import argparse
from fractions import Fraction

from ramsmooth import counterexample_report, euler_phi, format_rational, mobius


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q0-max", type=int, default=12)
    parser.add_argument("--N", type=int, default=20)
    args = parser.parse_args()

    print(f"{'q0':>4} {'n0':>4} {'lhs':>8} {'rhs':>8} {'defect':>10}")
    for q0 in range(3, args.q0_max + 1):
        n0 = q0 - 1
        N = max(args.N, n0)
        rep = counterexample_report(N, max(q0, 5), n0, q0)
        assert rep.lhs == euler_phi(q0)
        assert rep.rhs == Fraction(mobius(q0) ** 2, euler_phi(q0))
        print(f"{q0:>4} {n0:>4} {format_rational(rep.lhs):>8} "
              f"{format_rational(rep.rhs):>8} "
              f"{format_rational(rep.defect):>10}")


if __name__ == "__main__":
    main()
