#!/usr/bin/env python3
"""Sweep the shifted smooth-twisted orthogonality claim for violations.

Each point gets a certified interval for
totient_product * sum over smooth t of c_q(n+t) c_l(t) / t; an interval
that excludes the claimed collapse [q == l] * c_l(n) is a rigorous
falsification witness.

Usage:
    python scripts/run_conjecture1_sweep.py --Q 3 [--witnesses 5]
"""

import argparse
from fractions import Fraction

from ramsmooth import SmoothContext, find_shifted_orthogonality_violations, \
    format_rational, lcm_range


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--Q", type=int, default=3)
    parser.add_argument("--witnesses", type=int, default=3)
    parser.add_argument("--x-start", type=int, default=1 << 14)
    parser.add_argument("--x-cap", type=int, default=1 << 26)
    args = parser.parse_args()

    ctx = SmoothContext(args.Q)
    span = lcm_range(args.Q)
    outcome = find_shifted_orthogonality_violations(
        ctx, index_bound=span, shift_bound=span,
        x_start=args.x_start, x_cap=args.x_cap,
        target_radius=Fraction(1, 100), stop_after=args.witnesses)
    print(f"Q={args.Q}: checked {outcome.points_checked} points, "
          f"{len(outcome.witnesses)} certified violations, "
          f"{len(outcome.undecided)} undecided")
    for w in outcome.witnesses:
        print(f"  (q={w.q}, ell={w.ell}, n={w.n}) at cutoff {w.cutoff}: "
              f"value {format_rational(w.value.center)} "
              f"+- {float(w.value.radius):.2e} "
              f"excludes claimed {format_rational(w.claimed)}")


if __name__ == "__main__":
    main()
