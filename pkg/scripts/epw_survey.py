#!/usr/bin/env python3
"""Survey the degeneracy locus of random instances over a prime field.

For each random rank-6 tuple: harvest membership points by pencil scans,
tabulate conic ranks and splitting behaviour, run the line correspondence
roundtrip on every split conic, and record the degree of the locus along
random pencils.
"""

import argparse
import random
from collections import Counter

from galecubics.epw import (EPWPoint, epw_line_degree, epw_to_lines,
                            harvest_epw_points, line_to_epw, residual_conic)
from galecubics.fields import PrimeField
from galecubics.gale import NonSyzygeticEquation
from galecubics.lagrangian import lagrangian_from_gale


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--prime", type=int, default=101)
    parser.add_argument("--instances", type=int, default=3)
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--pencils", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    field = PrimeField(args.prime)
    rng = random.Random(args.seed)
    for n in range(args.instances):
        eq = NonSyzygeticEquation.random(field, rng)
        data, _ = lagrangian_from_gale(eq, 1)
        print(f"instance {n}: sign {eq.sign:+d}")

        degrees = Counter()
        for _ in range(args.pencils):
            p0 = EPWPoint.make(field, [field.random(rng) for _ in range(6)])
            p1 = EPWPoint.make(field, [field.random(rng) for _ in range(6)])
            if p0.same_point(p1):
                continue
            degrees[epw_line_degree(data, p0, p1).total_degree()] += 1
        print(f"  locus degree along random pencils: {dict(degrees)}")

        points = harvest_epw_points(eq, 1, data, rng, args.points)
        ranks = Counter()
        splits = roundtrips = 0
        for hp in points:
            conic = residual_conic(eq, 1, hp.point)
            ranks[conic.rank()] += 1
            result = epw_to_lines(eq, 1, hp.point)
            if result.lines is None:
                continue
            splits += 1
            roundtrips += sum(
                line_to_epw(eq, 1, line).same_point(hp.point)
                for line in result.lines)
        print(f"  {len(points)} membership points; conic ranks {dict(ranks)}")
        print(f"  split conics: {splits}; successful roundtrips: "
              f"{roundtrips}/{2 * splits}")


if __name__ == "__main__":
    main()
