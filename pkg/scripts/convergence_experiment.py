#!/usr/bin/env python3
"""Small-p convergence of the percolation construction.

For each base, estimates the mass of the base subgroup's own radius-2
cylinder under the percolated law as p drops, next to the union-bound
deviation limit 2(1-(1-p)^k) + 3 stderr.
"""

import argparse
from fractions import Fraction

from irslab import CylinderSpec, PointLaw, cylinder_fingerprint, trivial_law
from irslab.actions import orbit_schreier, random_transitive_action
from irslab.montecarlo import convergence_sweep, render_sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--radius", type=int, default=2)
    args = ap.parse_args()

    p_list = [Fraction(1, 5), Fraction(1, 10), Fraction(1, 20), Fraction(1, 100)]
    bases = [("trivial", trivial_law(2))]
    for n in (2, 4, 6):
        oracle = orbit_schreier(random_transitive_action(n, 2, seed=n), 0)
        bases.append((f"index-{n}", PointLaw(oracle, f"index-{n}")))

    for name, law in bases:
        spec = CylinderSpec(
            cylinder_fingerprint(law.oracle, args.radius), args.radius
        )
        rows = convergence_sweep("poulsen", law, p_list, spec,
                                 args.samples, args.seed)
        print(f"base {name}: cylinder of its own radius-{args.radius} fingerprint")
        print(render_sweep(rows))


if __name__ == "__main__":
    main()
