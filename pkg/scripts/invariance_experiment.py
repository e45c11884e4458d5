#!/usr/bin/env python3
"""Conjugation-invariance z-tables for the randomized constructions, with
the biased-root negative control that the harness must flag."""

import argparse
from fractions import Fraction

from irslab import NormalizerLaw, PoulsenLaw, invariance_report, trivial_law
from irslab.montecarlo import render_invariance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=20_000)
    ap.add_argument("--radius", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--p", type=Fraction, default=Fraction(1, 10))
    args = ap.parse_args()

    laws = [
        ("normalizer over trivial", NormalizerLaw(trivial_law(2), args.p)),
        ("poulsen over normalizer",
         PoulsenLaw(NormalizerLaw(trivial_law(2), args.p), args.p)),
        ("NEGATIVE CONTROL: biased root slot",
         NormalizerLaw(trivial_law(2), Fraction(1, 2), biased_root_slot=0)),
    ]
    for name, law in laws:
        rows = invariance_report(law, args.radius, args.samples, args.seed)
        worst = max((r.z for r in rows), default=0.0)
        print(f"== {name} (p={law.p}, N={args.samples}, "
              f"radius={args.radius}) max z = {worst:.2f}")
        print(render_invariance(rows))


if __name__ == "__main__":
    main()
