"""Subgroup laws: deterministic samplers of Schreier oracles.

A law draws an oracle from a seed; point laws ignore the seed. Laws
compose: the percolation and tripling constructions each accept any law as
their base, with sub-seeds derived per stage so that one top-level seed
determines the whole sample.
"""

from __future__ import annotations

from fractions import Fraction

from .normalizer import normalizer_oracle
from .oracles import CayleyOracle, SchreierOracle
from .poulsen import poulsen_oracle
from .randomness import subseed


class PointLaw:
    """Point mass on a single subgroup."""

    def __init__(self, oracle: SchreierOracle, name: str = "point"):
        self.oracle = oracle
        self.rank = oracle.rank
        self.is_point = True
        self.name = name

    def sample(self, seed: int) -> SchreierOracle:
        return self.oracle

    def describe(self) -> str:
        return self.name


def trivial_law(rank: int) -> PointLaw:
    return PointLaw(CayleyOracle(rank), "trivial")


class NormalizerLaw:
    """Law of the tripling perturbation over a base law."""

    def __init__(self, inner, p, biased_root_slot: int | None = None):
        self.inner = inner
        self.p = Fraction(p)
        self.rank = inner.rank
        self.is_point = False
        self.biased_root_slot = biased_root_slot

    def sample(self, seed: int) -> SchreierOracle:
        base = self.inner.sample(subseed(seed, "law", "base-draw"))
        return normalizer_oracle(
            base, self.p, subseed(seed, "law", "marks"),
            biased_root_slot=self.biased_root_slot,
        )

    def describe(self) -> str:
        tag = "biased-normalizer" if self.biased_root_slot is not None \
            else "normalizer"
        return f"{tag}:{self.inner.describe()}"


class PoulsenLaw:
    """Law of the percolation-and-surgery construction over a base law."""

    def __init__(self, inner, p):
        self.inner = inner
        self.p = Fraction(p)
        self.rank = inner.rank
        self.is_point = False

    def sample(self, seed: int) -> SchreierOracle:
        return poulsen_oracle(self.inner, self.p, subseed(seed, "law", "perc"))

    def describe(self) -> str:
        return f"poulsen:{self.inner.describe()}"
