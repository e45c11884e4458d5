"""Self-normalizing perturbation of a subgroup law.

Each coset of the base Schreier graph independently receives a mark in
{0, 1, ..., r}: 0 with probability 1-p, each positive value with
probability p/r (the root coset uses the size-biased law with
q = 3p/(1+2p) instead). Marked cosets are tripled into slots {0,1,2} and
rewired so that the marked generator s_m runs slot0 -> slot2 with a loop at
slot1, while every other generator runs slot0 -> slot1 -> slot2; unmarked
cosets keep their edges, entering marked successors at slot 0 and leaving
marked predecessors from slot 2. If the root is marked, the root of the
output is a uniformly random slot of the tripled root coset.

The output is again a Schreier coset graph, and for an invariant base law
the output law is exactly invariant; at small p it perturbs the base only
slightly while almost surely destroying every graph automorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .analysis import canonical_code
from .errors import BudgetError, DomainError
from .measures import AtomicMeasure
from .oracles import FiniteOracle, SchreierOracle
from .randomness import TWO128, below, digest128


@dataclass(frozen=True)
class MarkLaw:
    """Mark distribution on {0..r}: u_p(0) = 1-p, u_p(i) = p/r; at the root
    the same shape with q = 3p/(1+2p) in place of p."""

    p: Fraction
    rank: int

    def __post_init__(self):
        if not isinstance(self.p, Fraction):
            object.__setattr__(self, "p", Fraction(self.p))
        if not (0 < self.p < 1):
            raise DomainError("p must lie strictly between 0 and 1")
        if self.rank < 1:
            raise DomainError("rank must be >= 1")

    @property
    def q(self) -> Fraction:
        return 3 * self.p / (1 + 2 * self.p)

    def masses(self, at_root: bool) -> list[Fraction]:
        level = self.q if at_root else self.p
        return [1 - level] + [level / self.rank] * self.rank

    def thresholds(self, at_root: bool) -> list[int]:
        """Integer cutoffs c_0 < ... < c_r = 2^128 so that a uniform 128-bit
        draw d yields mark = first i with d < c_i."""
        cuts = []
        acc = Fraction(0)
        for m in self.masses(at_root):
            acc += m
            cuts.append(min(TWO128, (acc.numerator * TWO128) // acc.denominator))
        cuts[-1] = TWO128
        return cuts


def mark(seed: int, vertex_key, law: MarkLaw, at_root: bool) -> int:
    """Deterministic mark of a vertex: a pure function of (seed, vertex)."""
    d = digest128(seed, "mark", vertex_key)
    for i, cut in enumerate(law.thresholds(at_root)):
        if d < cut:
            return i
    raise AssertionError("thresholds must cover 2^128")


class NormalizerOracle(SchreierOracle):
    """Lazy tripled-and-rewired graph over an arbitrary base oracle.

    `markfn` maps a base vertex to its mark; `root_slot` fixes the slot when
    the root coset is marked. The sampling constructors derive both from a
    seed; the exact enumerator passes explicit tables.
    """

    def __init__(self, base: SchreierOracle, markfn, root_slot: int):
        self.base = base
        self.rank = base.rank
        self._mark = markfn
        if self._mark(base.root) == 0:
            self.root = ("b", base.root)
        else:
            if root_slot not in (0, 1, 2):
                raise DomainError("root slot must be 0, 1 or 2")
            self.root = ("t", base.root, root_slot)

    def _enter(self, base_vertex):
        """Vertex at which an edge arrives in the new graph."""
        if self._mark(base_vertex) == 0:
            return ("b", base_vertex)
        return ("t", base_vertex, 0)

    def _exit(self, base_vertex):
        """Vertex from which an edge departs in the new graph."""
        if self._mark(base_vertex) == 0:
            return ("b", base_vertex)
        return ("t", base_vertex, 2)

    def neighbor(self, vertex, letter: int):
        kind = vertex[0]
        i = abs(letter)
        if letter > 0:
            if kind == "b":
                return self._enter(self.base.neighbor(vertex[1], letter))
            _, v, slot = vertex
            m = self._mark(v)
            if slot == 0:
                return ("t", v, 2) if i == m else ("t", v, 1)
            if slot == 1:
                return ("t", v, 1) if i == m else ("t", v, 2)
            return self._enter(self.base.neighbor(v, letter))
        # inverse letters: unique incoming edge of the positive letter
        if kind == "b":
            return self._exit(self.base.neighbor(vertex[1], letter))
        _, v, slot = vertex
        m = self._mark(v)
        if slot == 0:
            return self._exit(self.base.neighbor(v, letter))
        if slot == 1:
            return ("t", v, 1) if i == m else ("t", v, 0)
        return ("t", v, 0) if i == m else ("t", v, 1)

    def token(self, vertex) -> str:
        if vertex[0] == "b":
            return f"b({self.base.token(vertex[1])})"
        return f"t({self.base.token(vertex[1])};{vertex[2]})"


class _HashMarks:
    """Memoized keyed-hash marks; write-once cache, safe for shared readers."""

    def __init__(self, base: SchreierOracle, law: MarkLaw, seed: int,
                 key_of=None):
        self.base = base
        self.seed = seed
        self.key_of = key_of or base.token
        self.root_cuts = law.thresholds(at_root=True)
        self.other_cuts = law.thresholds(at_root=False)
        self.cache: dict = {}

    def __call__(self, v) -> int:
        m = self.cache.get(v)
        if m is None:
            d = digest128(self.seed, "mark", self.key_of(v))
            cuts = self.root_cuts if v == self.base.root else self.other_cuts
            m = 0
            while d >= cuts[m]:
                m += 1
            self.cache[v] = m
        return m


def normalizer_oracle(base: SchreierOracle, p, seed: int,
                      biased_root_slot: int | None = None) -> NormalizerOracle:
    """Sample the perturbed graph with keyed randomness.

    `biased_root_slot` forces a fixed root slot instead of the uniform
    choice; this deliberately breaks invariance and exists as a negative
    control for the invariance test harness.
    """
    law = MarkLaw(Fraction(p), base.rank)
    marks = _HashMarks(base, law, seed)
    if biased_root_slot is None:
        slot = below(seed, "rootslot", "root", 3)
    else:
        slot = biased_root_slot
    return NormalizerOracle(base, marks, slot)


def enumerate_normalizer_law(base: FiniteOracle, p,
                             biased_root_slot: int | None = None,
                             budget: int = 10**6) -> AtomicMeasure:
    """Exact output law over root-isomorphism classes for a finite base:
    every mark assignment and root slot enumerated with its rational
    probability. Atom keys are canonical graph codes."""
    law = MarkLaw(Fraction(p), base.rank)
    verts = base.vertices
    outcomes = (base.rank + 1) ** len(verts) * 3
    if outcomes > budget:
        raise BudgetError(
            f"{outcomes} outcomes exceed enumeration budget {budget}"
        )
    root_masses = law.masses(at_root=True)
    other_masses = law.masses(at_root=False)
    measure = AtomicMeasure()
    for assignment in itertools.product(range(base.rank + 1), repeat=len(verts)):
        table = dict(zip(verts, assignment))
        prob = Fraction(1)
        for v, m in table.items():
            prob *= root_masses[m] if v == base.root else other_masses[m]
        markfn = table.__getitem__
        if table[base.root] == 0:
            oracle = NormalizerOracle(base, markfn, 0)
            measure.add(canonical_code(oracle), prob)
        elif biased_root_slot is not None:
            oracle = NormalizerOracle(base, markfn, biased_root_slot)
            measure.add(canonical_code(oracle), prob)
        else:
            for slot in (0, 1, 2):
                oracle = NormalizerOracle(base, markfn, slot)
                measure.add(canonical_code(oracle), prob * Fraction(1, 3))
    return measure


def aut_trivial_mass(base: FiniteOracle, p) -> Fraction:
    """Exact probability that the perturbed graph has trivial automorphism
    group (the subgroup is self-normalizing). Root-independent, so root
    slots are not enumerated."""
    from .analysis import aut_count, oracle_from_code

    law = MarkLaw(Fraction(p), base.rank)
    verts = base.vertices
    root_masses = law.masses(at_root=True)
    other_masses = law.masses(at_root=False)
    total = Fraction(0)
    by_code: dict = {}
    for assignment in itertools.product(range(base.rank + 1), repeat=len(verts)):
        table = dict(zip(verts, assignment))
        prob = Fraction(1)
        for v, m in table.items():
            prob *= root_masses[m] if v == base.root else other_masses[m]
        oracle = NormalizerOracle(base, table.__getitem__, 0)
        code = canonical_code(oracle)
        hit = by_code.get(code)
        if hit is None:
            hit = aut_count(oracle_from_code(code)) == 1
            by_code[code] = hit
        if hit:
            total += prob
    return total
