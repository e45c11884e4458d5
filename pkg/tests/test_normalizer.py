import itertools
from fractions import Fraction

import pytest

from irslab import (
    CayleyOracle,
    DomainError,
    MarkLaw,
    aut_count,
    ball,
    emit_sgr,
    enumerate_normalizer_law,
    normalizer_oracle,
    oracle_from_code,
    root_isomorphic,
    validate_schreier_ball,
)
from irslab.actions import orbit_schreier, random_transitive_action
from irslab.montecarlo import exact_invariance_rows
from irslab.normalizer import NormalizerOracle, aut_trivial_mass, mark
from irslab.randomness import subseed

from helpers import index2_oracle, one_vertex_oracle


def test_mark_law_boundaries():
    with pytest.raises(DomainError):
        MarkLaw(Fraction(0), 2)
    with pytest.raises(DomainError):
        MarkLaw(Fraction(1), 2)
    with pytest.raises(DomainError):
        MarkLaw(Fraction(3, 2), 2)


def test_mark_law_q_formula():
    assert MarkLaw(Fraction(1, 2), 2).q == Fraction(3, 4)
    assert MarkLaw(Fraction(3, 10), 2).q == Fraction(9, 16)
    for p in (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)):
        law = MarkLaw(p, 3)
        assert 0 < law.q < 1
        assert sum(law.masses(at_root=True)) == 1
        assert sum(law.masses(at_root=False)) == 1


def test_mark_monte_carlo_frequencies():
    law = MarkLaw(Fraction(3, 10), 2)
    n = 100_000
    zeros = sum(1 for k in range(n) if mark(99, ("v", k), law, False) == 0)
    assert abs(zeros / n - 0.7) < 0.005
    root_zeros = sum(1 for k in range(n) if mark(99, ("v", k), law, True) == 0)
    assert abs(root_zeros / n - float(1 - law.q)) < 0.005


def test_root_slot_uniform():
    from irslab.randomness import below

    counts = [0, 0, 0]
    for seed in range(30_000):
        counts[below(seed, "rootslot", "root", 3)] += 1
    for c in counts:
        assert abs(c / 30_000 - 1 / 3) < 0.02


def test_tripled_one_vertex_structure():
    # single marked coset, mark m=1: s1 runs 0->2->0 with a loop at 1,
    # s2 runs the 3-cycle 0->1->2->0
    base = one_vertex_oracle()
    oracle = NormalizerOracle(base, lambda v: 1, root_slot=0)
    t = lambda s: ("t", "v", s)
    assert oracle.root == t(0)
    assert oracle.neighbor(t(0), 1) == t(2)
    assert oracle.neighbor(t(2), 1) == t(0)
    assert oracle.neighbor(t(1), 1) == t(1)
    assert oracle.neighbor(t(0), 2) == t(1)
    assert oracle.neighbor(t(1), 2) == t(2)
    assert oracle.neighbor(t(2), 2) == t(0)
    # inverse letters agree with the unique incoming edges
    assert oracle.neighbor(t(2), -1) == t(0)
    assert oracle.neighbor(t(0), -1) == t(2)
    assert oracle.neighbor(t(1), -2) == t(0)
    view = ball(oracle, 10)
    validate_schreier_ball(view)
    assert len(view.vertices) == 3


def test_all_enumerated_outcomes_valid():
    base = index2_oracle()
    for assignment in itertools.product((0, 1, 2), repeat=2):
        table = dict(zip(base.vertices, assignment))
        for slot in (0, 1, 2):
            oracle = NormalizerOracle(base, table.__getitem__, slot)
            view = ball(oracle, 12)
            validate_schreier_ball(view)
            assert not view.boundary
            view.to_oracle()  # permutation + connectivity checks


def test_vertex_count_formula():
    base = index2_oracle()
    for seed in range(10):
        oracle = normalizer_oracle(base, Fraction(1, 2), seed)
        marks = [oracle._mark(v) for v in base.vertices]
        expected = sum(1 if m == 0 else 3 for m in marks)
        assert len(ball(oracle, 20).vertices) == expected


def test_small_p_ball_agreement_probability():
    # no marks on the 17 radius-2 ball vertices forces ball agreement, so
    # (1-q)(1-p)^16 lower-bounds the agreement probability; the exact value
    # over the free-group base is (1-q)(1-p)^4, since a mark at distance 2
    # hides its extra slots outside the ball
    base = CayleyOracle(2)
    p = Fraction(1, 20)
    law = MarkLaw(p, 2)
    lower = float((1 - law.q) * (1 - p) ** 16)
    exact = float((1 - law.q) * (1 - p) ** 4)
    n = 4000
    base_ball = ball(base, 2)
    hits = 0
    for k in range(n):
        oracle = normalizer_oracle(base, p, subseed(1234, "trial", k))
        if root_isomorphic(ball(oracle, 2), base_ball):
            hits += 1
    stderr = (exact * (1 - exact) / n) ** 0.5
    assert hits / n >= lower - 3 * stderr
    assert abs(hits / n - exact) <= 4 * stderr


def test_enumeration_total_mass_exact():
    law = enumerate_normalizer_law(index2_oracle(), Fraction(1, 3))
    assert law.total() == 1
    law2 = enumerate_normalizer_law(one_vertex_oracle(), Fraction(2, 5))
    assert law2.total() == 1


def test_enumeration_support_one_vertex_base():
    # hand count: unmarked stays the 1-vertex graph; marked (2 choices of
    # mark) triples it and the three root slots are pairwise distinguishable
    law = enumerate_normalizer_law(one_vertex_oracle(), Fraction(1, 2))
    assert len(law) == 7
    q = MarkLaw(Fraction(1, 2), 2).q
    unmarked = [m for code, m in law.data.items() if code[1] == 1]
    assert unmarked == [1 - q]
    tripled = [m for code, m in law.data.items() if code[1] == 3]
    assert len(tripled) == 6
    assert all(m == q / 6 for m in tripled)


def test_exact_invariance_index2():
    law = enumerate_normalizer_law(index2_oracle(), Fraction(1, 2))
    rows = exact_invariance_rows(law, 2)
    assert rows
    assert all(r.deviation == 0 for r in rows)


def test_biased_root_slot_breaks_invariance():
    law = enumerate_normalizer_law(index2_oracle(), Fraction(1, 2),
                                   biased_root_slot=0)
    rows = exact_invariance_rows(law, 2)
    assert any(r.deviation != 0 for r in rows)


def test_determinism_same_seed():
    base = CayleyOracle(2)
    a = normalizer_oracle(base, Fraction(1, 5), 77)
    b = normalizer_oracle(base, Fraction(1, 5), 77)
    assert emit_sgr(ball(a, 4)) == emit_sgr(ball(b, 4))
    c = normalizer_oracle(base, Fraction(1, 5), 78)
    assert not root_isomorphic(ball(a, 4), ball(c, 4))


def test_composition_normalizer_over_normalizer():
    inner = normalizer_oracle(CayleyOracle(2), Fraction(1, 4), 5)
    outer = normalizer_oracle(inner, Fraction(1, 4), 6)
    view = ball(outer, 3)
    validate_schreier_ball(view)


def test_enumeration_budget():
    from irslab import BudgetError

    base = orbit_schreier(random_transitive_action(8, 2, 0), 0)
    with pytest.raises(BudgetError):
        enumerate_normalizer_law(base, Fraction(1, 2), budget=100)


def test_aut_trivial_mass_monotone_in_index():
    # the self-normalizing fraction should not drop as the base grows
    p = Fraction(1, 2)
    masses = []
    for n in (2, 4, 6):
        base = orbit_schreier(random_transitive_action(n, 2, seed=41), 0)
        masses.append(aut_trivial_mass(base, p))
    assert all(0 <= m <= 1 for m in masses)
    assert masses == sorted(masses)


def test_aut_trivial_mass_agrees_with_law():
    base = index2_oracle()
    p = Fraction(1, 2)
    law = enumerate_normalizer_law(base, p)
    via_law = sum(
        (m for code, m in law.data.items()
         if aut_count(oracle_from_code(code)) == 1),
        Fraction(0),
    )
    assert aut_trivial_mass(base, p) == via_law
