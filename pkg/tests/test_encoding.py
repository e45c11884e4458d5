from fractions import Fraction

import pytest

from irslab import (
    CayleyOracle,
    DomainError,
    NotInYError,
    NotInZError,
    ball,
    conjugate,
    contains,
    decode,
    in_Z,
    lambda_pushforward,
    psi_oracle,
    root_isomorphic,
    trace,
    translate_set,
    upsilon,
    validate_schreier_ball,
)
from irslab.actions import FiniteAction
from irslab.encoding import (
    SubshiftSpace,
    emit_subshift,
    lambda_conjugate,
    parse_subshift,
    point_class_code,
    random_subshift_space,
)
from irslab.randomness import KeyedRng
from irslab.words import (
    inverse_word,
    phi_word,
    word_from_str,
    words_upto,
)


def constant_one_space():
    return SubshiftSpace(FiniteAction(1, ((0,), (0,))), (1,), 1)


def three_cycle_space():
    # s1 cycles three points, s2 fixes them; symbols 3,1,1 so x(e)=3 at
    # basepoint 0
    return SubshiftSpace(FiniteAction(3, ((1, 2, 0), (0, 1, 2))), (3, 1, 1), 3)


def period_two_space():
    # s1 swaps two points, s2 fixes them; distinct symbols
    return SubshiftSpace(FiniteAction(2, ((1, 0), (0, 1))), (1, 2), 2)


def test_space_validation():
    with pytest.raises(DomainError):
        SubshiftSpace(FiniteAction(1, ((0,),)), (1,), 1)  # rank 1
    with pytest.raises(DomainError):
        SubshiftSpace(FiniteAction(1, ((0,), (0,))), (0,), 1)  # symbol 0
    with pytest.raises(DomainError):
        SubshiftSpace(FiniteAction(1, ((0,), (0,))), (2,), 1)  # over alphabet


def test_psi_membership_constant_one():
    psi = psi_oracle(constant_one_space().point(0))
    assert contains(psi, word_from_str("s1*s2*s1^-1"))
    assert not contains(psi, (1, 1))
    assert not contains(psi, (2,))
    # conjugating the cycle word by any doubled prefix stays inside
    g = phi_word((1, -2))
    assert contains(psi, g + (1, 2, -1) + inverse_word(g))


def test_psi_membership_cycle_length_three():
    psi = psi_oracle(three_cycle_space().point(0))
    assert contains(psi, (1, 2, 2, 2, -1))
    assert not contains(psi, (1, 2, -1))
    assert not contains(psi, (1, 2, 2, -1))


def test_psi_generator_families():
    # family checks on a mixed space: symbols via shifted basepoints
    space = three_cycle_space()
    psi = psi_oracle(space.point(0))
    x = space.point(0)
    # family (1)-type at a neighbor with symbol 1: phi(s1)=s1^2 shifts to
    # the point with x(s1)=symbol at basepoint.s1
    sym = x.symbol((1,))
    word = phi_word((1,)) + (1,) + (2,) * sym + (-1,) + inverse_word(phi_word((1,)))
    assert contains(psi, word)


def test_psi_valid_and_infinite_index():
    space = three_cycle_space()
    psi = psi_oracle(space.point(0))
    sizes = []
    for r in range(1, 7):
        view = ball(psi, r)
        validate_schreier_ball(view)
        sizes.append(len(view.vertices))
    assert sizes == sorted(set(sizes))  # strictly increasing
    for k in range(1, 51):
        assert trace(psi, (1, 1) * k) != psi.root


def test_translate_set():
    L = translate_set(1, 2)
    assert L == [(), (1,), (-1,), (2,), (-2,)]
    assert len(translate_set(2, 2)) == 17
    assert translate_set(3, 2)[0] == ()


def test_equivariance_sampled():
    rng = KeyedRng(31, "equiv")
    for case in range(40):
        space = random_subshift_space(2 + case % 5, 2, 3, seed=1000 + case)
        q = rng.randrange(space.action.n)
        x = space.point(q)
        words = [w for w in words_upto(2, 3) if w]
        f = words[rng.randrange(len(words))]
        lhs = ball(psi_oracle(x.shifted(f)), 4)
        rhs = ball(conjugate(psi_oracle(x), phi_word(f)), 4)
        assert root_isomorphic(lhs, rhs)


def test_injectivity_at_radius():
    # distinct patterns on B(R) force distinct balls at radius 2R+2
    rng = KeyedRng(37, "inject")
    found_pairs = 0
    for case in range(60):
        sa = random_subshift_space(3, 2, 3, seed=2000 + case)
        sb = random_subshift_space(3, 2, 3, seed=3000 + case)
        xa, xb = sa.point(0), sb.point(0)
        radius = 1
        if xa.pattern(radius) == xb.pattern(radius):
            continue
        found_pairs += 1
        ba = ball(psi_oracle(xa), 2 * radius + 2)
        bb = ball(psi_oracle(xb), 2 * radius + 2)
        assert not root_isomorphic(ba, bb)
    assert found_pairs > 20


def test_decode_roundtrip_constant():
    psi = psi_oracle(constant_one_space().point(0))
    pattern = decode(psi, 5)
    assert set(pattern.values()) == {1}
    assert set(pattern) == set(words_upto(2, 3))


def test_decode_roundtrip_random():
    for case in range(25):
        space = random_subshift_space(2 + case % 6, 2, 4, seed=4000 + case)
        x = space.point(case % space.action.n)
        pattern = decode(psi_oracle(x), 6)
        assert pattern == x.pattern(4)


def test_decode_equivariance():
    # decode(phi(f) . psi(x)) = pattern of f.x
    space = three_cycle_space()
    x = space.point(0)
    f = (1,)
    moved = conjugate(psi_oracle(x), phi_word(f))
    assert decode(moved, 5) == x.shifted(f).pattern(3)


def test_decode_rejects_non_encoding():
    with pytest.raises(NotInZError):
        decode(CayleyOracle(2), 4, symbol_cap=64)


def test_in_Z_examples():
    space = three_cycle_space()
    psi = psi_oracle(space.point(0))
    for radius in (2, 3, 4):
        assert in_Z(psi, space, radius)
    assert not in_Z(conjugate(psi, (1,)), space, 4)  # root on a cycle
    assert not in_Z(CayleyOracle(2), space, 2)
    with pytest.raises(DomainError):
        in_Z(psi, space, 1)


def test_upsilon_in_Z_returns_self():
    space = three_cycle_space()
    psi = psi_oracle(space.point(0))
    ret, f = upsilon(psi, space, 4)
    assert f == ()
    assert ret.root == psi.root


def test_upsilon_covering_sampled():
    rng = KeyedRng(41, "ups")
    for case in range(20):
        space = random_subshift_space(2 + case % 4, 2, 2, seed=5000 + case)
        q = rng.randrange(space.action.n)
        psi = psi_oracle(space.point(q))
        g_words = [w for w in words_upto(2, space.alphabet) if w]
        g = g_words[rng.randrange(len(g_words))]
        moved = conjugate(psi, inverse_word(g))
        ret, f = upsilon(moved, space, 4)
        assert in_Z(ret, space, 5)


def test_upsilon_not_in_Y():
    space = three_cycle_space()
    with pytest.raises(NotInYError):
        upsilon(CayleyOracle(2), space, 4)


def test_lambda_fixed_point():
    space = constant_one_space()
    lam, reps = lambda_pushforward(space)
    assert lam.total() == 2
    z_atoms = [(k, m) for k, m in lam.items_sorted() if k[0] == "cay"]
    assert len(z_atoms) == 1 and z_atoms[0][1] == 1
    for l in (1, -1, 2, -2):
        assert lambda_conjugate(space, lam, reps, l) == lam


def test_lambda_period_two():
    space = period_two_space()
    lam, reps = lambda_pushforward(space)
    # restriction to the encoded set equals the pushforward of eta
    z_mass = {k: m for k, m in lam.data.items() if k[0] == "cay"}
    expected = {("cay", 0, point_class_code(space, q)): Fraction(1, 2)
                for q in (0, 1)}
    assert z_mass == expected
    L = translate_set(space.alphabet, space.rank)
    assert lam.total() <= len(L)
    for l in (1, -1, 2, -2):
        assert lambda_conjugate(space, lam, reps, l) == lam


def test_lambda_rejects_noninvariant_eta():
    space = period_two_space()
    with pytest.raises(DomainError):
        lambda_pushforward(space, {0: Fraction(2, 3), 1: Fraction(1, 3)})


def test_lambda_invariant_under_nonuniform_orbit_masses():
    # two orbits with different masses is still invariant
    action = FiniteAction(4, ((1, 0, 3, 2), (0, 1, 2, 3)))
    space = SubshiftSpace(action, (1, 2, 2, 1), 2)
    eta = {0: Fraction(1, 3), 1: Fraction(1, 3),
           2: Fraction(1, 6), 3: Fraction(1, 6)}
    lam, reps = lambda_pushforward(space, eta)
    for l in (1, -1, 2, -2):
        assert lambda_conjugate(space, lam, reps, l) == lam


def test_point_class_code_separates_patterns():
    space = period_two_space()
    assert point_class_code(space, 0) != point_class_code(space, 1)
    const = constant_one_space()
    assert point_class_code(const, 0) == point_class_code(const, 0)


def test_subshift_file_roundtrip():
    space = three_cycle_space()
    text = emit_subshift(space, basepoint=1)
    space2, bp = parse_subshift(text)
    assert bp == 1
    assert space2.labels == space.labels
    assert space2.action.perms == space.action.perms
    assert emit_subshift(space2, bp) == text
