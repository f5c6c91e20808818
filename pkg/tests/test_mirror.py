import itertools
import random
from fractions import Fraction

import pytest

from fourvalent.algebra import GF, QQ
from fourvalent.errors import DomainError
from fourvalent.mirror import (
    LocalSystem, PlueckerPoint, brute_force_support, curvature, generator_spectrum,
    hf_support_check, is_unobstructed, koszul_hf, localsystem_from_line, pants_hf,
    pluecker_embed, pluecker_relation, restricted_holonomies, support_points,
    support_relation, support_relations, unobstructed_systems,
)

from oracles import brute_cohomology, brute_support, koszul_matrices, printed_relations

F7 = GF(7)
MU = (-2, 1, 1, 1, 1)


def ls(values, field=QQ):
    return LocalSystem(tuple(values), field)


def test_curvature_examples():
    assert curvature(ls(MU)) == 0
    assert curvature(ls((1,) * 5)) == 3
    assert curvature(ls((1,) * 5, GF(3))) == 0


def test_local_system_rejects_zero():
    with pytest.raises(ValueError):
        ls((0, 1, 1, 1, 1))


def test_restricted_holonomies():
    assert restricted_holonomies(ls(MU), 3) == (1, Fraction(-1, 2))
    for i in (1, 2, 3):
        assert restricted_holonomies(ls((1,) * 5), i) == (1, 1)
    assert restricted_holonomies(ls((3, 2, 5, 7, 5)), 1)[0] == 1
    with pytest.raises(ValueError):
        restricted_holonomies(ls(MU), 4)


def test_support_relation_examples():
    r1, r2, r3 = support_relations(ls(MU))
    assert (r1.variables, r1.coefficients) == ((2, 3), (1, -1, 1))
    assert (r2.variables, r2.coefficients) == ((1, 3), (-1, -2, 1))
    assert (r3.variables, r3.coefficients) == ((1, 2), (1, 2, 1))
    flipped = support_relation(ls(MU), 1, signs=(1, 1, 1))
    assert flipped.coefficients == (1, 1, 1)


def test_relations_match_printed_formulas():
    rng = random.Random(8)
    for _ in range(200):
        mu = [rng.randrange(1, 11) for _ in range(5)]
        ours = support_relations(ls(mu, GF(11)))
        ref = printed_relations(mu, 11)
        for _ in range(5):
            x = [rng.randrange(1, 11) for _ in range(3)]
            assert [int(r.evaluate([GF(11)(c) for c in x])) for r in ours] == [f(*x) % 11 for f in ref]


def test_pluecker_examples():
    assert pluecker_embed(ls(MU)).coords == (1, -1, 1, -2, 1, 1)
    assert pluecker_embed(ls((1,) * 5)).coords == (1, -1, 1, 1, 1, 1)
    p = pluecker_embed(ls((3, 5, 7, 11, 13)))
    assert p["24"] == p["14"] * p["34"]
    assert pluecker_relation(PlueckerPoint.of((1, -1, 1, -2, 1, 1))) == 0
    assert pluecker_relation(PlueckerPoint.of((1, -1, 1, 1, 1, 1))) == 3
    assert pluecker_relation(PlueckerPoint.of((1, 0, 0, 0, 0, 1))) == 1


def test_curvature_pluecker_identity_random_rationals():
    rng = random.Random(17)
    for _ in range(1000):
        mu = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 20), rng.randint(1, 20)) for _ in range(5)]
        L = ls(mu)
        p = pluecker_embed(L)
        assert pluecker_relation(p) == p["14"] * p["23"] * curvature(L)


def test_line_to_local_system_examples():
    assert localsystem_from_line(PlueckerPoint.of((1, -1, 1, -2, 1, 1))).mu == MU
    assert localsystem_from_line(PlueckerPoint.of((2, -2, 2, -4, 2, 2))).mu == MU
    with pytest.raises(DomainError) as info:
        localsystem_from_line(PlueckerPoint.of((1, 1, 1, 1, 1, 1)))
    assert info.value.code == "not_a_line"
    with pytest.raises(DomainError) as info:
        localsystem_from_line(PlueckerPoint.of((1, 0, 1, 1, 1, 1)))
    assert info.value.code == "non_generic_line"


def test_round_trip_over_f7():
    for L in unobstructed_systems(7):
        back = localsystem_from_line(pluecker_embed(L))
        assert back == L and curvature(back) == 0


def test_koszul_examples():
    assert koszul_hf((5,), (5,), F7) == {0: 1, 1: 1}
    assert koszul_hf((5,), (3,), F7) == {0: 0, 1: 0}
    assert koszul_hf((1, 2, 1), (1, 2, 1), GF(3)) == {0: 1, 1: 3, 2: 3, 3: 1}
    with pytest.raises(ValueError):
        koszul_hf((0,), (1,), F7)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_koszul_against_brute_force(p, m):
    pairs = list(itertools.product(itertools.product(range(1, p), repeat=m), repeat=2))
    random.Random(m * p).shuffle(pairs)
    for alpha, z in pairs[:12]:
        ranks = koszul_hf(alpha, z, GF(p))
        v = [(b - a) % p for a, b in zip(alpha, z)]
        dims, mats = koszul_matrices(v, p)
        assert ranks == brute_cohomology(dims, mats, p)
        assert sum(ranks.values()) == (2 ** m if alpha == z else 0)


def test_pants_examples():
    assert pants_hf((1, 1), (1, -2), (1, 1, 1), QQ) == (1, 1)
    assert pants_hf((1, 1), (1, 1), (1, 1, 1), QQ) == (0, 0)
    assert pants_hf((1, 1), (1, 1), (1, 1, 1), GF(3)) == (1, 1)
    with pytest.raises(ValueError):
        pants_hf((0, 1), (1, 1))


def test_hf_support_check_examples():
    L = ls(MU, F7)
    assert all(pair == (1, 1) for pair in hf_support_check(L, (4, 1, 2)))
    assert any(pair == (0, 0) for pair in hf_support_check(L, (1, 1, 1)))
    assert hf_support_check(L, (1, 1, 1))[0] == (0, 0)
    with pytest.raises(DomainError) as info:
        hf_support_check(ls((1,) * 5, F7), (1, 1, 1))
    assert info.value.code == "obstructed_brane"


def test_any_two_relations_force_the_third():
    units = list(range(1, 7))
    for L in unobstructed_systems(7):
        rels = support_relations(L)
        for x in itertools.product(units, repeat=3):
            x = [F7(c) for c in x]
            zero = [r.evaluate(x) == 0 for r in rels]
            if sum(zero) >= 2:
                assert all(zero)


def test_support_examples():
    pts = support_points(ls(MU, F7))
    assert [tuple(int(c) for c in p) for p in pts] == [(2, 2, 3), (3, 5, 6), (4, 1, 2), (5, 4, 5)]
    assert brute_force_support(ls(MU, F7)) == pts
    assert brute_force_support(ls(MU), 7) == pts
    for r in support_relations(ls(MU, F7)):
        assert all(r.evaluate(p) == 0 for p in pts)
    assert len(pts) <= 8
    ones = ls((1,) * 5, GF(3))
    assert support_points(ones) == brute_force_support(ones)
    with pytest.raises(DomainError):
        brute_force_support(ls((1,) * 5, F7))


def test_support_against_independent_enumeration_over_f11():
    rng = random.Random(5)
    systems = [L for L in unobstructed_systems(11)]
    for L in rng.sample(systems, 40):
        mu = [int(m) for m in L.mu]
        expected = brute_support(printed_relations(mu, 11), 11)
        assert [tuple(int(c) for c in p) for p in support_points(L)] == expected
        assert len(expected) <= 12


def test_generator_spectrum():
    spec = generator_spectrum((10, 20, 10))
    assert spec.negative_sheet == {1: 10, 2: 20, 3: 10}
    assert spec.positive_sheet == {-1: 10, 0: 20, 1: 10}
    assert spec.torus_summands == ({2: 1, 3: 2, 4: 1}, {-1: 1, 0: 2, 1: 1})
    assert generator_spectrum((0, 0, 0)).total == {-1: 1, 0: 2, 1: 1, 2: 1, 3: 2, 4: 1}
    assert spec.total == {-1: 11, 0: 22, 1: 21, 2: 21, 3: 12, 4: 1}
