import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourvalent.algebra import (
    GF, QQ, ComplexError, FieldMismatchError, GradedComplex, Matrix, Mod,
    cohomology_ranks, format_element, inv, parse_field, rank, solve_affine,
)

from oracles import brute_cohomology, brute_inverse, brute_left_annihilators


def test_inverse_examples():
    assert inv(Fraction(1)) == 1
    assert inv(Fraction(-2)) == Fraction(-1, 2)
    assert inv(Mod(3, 7)) == Mod(brute_inverse(3, 7), 7) == Mod(5, 7)


@pytest.mark.parametrize("zero", [Fraction(0), Mod(0, 7)])
def test_inverse_of_zero_is_rejected(zero):
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        inv(zero)


def test_rationals_stay_reduced():
    x = QQ("-6/4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert format_element(x) == "-3/2"


def test_mixed_moduli_rejected():
    with pytest.raises(FieldMismatchError):
        Mod(1, 5) + Mod(1, 7)
    with pytest.raises(FieldMismatchError):
        Mod(1, 5) * Fraction(1, 2)


def test_modulus_must_be_small_prime():
    for bad in (1, 4, 2**31 + 11, 2**31 - 2):
        with pytest.raises(ValueError):
            GF(bad)
    assert GF(2**31 - 1).p == 2**31 - 1


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("fp:11") == GF(11)
    with pytest.raises(ValueError):
        parse_field("fp:x")


def test_rank_examples():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zeros(2, 2)) == 0
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1


def test_rank_rejects_mixed_fields():
    with pytest.raises(FieldMismatchError):
        Matrix.from_rows([[Mod(1, 5), Fraction(1, 2)]])
    with pytest.raises(FieldMismatchError):
        Matrix.from_rows([[Mod(1, 5), Mod(1, 7)]])


def test_cohomology_examples():
    zero = GradedComplex.from_lists(0, (1, 1), [[[0]]], QQ)
    assert cohomology_ranks(zero) == {0: 1, 1: 1}
    assert cohomology_ranks(GradedComplex.two_term(5, QQ)) == {0: 0, 1: 0}
    assert cohomology_ranks(GradedComplex.two_term(0, QQ)) == {0: 1, 1: 1}


def test_complex_validation():
    with pytest.raises(ComplexError):
        GradedComplex.from_lists(0, (1, 1, 1), [[[1]], [[1]]], QQ)
    with pytest.raises(ComplexError):
        GradedComplex(0, (1, 2), (Matrix.identity(1),), QQ)


def test_solve_affine_examples():
    sol = solve_affine(Matrix.identity(2), [3, 4])
    assert sol.basepoint == (3, 4) and sol.kernel == ()
    assert solve_affine(Matrix.zeros(1, 2), [1]) is None


def test_solve_affine_against_enumeration_over_f7():
    f = GF(7)
    sol = solve_affine(Matrix.from_rows([[1, 1]], f), [0])
    assert sol.basepoint == (0, 0)
    assert sol.kernel == ((f(-1), f(1)),)
    from_solution = {sol.point((c,)) for c in f.elements()}
    enumerated = {(f(a), f(b)) for a in range(7) for b in range(7) if (a + b) % 7 == 0}
    assert from_solution == enumerated


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3), st.integers(1, 4))
def test_solve_affine_points_satisfy_system(seed, rows, cols):
    rng = random.Random(seed)
    f = GF(5)
    a = Matrix.from_rows([[rng.randrange(5) for _ in range(cols)] for _ in range(rows)], f)
    b = [f(rng.randrange(5)) for _ in range(rows)]
    sol = solve_affine(a, b)
    brute = {x for x in itertools.product(range(5), repeat=cols)
             if a.apply(list(x)) == b}
    if sol is None:
        assert not brute
        return
    pts = {tuple(int(c) for c in sol.point(cs))
           for cs in itertools.product(list(f.elements()), repeat=sol.dimension)}
    assert pts == brute


def _elements(field):
    if field == QQ:
        return st.fractions(min_value=-50, max_value=50, max_denominator=30)
    return st.integers(0, field.p - 1).map(field)


FIELDS = [QQ, GF(3), GF(5), GF(7), GF(11)]


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_field_axioms(field):
    @settings(max_examples=80, deadline=None)
    @given(_elements(field), _elements(field), _elements(field))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a + (-a) == 0
        if a != 0:
            assert a * inv(a) == 1
    check()


@pytest.mark.parametrize("field", [QQ, GF(5), GF(7)], ids=str)
def test_rank_invariant_under_row_operations(field):
    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32))
    def check(seed):
        rng = random.Random(seed)
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[field(rng.randint(-3, 3)) for _ in range(c)] for _ in range(r)]
        base = rank(Matrix.from_rows(rows, field))
        assert base <= min(r, c)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert rank(Matrix.from_rows(shuffled, field)) == base
        scaled = [[x * s for x in row] for row, s in
                  zip(rows, [field(rng.choice([1, 2, -1, 3])) for _ in rows])]
        if all(s != 0 for s in (field(1), field(2), field(-1), field(3))):
            assert rank(Matrix.from_rows(scaled, field)) == base
    check()


def _random_complex(rng, p):
    # three-term complex; the second differential is drawn from the annihilator of the first
    while True:
        dims = [rng.randint(0, 3) for _ in range(3)]
        if 1 <= sum(dims) <= 8:
            break
    d0 = [[rng.randrange(p) for _ in range(dims[0])] for _ in range(dims[1])]
    if dims[1] and dims[0]:
        ann = brute_left_annihilators(d0, dims[1], p)
    else:
        ann = [[rng.randrange(p) for _ in range(dims[1])] for _ in range(4)]
    d1 = [list(rng.choice(ann)) if dims[1] else [] for _ in range(dims[2])]
    return dims, [d0, d1]


@pytest.mark.parametrize("p", [2, 3])
def test_cohomology_matches_brute_force(p):
    rng = random.Random(1000 + p)
    for _ in range(60):
        dims, diffs = _random_complex(rng, p)
        c = GradedComplex.from_lists(-1, dims, diffs, GF(p))
        assert cohomology_ranks(c) == brute_cohomology(dims, diffs, p, dmin=-1)
