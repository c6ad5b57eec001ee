import random
from fractions import Fraction

import pytest

from conftest import random_nonzero_poly
from toriclg import intlinalg, laurent, period
from toriclg.errors import ZeroPolynomial


def test_p2_model_sequence():
    f = laurent.parse("x + y + 1/(x*y)")
    seq = period.period_sequence(f, 6)
    assert list(seq.values) == [1, 0, 0, 6, 0, 0, 90]


def test_a0_is_one():
    rng = random.Random(1)
    for _ in range(10):
        f = random_nonzero_poly(rng, 2)
        assert period.period_sequence(f, 0).values == (1,)


def test_quadric_first_values():
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    seq = period.period_sequence(f0, 3)
    assert list(seq.values) == [1, 0, 0, 12]


def test_periods_equal_examples():
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    f1 = laurent.parse("(x+1)/(x*y*z)+y*(x+1)+z")
    assert period.periods_equal(f0, f1, 3)
    assert period.periods_equal(f0, f0, 8)
    p2 = laurent.parse("x + y + 1/(x*y)")
    f0_2d = laurent.parse("(x+1)^2/(x*y)+y", ("x", "y"))
    assert not period.periods_equal(p2, f0_2d, 3)


def test_p2_vs_quadric_differ_at_3():
    p2 = laurent.parse("x + y + 1/(x*y)")
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    assert period.period_sequence(p2, 3)[3] == 6
    assert period.period_sequence(f0, 3)[3] == 12


def test_oracle_constant_geometric():
    f = laurent.parse("5", ("x",))
    seq = period.period_oracle(f, 4)
    assert list(seq.values) == [1, 5, 25, 125, 625]
    assert period.period_sequence(f, 4).values == seq.values


def test_oracle_equivalence_random():
    rng = random.Random(23)
    for _ in range(50):
        nv = rng.randint(2, 3)
        f = random_nonzero_poly(rng, nv, max_terms=5, exp_bound=3)
        N = rng.randint(0, 8)
        assert period.period_sequence(f, N).values == period.period_oracle(f, N).values


def test_p2_vanishing_off_multiples_of_three():
    f = laurent.parse("x + y + 1/(x*y)")
    seq = period.period_sequence(f, 12)
    for i, v in enumerate(seq.values):
        if i % 3 != 0:
            assert v == 0
        else:
            assert v > 0


def test_invariance_under_origin_fixing_substitution():
    rng = random.Random(41)
    for _ in range(15):
        nv = rng.randint(2, 3)
        f = random_nonzero_poly(rng, nv, max_terms=5, exp_bound=3)
        while True:
            A = [[rng.randint(-2, 2) for _ in range(nv)] for _ in range(nv)]
            if abs(intlinalg.det(A)) == 1:
                break
        g = laurent.monomial_substitute(f, A)
        assert period.periods_equal(f, g, 6)


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        period.period_sequence(laurent.zero(("x",)), 3)
    with pytest.raises(ZeroPolynomial):
        period.period_oracle(laurent.zero(("x",)), 3)


def test_sequence_labels_do_not_affect_equality():
    f = laurent.parse("x + y + 1/(x*y)")
    a = period.period_sequence(f, 4, source_id="one")
    b = period.period_sequence(f, 4, source_id="two")
    assert a == b
    assert a.values == b.values


def test_rational_coefficients_stay_exact():
    f = laurent.LaurentPoly(("x", "y"), {(1, 0): Fraction(1, 2), (-1, 0): Fraction(2), (0, 1): Fraction(1), (0, -1): Fraction(1)})
    seq = period.period_sequence(f, 4)
    assert seq[2] == 2 * Fraction(1, 2) * 2 + 2 * 1
    assert seq.values == period.period_oracle(f, 4).values
