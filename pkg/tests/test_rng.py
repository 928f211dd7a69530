from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from dahacm.rng import DEN_BOUND, NUM_BOUND, RationalStream


def test_same_seed_same_stream():
    a, b = RationalStream(42), RationalStream(42)
    assert a.rationals(20) == b.rationals(20)
    assert RationalStream(42).rationals(5) != RationalStream(43).rationals(5)


def test_children_are_independent_of_parent_use():
    a = RationalStream(9)
    a.rationals(100)
    assert a.child(3).rationals(4) == RationalStream(9).child(3).rationals(4)
    assert RationalStream(9).child(3).rationals(4) != RationalStream(9).child(4).rationals(4)


def test_negative_seed_rejected():
    with pytest.raises(ValueError):
        RationalStream(-1)


@given(st.integers(0, 2**63), st.sampled_from([Fraction(2), Fraction(3, 2), Fraction(-5, 7)]))
def test_chart_values_are_separated(seed, tau):
    vals = RationalStream(seed).chart_values(4, tau)
    assert len(set(vals)) == 4 and all(vals)
    assert all(tau * a != b / tau for a in vals for b in vals if a != b)
    assert all(abs(v.numerator) <= NUM_BOUND and v.denominator <= DEN_BOUND for v in vals)
