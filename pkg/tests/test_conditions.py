from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peribessel import ConditionVerdict, conjugate_exponent, embedding_holds, strichartz_case

rationals = st.fractions(min_value=Fraction(0), max_value=Fraction(5))
exponents = st.fractions(min_value=Fraction(11, 10), max_value=Fraction(8))


def test_conjugate_exponent_values():
    assert conjugate_exponent(2) == 2
    assert conjugate_exponent(4) == Fraction(4, 3)
    assert conjugate_exponent(1.5) == pytest.approx(3.0, rel=1e-15)


def test_conjugate_exponent_exact_for_fractions():
    assert conjugate_exponent(Fraction(4, 3)) == 4
    assert isinstance(conjugate_exponent(Fraction(4, 3)), Fraction)


def test_conjugate_exponent_rejects_endpoint():
    for bad in (1, 1.0, 0.5, Fraction(1)):
        with pytest.raises(ValueError):
            conjugate_exponent(bad)


@given(st.floats(min_value=1.0 + 1e-6, max_value=100.0))
@settings(max_examples=200, deadline=None)
def test_conjugate_involution_floats(p):
    assert abs(float(conjugate_exponent(conjugate_exponent(p))) - p) <= 1e-14 * p


@given(exponents)
@settings(max_examples=100, deadline=None)
def test_conjugate_involution_exact(p):
    assert conjugate_exponent(conjugate_exponent(p)) == p


class TestVerdict:
    def test_tag_must_match_holds(self):
        with pytest.raises(ValueError):
            ConditionVerdict(True, "none", "")
        with pytest.raises(ValueError):
            ConditionVerdict(False, "emb-1", "")

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            ConditionVerdict(True, "emb-7", "")


class TestEmbedding:
    def test_identical_spaces(self):
        verdict = embedding_holds(1, 1, 2, 2, 1)
        assert verdict.holds and verdict.case_tag == "emb-1"

    def test_smoothness_for_integrability(self):
        verdict = embedding_holds(1, 0, 2, 6, 2)
        assert verdict.holds and verdict.case_tag == "emb-1"

    def test_fails_both_conditions(self):
        verdict = embedding_holds(0, 1, 2, 2, 1)
        assert not verdict.holds and verdict.case_tag == "none"
        assert "condition" in verdict.detail

    def test_case_two(self):
        verdict = embedding_holds(2, 1, 4, 2, 3)
        assert verdict.holds and verdict.case_tag == "emb-2"

    def test_rejects_exponent_range(self):
        with pytest.raises(ValueError):
            embedding_holds(1, 1, 1, 2, 1)
        with pytest.raises(ValueError):
            embedding_holds(1, 1, 2, Fraction(1), 1)

    @given(rationals, rationals, exponents, exponents, st.integers(1, 3))
    @settings(max_examples=200, deadline=None)
    def test_monotone_in_s_and_t(self, s, t, p, q, n):
        base = embedding_holds(s, t, p, q, n).holds
        if base:
            assert embedding_holds(s + 1, t, p, q, n).holds
            assert embedding_holds(s, t - 1, p, q, n).holds


class TestStrichartz:
    def test_balanced_l2_case(self):
        verdict = strichartz_case(1, 1, 2, 2, 1)
        assert verdict.holds
        assert verdict.case_tag == "strich-1"

    def test_gate_violation(self):
        verdict = strichartz_case(0.4, 0.1, 2, 2, 1)
        assert not verdict.holds
        assert "strict" in verdict.detail

    def test_case_two(self):
        verdict = strichartz_case(2, 0, 4, 2, 3)
        assert verdict.holds and verdict.case_tag == "strich-2"

    def test_boundary_equality_fails(self):
        # s = n/p exactly: the gate is strict, so exact rationals must refuse
        verdict = strichartz_case(Fraction(1, 2), Fraction(0), 2, 2, 1)
        assert not verdict.holds

    def test_float_boundary_also_exact(self):
        assert not strichartz_case(0.5, 0.0, 2.0, 2.0, 1).holds
        assert strichartz_case(0.5000001, 0.0, 2.0, 2.0, 1).holds

    def test_t_branch(self):
        verdict = strichartz_case(0.4, 1, 2, 2, 1)
        assert verdict.holds and verdict.case_tag == "strich-3"

    def test_rejects_negative_smoothness(self):
        with pytest.raises(ValueError):
            strichartz_case(-0.5, 1, 2, 2, 1)

    @given(rationals, rationals, exponents, exponents, st.integers(1, 3))
    @settings(max_examples=300, deadline=None)
    def test_swap_symmetry(self, s, t, p, q, n):
        direct = strichartz_case(s, t, p, q, n)
        mirrored = strichartz_case(t, s, conjugate_exponent(q), conjugate_exponent(p), n)
        assert direct.holds == mirrored.holds
