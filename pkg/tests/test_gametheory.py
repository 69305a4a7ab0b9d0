"""Exact game analysis: scenario classification, equilibria, repeated-game thresholds."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dagsim.gametheory import (
    BaseGame,
    G,
    GameError,
    H,
    best_response_to_mixed,
    classify,
    discounted_payoff,
    format_analysis,
    grim_trigger_compare,
    min_discount_factor,
    mixed_nash_2x2,
    pure_nash,
    strictly_dominates,
)

S1 = BaseGame(1, 0, 2, 3)
S2 = BaseGame(1, 0, 3, 2)
S3 = BaseGame(2, 0, 3, 1)
S4 = BaseGame(2, 1, 3, 0)
S5 = BaseGame(1, Fraction(1, 2), Fraction(3, 2), 1)


class TestClassify:
    @pytest.mark.parametrize(
        "game,label",
        [(S1, "S1"), (S2, "S2"), (S3, "S3"), (S4, "S4"), (S5, "S5")],
    )
    def test_scenarios(self, game, label):
        assert classify(game) == label

    def test_all_ties_unclassified(self):
        assert classify(BaseGame(0, 0, 0, 0)) == "Unclassified"

    def test_float_input_snaps_to_rationals(self):
        game = BaseGame(1.0, 0.5, 1.5, 1.0)
        assert game.b == Fraction(1, 2) and game.c == Fraction(3, 2)
        assert classify(game) == "S5"


class TestPureNash:
    def test_s3_unique_gg(self):
        assert pure_nash(S3) == [(G, G)]

    def test_s4_anti_coordination(self):
        assert set(pure_nash(S4)) == {(H, G), (G, H)}

    def test_total_indifference_all_profiles(self):
        assert len(pure_nash(BaseGame(1, 1, 1, 1))) == 4


class TestDominance:
    def test_s3_greedy_dominates(self):
        assert strictly_dominates(S3, G) is True

    def test_s4_greedy_does_not_dominate(self):
        assert strictly_dominates(S4, G) is False

    def test_equal_a_c_not_strict(self):
        assert strictly_dominates(BaseGame(2, 0, 2, 1), G) is False

    def test_honest_can_dominate(self):
        assert strictly_dominates(BaseGame(3, 2, 1, 0), H) is True


class TestMixed:
    def test_s4_half_half(self):
        mixed = mixed_nash_2x2(S4)
        assert mixed.p_h == Fraction(1, 2)
        assert mixed.expected_payoff == Fraction(3, 2)

    def test_s3_has_none(self):
        assert mixed_nash_2x2(S3) is None

    def test_symmetric_coordination(self):
        mixed = mixed_nash_2x2(BaseGame(2, 1, 1, 2))  # a=d, b=c
        assert mixed.p_h == Fraction(1, 2)
        assert mixed.expected_payoff == Fraction(3, 2)


class TestBestResponse:
    @pytest.mark.parametrize("p", [0, Fraction(1, 4), Fraction(1, 2), Fraction(9, 10), 1])
    def test_s3_always_greedy(self, p):
        assert best_response_to_mixed(S3, p) == G

    def test_s4_indifferent_at_half(self):
        assert best_response_to_mixed(S4, Fraction(1, 2)) == "indifferent"

    def test_pure_honest_opponent(self):
        assert best_response_to_mixed(BaseGame(3, 0, 2, 1), 1) == H

    def test_out_of_range_rejected(self):
        with pytest.raises(GameError):
            best_response_to_mixed(S3, 2)


class TestMinDiscountFactor:
    def test_s3_exactly_half(self):
        assert min_discount_factor(S3) == Fraction(1, 2)

    def test_costless_agreement(self):
        assert min_discount_factor(BaseGame(3, 0, 3, 1)) == 0

    def test_s5_exactly_one(self):
        assert min_discount_factor(S5) == 1

    def test_toothless_punishment_rejected(self):
        with pytest.raises(GameError):
            min_discount_factor(S1)  # d > c


class TestDiscountedPayoff:
    def test_constant_stream_approaches_closed_form(self):
        total = discounted_payoff([100.0] * 2000, 0.5)
        assert total == pytest.approx(200.0)

    def test_zero_discount_keeps_first(self):
        assert discounted_payoff([7.0, 100.0, 100.0], 0.0) == 7.0

    def test_hand_computed(self):
        assert discounted_payoff([1.0, 2.0, 3.0], 0.9) == pytest.approx(5.23)

    @pytest.mark.parametrize("delta", [-0.1, 1.0, 1.5])
    def test_discount_range_enforced(self, delta):
        with pytest.raises(GameError):
            discounted_payoff([1.0], delta)


class TestGrimTrigger:
    def test_patient_player_complies(self):
        assert grim_trigger_compare(S3, 0.6, 1000) == "comply"

    def test_impatient_player_deviates(self):
        assert grim_trigger_compare(S3, 0.4, 1000) == "deviate"

    def test_myopic_deviates_when_tempted(self):
        assert grim_trigger_compare(S3, 0.0, 1000) == "deviate"

    def test_flip_brackets_threshold(self):
        assert grim_trigger_compare(S3, 0.500002, 10**6) == "comply"
        assert grim_trigger_compare(S3, 0.499998, 10**6) == "deviate"

    def test_preconditions(self):
        with pytest.raises(GameError):
            grim_trigger_compare(S1, 0.5, 100)
        with pytest.raises(GameError):
            grim_trigger_compare(S3, 0.5, 0)
        with pytest.raises(GameError):
            grim_trigger_compare(S3, 1.0, 100)


class TestFormatAnalysis:
    def test_s3_report_lines(self):
        lines = format_analysis(S3).splitlines()
        assert "scenario: S3" in lines
        assert "pne: (G,G)" in lines
        assert "delta_min: 0.5" in lines
        assert "dominant: G" in lines

    def test_s4_report_lines(self):
        lines = format_analysis(S4).splitlines()
        assert "pne: (H,G), (G,H)" in lines
        assert "mne: p_h=0.5 payoff=1.5" in lines

    def test_undefined_threshold(self):
        assert "delta_min: undefined" in format_analysis(S1).splitlines()


_payoffs = st.fractions(
    min_value=-50, max_value=50, max_denominator=20
)


@st.composite
def games(draw):
    return BaseGame(draw(_payoffs), draw(_payoffs), draw(_payoffs), draw(_payoffs))


@given(
    games(),
    st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10),
    st.fractions(min_value=-20, max_value=20, max_denominator=10),
)
def test_positive_affine_invariance(game, scale, shift):
    mapped = BaseGame(
        scale * game.a + shift,
        scale * game.b + shift,
        scale * game.c + shift,
        scale * game.d + shift,
    )
    assert classify(mapped) == classify(game)
    assert pure_nash(mapped) == pure_nash(game)
    assert strictly_dominates(mapped, G) == strictly_dominates(game, G)
    assert strictly_dominates(mapped, H) == strictly_dominates(game, H)
    original_mixed, mapped_mixed = mixed_nash_2x2(game), mixed_nash_2x2(mapped)
    if original_mixed is None:
        assert mapped_mixed is None
    else:
        assert mapped_mixed.p_h == original_mixed.p_h
    if game.c > game.d:
        assert min_discount_factor(mapped) == min_discount_factor(game)
    for p in (0, Fraction(1, 3), 1):
        assert best_response_to_mixed(mapped, p) == best_response_to_mixed(game, p)


@given(games())
def test_dominant_greedy_forces_unique_gg(game):
    if strictly_dominates(game, G):
        assert pure_nash(game) == [(G, G)]
        assert mixed_nash_2x2(game) is None


@given(games())
def test_hh_never_stable_when_deviation_tempts(game):
    if game.c > game.a:
        assert (H, H) not in pure_nash(game)
