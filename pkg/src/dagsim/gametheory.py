"""Exact analysis of the symmetric 2x2 honest/greedy base game and its repeated extension.

The base game has four payoff levels: ``a`` for (H,H), ``b`` for the honest
side of (H,G), ``c`` for the greedy side of (H,G), and ``d`` for (G,G); the
game is symmetric, so (G,H) mirrors (H,G). Payoffs are kept as exact
rationals internally so that scenario classification and equilibrium sets
never depend on floating-point ties; float inputs are snapped to the nearest
rational within 1e-9.

Five scenario shapes are recognized:

* S1: d > c > a > b
* S2: c > d > a > b
* S3: c > a > d > b   (prisoner's-dilemma shape)
* S4: c > a > b > d   (anti-coordination shape)
* S5: a = d, c > a, c > b   (zero-sum shape)

anything else classifies as "Unclassified".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "H",
    "G",
    "BaseGame",
    "MixedEquilibrium",
    "GameError",
    "classify",
    "pure_nash",
    "strictly_dominates",
    "mixed_nash_2x2",
    "best_response_to_mixed",
    "min_discount_factor",
    "discounted_payoff",
    "grim_trigger_compare",
    "format_analysis",
]

H = "H"
G = "G"

_PROFILES = ((H, H), (H, G), (G, H), (G, G))

# Denominator bound such that float conversion lands within 1e-9 of the input.
_FLOAT_SNAP_DENOMINATOR = 10**9


class GameError(ValueError):
    pass


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise GameError(f"payoff must be finite, got {value!r}")
        return Fraction(value).limit_denominator(_FLOAT_SNAP_DENOMINATOR)
    raise GameError(f"cannot interpret payoff {value!r}")


@dataclass(frozen=True)
class BaseGame:
    """Payoff levels of the symmetric 2x2 base game."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _to_fraction(getattr(self, name)))

    def payoffs(self, s1: str, s2: str) -> tuple[Fraction, Fraction]:
        """(player-1, player-2) payoffs for a pure profile."""
        if s1 == H and s2 == H:
            return self.a, self.a
        if s1 == H and s2 == G:
            return self.b, self.c
        if s1 == G and s2 == H:
            return self.c, self.b
        if s1 == G and s2 == G:
            return self.d, self.d
        raise GameError(f"unknown profile ({s1!r}, {s2!r})")


@dataclass(frozen=True)
class MixedEquilibrium:
    """Symmetric interior mixed equilibrium: both players play H with ``p_h``."""

    p_h: Fraction
    expected_payoff: Fraction


def classify(game: BaseGame) -> str:
    """Scenario label per the orderings above; S5 is checked first since it
    overlaps none of S1-S4 (those all require a > b or d distinct from a)."""
    a, b, c, d = game.a, game.b, game.c, game.d
    if a == d and c > a and c > b:
        return "S5"
    if d > c > a > b:
        return "S1"
    if c > d > a > b:
        return "S2"
    if c > a > d > b:
        return "S3"
    if c > a > b > d:
        return "S4"
    return "Unclassified"


def pure_nash(game: BaseGame) -> list[tuple[str, str]]:
    """All pure profiles where no unilateral deviation strictly improves.

    Equal-payoff deviations do not break an equilibrium (weak PNE).
    """
    result = []
    for s1, s2 in _PROFILES:
        u1, u2 = game.payoffs(s1, s2)
        alt1, _ = game.payoffs(G if s1 == H else H, s2)
        _, alt2 = game.payoffs(s1, G if s2 == H else H)
        if alt1 <= u1 and alt2 <= u2:
            result.append((s1, s2))
    return result


def strictly_dominates(game: BaseGame, strategy: str) -> bool:
    """True iff ``strategy`` beats the other strategy against both opponent moves."""
    if strategy == G:
        return game.c > game.a and game.d > game.b
    if strategy == H:
        return game.a > game.c and game.b > game.d
    raise GameError(f"unknown strategy {strategy!r}")


def mixed_nash_2x2(game: BaseGame) -> MixedEquilibrium | None:
    """The interior indifference solution, when one exists.

    Both players play H with probability ``p`` solving
    ``p*a + (1-p)*b = p*c + (1-p)*d``; returns None when the solution is not
    strictly inside (0, 1).
    """
    denominator = (game.a - game.c) + (game.d - game.b)
    if denominator == 0:
        return None
    p = (game.d - game.b) / denominator
    if not (0 < p < 1):
        return None
    expected = p * game.a + (1 - p) * game.b
    return MixedEquilibrium(p, expected)


def best_response_to_mixed(game: BaseGame, opponent_p_h) -> str:
    """Pure best response against an opponent playing H with probability
    ``opponent_p_h``; returns ``"indifferent"`` on exact payoff equality."""
    p = _to_fraction(opponent_p_h)
    if not (0 <= p <= 1):
        raise GameError(f"opponent_p_h must be in [0, 1], got {opponent_p_h!r}")
    expected_h = p * game.a + (1 - p) * game.b
    expected_g = p * game.c + (1 - p) * game.d
    if expected_h > expected_g:
        return H
    if expected_g > expected_h:
        return G
    return "indifferent"


def min_discount_factor(game: BaseGame) -> Fraction:
    """Folk-theorem threshold (c - a) / (c - d).

    ``c`` is the one-shot deviation payoff, ``a`` the agreement payoff, and
    ``d`` the perpetual punishment payoff; requires c > d, otherwise the
    punishment has no teeth and the threshold is undefined.
    """
    if game.c <= game.d:
        raise GameError("min_discount_factor requires c > d (punishment below deviation)")
    return (game.c - game.a) / (game.c - game.d)


def discounted_payoff(stream: Sequence, discount) -> float:
    """Sum of ``discount**(t-1) * stream[t]`` over the finite stream."""
    delta = float(discount)
    if not (0.0 <= delta < 1.0):
        raise GameError(f"discount factor must be in [0, 1), got {discount!r}")
    total = 0.0
    weight = 1.0
    for payoff in stream:
        total += weight * float(payoff)
        weight *= delta
    return total


def _geometric_sum(delta: float, terms: int) -> float:
    # sum_{t=0}^{terms-1} delta**t, closed form; terms can be ~1e6
    if terms <= 0:
        return 0.0
    if delta == 0.0:
        return 1.0
    return (1.0 - delta**terms) / (1.0 - delta)


def grim_trigger_compare(game: BaseGame, discount, horizon: int) -> str:
    """``"comply"`` or ``"deviate"`` against a grim-trigger opponent.

    Compliance earns ``a`` every round; a one-shot deviation earns ``c`` once
    and the punishment payoff ``d`` forever after. Evaluated over ``horizon``
    rounds with the geometric closed form, so the infinite-horizon limit
    flips exactly at ``min_discount_factor``.
    """
    delta = float(discount)
    if not (0.0 <= delta < 1.0):
        raise GameError(f"discount factor must be in [0, 1), got {discount!r}")
    if game.c <= game.d:
        raise GameError("grim_trigger_compare requires c > d")
    if horizon < 1:
        raise GameError(f"horizon must be >= 1, got {horizon}")
    comply = float(game.a) * _geometric_sum(delta, horizon)
    deviate = float(game.c) + float(game.d) * delta * _geometric_sum(delta, horizon - 1)
    return "comply" if comply >= deviate else "deviate"


def _fraction_text(value: Fraction) -> str:
    return repr(float(value))


def format_analysis(game: BaseGame) -> str:
    """Fixed ``key: value`` report used by the command-line interface."""
    lines = [f"scenario: {classify(game)}"]
    if strictly_dominates(game, G):
        dominant = G
    elif strictly_dominates(game, H):
        dominant = H
    else:
        dominant = "none"
    lines.append(f"dominant: {dominant}")
    equilibria = pure_nash(game)
    if equilibria:
        lines.append("pne: " + ", ".join(f"({s1},{s2})" for s1, s2 in equilibria))
    else:
        lines.append("pne: none")
    mixed = mixed_nash_2x2(game)
    if mixed is None:
        lines.append("mne: none")
    else:
        lines.append(
            f"mne: p_h={_fraction_text(mixed.p_h)} payoff={_fraction_text(mixed.expected_payoff)}"
        )
    try:
        lines.append(f"delta_min: {_fraction_text(min_discount_factor(game))}")
    except GameError:
        lines.append("delta_min: undefined")
    return "\n".join(lines)
