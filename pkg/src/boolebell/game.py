"""The three-question, two-answer game played by two separated participants.

Participants who must always agree on identical questions can only use a
*joint* strategy, a function from questions {A, B, C} to answers {R, S}.
Swapping every answer leaves all same/different patterns unchanged, so the
eight strategies fall into four classes. A mixture of the classes must then
match the target same-answer frequencies; for the entangled-pair targets the
unique solution has a negative weight.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ProbabilityAssignment, as_rational, check_probability
from .errors import UnsupportedError

QUESTIONS = ("A", "B", "C")
ANSWERS = ("R", "S")
PAIRS = (("A", "B"), ("B", "C"), ("A", "C"))
WEIGHT_NAMES = ("alpha", "beta", "gamma", "delta")


@dataclass(frozen=True)
class Strategy:
    answers: tuple[str, str, str]

    def __post_init__(self):
        if len(self.answers) != 3 or any(a not in ANSWERS for a in self.answers):
            raise ValueError(f"a strategy answers each of A, B, C with R or S: {self.answers!r}")

    def answer(self, question: str) -> str:
        return self.answers[QUESTIONS.index(question)]

    def complement(self) -> Strategy:
        return Strategy(tuple("S" if a == "R" else "R" for a in self.answers))

    def __str__(self):
        return "".join(self.answers)


@dataclass(frozen=True)
class StrategyClass:
    representative: Strategy
    members: tuple[Strategy, Strategy]


@dataclass(frozen=True)
class CorrelationTarget:
    same_when_equal: Fraction
    same_AB: Fraction
    same_BC: Fraction
    same_AC: Fraction

    def __post_init__(self):
        for name in ("same_when_equal", "same_AB", "same_BC", "same_AC"):
            value = as_rational(getattr(self, name))
            check_probability(value, name)
            object.__setattr__(self, name, value)

    @classmethod
    def parse(cls, values: Sequence) -> CorrelationTarget:
        if len(values) != 4:
            raise ValueError("a target has four frequencies: equal, AB, BC, AC")
        return cls(*values)

    def pair_values(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.same_AB, self.same_BC, self.same_AC)


DEFAULT_TARGET = CorrelationTarget(Fraction(1), Fraction(3, 4), Fraction(3, 4), Fraction(1, 4))


@dataclass(frozen=True)
class MixingSolution:
    """Mixing weights over the four strategy classes.

    ``weights`` is ``None`` only when the system is singular; ``feasible``
    then comes from an exact LP over the probability simplex.
    """

    target: CorrelationTarget
    weights: tuple[Fraction, Fraction, Fraction, Fraction] | None
    feasible: bool
    negative_components: tuple[str, ...] = ()
    determined: bool = True


def enumerate_joint_strategies() -> list[Strategy]:
    """All eight joint strategies, RRR first and SSS last."""
    return [Strategy(tuple(a)) for a in itertools.product(ANSWERS, repeat=3)]


def reduce_strategies() -> list[StrategyClass]:
    return [
        StrategyClass(s, (s, s.complement()))
        for s in enumerate_joint_strategies()
        if s.answer("A") == "R"
    ]


def same_result_profile(cls: StrategyClass | Strategy) -> tuple[int, int, int]:
    """(AB, BC, AC) indicators that the strategy answers both questions alike."""
    s = cls.representative if isinstance(cls, StrategyClass) else cls
    return tuple(int(s.answer(x) == s.answer(y)) for x, y in PAIRS)


def mixing_system() -> tuple[list[list[Fraction]], list[str]]:
    """Rows of the 4x4 system: normalization, then one row per question pair."""
    profiles = [same_result_profile(c) for c in reduce_strategies()]
    rows = [[Fraction(1)] * 4]
    for k in range(3):
        rows.append([Fraction(p[k]) for p in profiles])
    return rows, ["sum"] + [x + y for x, y in PAIRS]


def _solve_exact(M, rhs):
    """Gauss-Jordan elimination over Fractions; ``None`` if singular."""
    n = len(M)
    aug = [list(row) + [v] for row, v in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def solve_mixing(target: CorrelationTarget | Sequence) -> MixingSolution:
    if not isinstance(target, CorrelationTarget):
        target = CorrelationTarget.parse(target)
    if target.same_when_equal != 1:
        raise UnsupportedError(
            "joint strategies always agree on equal questions; same_when_equal must be 1"
        )
    M, _ = mixing_system()
    rhs = [Fraction(1), *target.pair_values()]
    weights = _solve_exact(M, rhs)
    if weights is None:
        from .simplex import OPTIMAL, solve_lp

        feasible = solve_lp(M, rhs).status == OPTIMAL
        return MixingSolution(target, None, feasible, determined=False)
    negative = tuple(name for name, w in zip(WEIGHT_NAMES, weights) if w < 0)
    return MixingSolution(target, tuple(weights), not negative, negative)


def target_to_assignment(target: CorrelationTarget) -> ProbabilityAssignment:
    """Map a target to pairwise event data with A, B, C as events 1, 2, 3.

    Event k is "question k is answered R". Assuming each answer is equally
    likely, P(same on X, Y) = P(both R) + P(both S) = 2 P(both R), so
    ``p_XY = same_XY / 2`` and every single is 1/2.
    """
    half = Fraction(1, 2)
    return ProbabilityAssignment.from_mapping(3, {
        (1,): half, (2,): half, (3,): half,
        (1, 2): target.same_AB / 2,
        (1, 3): target.same_AC / 2,
        (2, 3): target.same_BC / 2,
    })

