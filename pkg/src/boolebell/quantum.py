"""Singlet-pair statistics and the Clauser-Horne (CH) expression.

Angles are radians in [0, 2*pi]. Two evaluation paths exist:

* floating: any angles, results accurate to about 1e-12;
* exact: angles given as rational multiples of pi, returning Fractions. The
  half-angle squares ``sin^2(d/2) = (1 - cos d)/2`` are rational only when
  ``cos d`` is, which by Niven's theorem means ``d`` is a multiple of pi/3
  or pi/2. Other differences raise :class:`UnsupportedError`.

The CH combination for settings alpha_1, alpha_2 (particle 1) and beta_1,
beta_2 (particle 2) is::

    p(a1,b1|++) + p(a1,b2|++) + p(a2,b2|++) - p(a2,b1|++) - p1(a1|+) - p2(b2|+)

and every local classical model keeps it within [-1, 0].
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .core import EventScenario, LinearInequality, ProbabilityAssignment, as_rational
from .errors import DomainError, SizeError, UnsupportedError

TWO_PI = 2.0 * math.pi
MAX_SCAN_STEPS = 48


class Spin(str, enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def __str__(self):
        return self.value


def _spin(s) -> Spin:
    try:
        return Spin(s)
    except ValueError:
        raise DomainError(f"spin must be '+' or '-', got {s!r}") from None


def _check_angle(theta: float) -> float:
    if not 0.0 <= theta <= TWO_PI:
        raise DomainError(f"angle {theta!r} is outside [0, 2*pi]")
    return theta


def _check_turns(r: Fraction) -> Fraction:
    r = as_rational(r)
    if not 0 <= r <= 2:
        raise DomainError(f"angle {r}*pi is outside [0, 2*pi]")
    return r


# cos(r*pi) for the residues r mod 2 where it is rational
_RATIONAL_COS = {
    Fraction(0): Fraction(1),
    Fraction(1, 3): Fraction(1, 2),
    Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1): Fraction(-1),
    Fraction(4, 3): Fraction(-1, 2),
    Fraction(3, 2): Fraction(0),
    Fraction(5, 3): Fraction(1, 2),
}


def exact_cos_pi(r: Fraction) -> Fraction:
    """``cos(r * pi)`` as a Fraction; raises if it is irrational."""
    residue = as_rational(r) % 2
    try:
        return _RATIONAL_COS[residue]
    except KeyError:
        raise UnsupportedError(
            f"cos({r}*pi) is irrational; the exact path needs differences in multiples of pi/3 or pi/2"
        ) from None


@dataclass(frozen=True)
class AngleConfig:
    """Measurement angles; ``pi_multiples`` is set when the exact path is available."""

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    pi_multiples: tuple[Fraction, Fraction, Fraction, Fraction] | None = None

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            _check_angle(float(getattr(self, name)))
        if self.pi_multiples is not None:
            turns = tuple(_check_turns(r) for r in self.pi_multiples)
            object.__setattr__(self, "pi_multiples", turns)

    @classmethod
    def from_pi_multiples(cls, a1, a2, b1, b2) -> AngleConfig:
        turns = tuple(_check_turns(r) for r in (a1, a2, b1, b2))
        return cls(*(float(r) * math.pi for r in turns), pi_multiples=turns)

    @classmethod
    def default(cls) -> AngleConfig:
        """alpha1 = pi/3, alpha2 = pi, beta1 = 0, beta2 = 2pi/3."""
        return cls.from_pi_multiples(Fraction(1, 3), 1, 0, Fraction(2, 3))

    @property
    def angles(self) -> tuple[float, float, float, float]:
        return (self.alpha1, self.alpha2, self.beta1, self.beta2)

    @property
    def exact(self) -> bool:
        return self.pi_multiples is not None


# -- singlet model ---------------------------------------------------------

def singlet_joint(alpha: float, beta: float, x, y) -> float:
    """P(particle 1 at ``alpha`` gives x, particle 2 at ``beta`` gives y)."""
    d = (_check_angle(alpha) - _check_angle(beta)) / 2.0
    if _spin(x) == _spin(y):
        return 0.5 * math.sin(d) ** 2
    return 0.5 * math.cos(d) ** 2


def singlet_marginal(angle: float, spin) -> float:
    """Every single-particle outcome has probability 1/2, at any angle."""
    _check_angle(angle)
    _spin(spin)
    return 0.5


def singlet_joint_exact(alpha_pi, beta_pi, x, y) -> Fraction:
    """Exact :func:`singlet_joint` for angles given as multiples of pi."""
    c = exact_cos_pi(_check_turns(alpha_pi) - _check_turns(beta_pi))
    if _spin(x) == _spin(y):
        return (1 - c) / 4
    return (1 + c) / 4


def singlet_marginal_exact(angle_pi, spin) -> Fraction:
    _check_turns(angle_pi)
    _spin(spin)
    return Fraction(1, 2)


def bell_effect_same_prob(theta_i: float, theta_j: float) -> float:
    """Same-answer probability ``cos^2((theta_i - theta_j)/2)``."""
    d = (_check_angle(theta_i) - _check_angle(theta_j)) / 2.0
    return math.cos(d) ** 2


def bell_effect_same_prob_exact(theta_i_pi, theta_j_pi) -> Fraction:
    return (1 + exact_cos_pi(_check_turns(theta_i_pi) - _check_turns(theta_j_pi))) / 2


# questions A, B, C as multiples of pi
BELL_EFFECT_ANGLES = {"A": Fraction(0), "B": Fraction(1, 3), "C": Fraction(2, 3)}


def bell_effect_target():
    """The game target realized exactly by :func:`bell_effect_same_prob`."""
    from .game import CorrelationTarget

    a = BELL_EFFECT_ANGLES
    return CorrelationTarget(
        bell_effect_same_prob_exact(a["A"], a["A"]),
        bell_effect_same_prob_exact(a["A"], a["B"]),
        bell_effect_same_prob_exact(a["B"], a["C"]),
        bell_effect_same_prob_exact(a["A"], a["C"]),
    )


# -- CH expression ---------------------------------------------------------

@dataclass(frozen=True)
class ChBreakdown:
    joint_11: float | Fraction
    joint_12: float | Fraction
    joint_22: float | Fraction
    joint_21: float | Fraction
    marginal_a1: float | Fraction
    marginal_b2: float | Fraction
    total: float | Fraction
    lower_violation: float | Fraction
    upper_violation: float | Fraction

    @property
    def violated(self) -> bool:
        return self.lower_violation > 0 or self.upper_violation > 0


def ch_combination(j11, j12, j22, j21, m_a1, m_b2) -> ChBreakdown:
    """Assemble the CH total from its six terms (Fractions stay exact)."""
    total = j11 + j12 + j22 - j21 - m_a1 - m_b2
    zero = type(total)(0)
    return ChBreakdown(j11, j12, j22, j21, m_a1, m_b2, total,
                       max(zero, -1 - total), max(zero, total))


def ch_value(config: AngleConfig,
             joint: Callable | None = None,
             marginal: Callable | None = None,
             marginal2: Callable | None = None,
             *, exact: bool = False) -> ChBreakdown:
    """Evaluate the CH combination under a model.

    ``joint(alpha, beta, x, y)`` and ``marginal(angle, spin)`` default to the
    singlet model; ``marginal2`` is used for particle 2 and defaults to
    ``marginal``. With ``exact=True`` the singlet model is evaluated in
    Fractions on ``config.pi_multiples``.
    """
    plus = Spin.PLUS
    if exact:
        if not config.exact:
            raise UnsupportedError("exact evaluation needs angles given as multiples of pi")
        a1, a2, b1, b2 = config.pi_multiples
        joint = joint or singlet_joint_exact
        marginal = marginal or singlet_marginal_exact
    else:
        a1, a2, b1, b2 = config.angles
        joint = joint or singlet_joint
        marginal = marginal or singlet_marginal
    marginal2 = marginal2 or marginal
    return ch_combination(
        joint(a1, b1, plus, plus),
        joint(a1, b2, plus, plus),
        joint(a2, b2, plus, plus),
        joint(a2, b1, plus, plus),
        marginal(a1, plus),
        marginal2(b2, plus),
    )


def lhv_assignments() -> list[tuple[Spin, Spin, Spin, Spin]]:
    """The 16 deterministic outcome tables (a1, a2, b1, b2), all-plus first."""
    return [tuple(t) for t in itertools.product((Spin.PLUS, Spin.MINUS), repeat=4)]


def deterministic_ch(assignment: Sequence) -> ChBreakdown:
    """Exact CH breakdown when every outcome is fixed in advance."""
    a1, a2, b1, b2 = (int(_spin(s) == Spin.PLUS) for s in assignment)
    F = Fraction
    return ch_combination(F(a1 * b1), F(a1 * b2), F(a2 * b2), F(a2 * b1), F(a1), F(b2))


def lhv_ch(weights: Sequence) -> ChBreakdown:
    """Exact CH breakdown of a mixture of the 16 deterministic tables."""
    w = [as_rational(v) for v in weights]
    if len(w) != 16:
        raise SizeError("an LHV mixing needs 16 weights")
    if any(v < 0 for v in w) or sum(w) != 1:
        raise DomainError("LHV mixing weights must be nonnegative and sum to 1")
    parts = [deterministic_ch(t) for t in lhv_assignments()]
    fields = ("joint_11", "joint_12", "joint_22", "joint_21", "marginal_a1", "marginal_b2")
    mixed = [sum((wi * getattr(p, f) for wi, p in zip(w, parts)), Fraction(0)) for f in fields]
    return ch_combination(*mixed)


# -- bridge to the polytope ------------------------------------------------

def ch_scenario() -> EventScenario:
    """Events a1, a2, b1, b2 = 1..4 ("spin up at that setting"); singles and cross pairs."""
    return EventScenario(4, ((1,), (2,), (3,), (4,), (1, 3), (1, 4), (2, 3), (2, 4)))


def ch_inequalities() -> tuple[LinearInequality, LinearInequality]:
    """(lower, upper) sides of the CH bound over :func:`ch_scenario`."""
    scenario = ch_scenario()
    terms = {(1, 3): 1, (1, 4): 1, (2, 4): 1, (2, 3): -1, (1,): -1, (4,): -1}
    upper = LinearInequality.from_terms(scenario, terms, 0)
    lower = LinearInequality.from_terms(scenario, {k: -v for k, v in terms.items()}, 1)
    return lower, upper


def quantum_assignment(config: AngleConfig | None = None) -> ProbabilityAssignment:
    """Exact singlet data on :func:`ch_scenario`, the default angles if none given."""
    config = config or AngleConfig.default()
    if not config.exact:
        raise UnsupportedError("the polytope bridge needs exact angles")
    a1, a2, b1, b2 = config.pi_multiples
    plus = Spin.PLUS
    values = (
        singlet_marginal_exact(a1, plus), singlet_marginal_exact(a2, plus),
        singlet_marginal_exact(b1, plus), singlet_marginal_exact(b2, plus),
        singlet_joint_exact(a1, b1, plus, plus), singlet_joint_exact(a1, b2, plus, plus),
        singlet_joint_exact(a2, b1, plus, plus), singlet_joint_exact(a2, b2, plus, plus),
    )
    return ProbabilityAssignment(ch_scenario(), values)


# -- grid scan -------------------------------------------------------------

SCAN_HEADER = "alpha1,alpha2,beta1,beta2,ch_value,lower_violation,upper_violation"


@dataclass(frozen=True)
class ScanReport:
    steps: int
    rows: np.ndarray  # columns follow SCAN_HEADER
    argmax_lower: int
    argmax_upper: int

    @property
    def max_lower_violation(self) -> float:
        return float(self.rows[self.argmax_lower, 5])

    @property
    def max_upper_violation(self) -> float:
        return float(self.rows[self.argmax_upper, 6])

    def __len__(self):
        return self.rows.shape[0]


def scan_ch(steps_per_angle: int) -> ScanReport:
    """Evaluate the singlet CH value on the grid ``{2*pi*k/steps}^4``.

    Rows are ordered by grid index with alpha1 varying slowest.
    """
    steps = int(steps_per_angle)
    if steps < 2:
        raise SizeError("a scan needs at least 2 steps per angle")
    if steps > MAX_SCAN_STEPS:
        raise SizeError(f"a scan supports at most {MAX_SCAN_STEPS} steps per angle")
    grid = TWO_PI * np.arange(steps) / steps
    a1, a2, b1, b2 = (g.ravel() for g in np.meshgrid(grid, grid, grid, grid, indexing="ij"))

    def pp(a, b):
        return 0.5 * np.sin((a - b) / 2.0) ** 2

    total = pp(a1, b1) + pp(a1, b2) + pp(a2, b2) - pp(a2, b1) - 1.0
    lower = np.maximum(0.0, -1.0 - total)
    upper = np.maximum(0.0, total)
    rows = np.column_stack([a1, a2, b1, b2, total, lower, upper])
    return ScanReport(steps, rows, int(np.argmax(lower)), int(np.argmax(upper)))


def write_scan_csv(report: ScanReport, stream) -> None:
    """Write the scan as CSV with shortest round-trip float formatting."""
    stream.write(SCAN_HEADER + "\n")
    for row in report.rows.tolist():
        stream.write(",".join(repr(v) for v in row) + "\n")
