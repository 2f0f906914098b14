"""Seeded sampling of singlet pairs, LHV mixtures and the three-question game.

Every sampler draws from :class:`~boolebell.rng.RngSpec` streams in fixed
blocks of :data:`~boolebell.rng.BLOCK_SIZE` trials. Block results are merged
by summing integer counts, so ``workers > 1`` returns exactly what a serial
run returns.

Binomial error: a frequency estimated from ``N`` trials has standard error
``sqrt(p (1 - p) / N)``. At ``p = 1/8`` and ``N = 10**6`` that is 3.3e-4, so
a 3-sigma band is about 1e-3 and the acceptance tolerance of 5e-3 is more
than 15 sigma wide. The CH estimate sums six such terms; its error is
reported as the root-sum-square of the per-term errors.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, SizeError
from .quantum import (
    BELL_EFFECT_ANGLES,
    AngleConfig,
    ChBreakdown,
    Spin,
    bell_effect_same_prob,
    ch_combination,
    lhv_assignments,
    singlet_joint,
)
from .rng import RngSpec, blocks

DEFAULT_SEED = 1854
DEFAULT_TRIALS = 10**6

SETTINGS = ((1, 1), (1, 2), (2, 2), (2, 1))
OUTCOMES = ((Spin.PLUS, Spin.PLUS), (Spin.PLUS, Spin.MINUS),
            (Spin.MINUS, Spin.PLUS), (Spin.MINUS, Spin.MINUS))
QUESTION_PAIRS = (("A", "A"), ("A", "B"), ("B", "C"), ("A", "C"))


@dataclass(frozen=True)
class OutcomeCounts:
    """2x2 count tables per setting ``(i, j)``; index 0 is ``+`` and 1 is ``-``."""

    tables: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)

    def trials(self, setting) -> int:
        return int(self.tables[setting].sum())

    def count(self, setting, x, y) -> int:
        return int(self.tables[setting][_spin_index(x), _spin_index(y)])

    def frequency(self, setting, x, y) -> Fraction:
        return Fraction(self.count(setting, x, y), self.trials(setting))

    def merge(self, other: OutcomeCounts) -> OutcomeCounts:
        tables = {k: v.copy() for k, v in self.tables.items()}
        for k, v in other.tables.items():
            tables[k] = tables[k] + v if k in tables else v.copy()
        return OutcomeCounts(tables)


def _spin_index(s) -> int:
    return 0 if Spin(s) == Spin.PLUS else 1


def _setting_angles(config: AngleConfig, setting) -> tuple[float, float]:
    i, j = setting
    if i not in (1, 2) or j not in (1, 2):
        raise DomainError(f"setting must be (i, j) with i, j in {{1, 2}}, got {setting!r}")
    alphas = (config.alpha1, config.alpha2)
    betas = (config.beta1, config.beta2)
    return alphas[i - 1], betas[j - 1]


def _check_trials(trials: int, minimum: int = 1) -> int:
    if not isinstance(trials, (int, np.integer)) or trials < minimum:
        raise SizeError(f"need at least {minimum} trials, got {trials!r}")
    return int(trials)


def _categorical_counts(rng: RngSpec, trials: int, probs: Sequence[float],
                        workers: int = 1) -> np.ndarray:
    """Counts of ``trials`` i.i.d. categorical draws, one uniform per draw."""
    thresholds = np.cumsum(np.asarray(probs, dtype=np.float64))[:-1]
    k = len(probs)

    def one_block(span):
        start, count = span
        u = rng.uniforms(start, count)
        return np.bincount(np.searchsorted(thresholds, u, side="right"), minlength=k)

    spans = list(blocks(trials))
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_block, spans))
    else:
        parts = [one_block(s) for s in spans]
    return np.sum(parts, axis=0, dtype=np.int64)


def sample_singlet(config: AngleConfig, setting, trials: int, rng: RngSpec,
                   workers: int = 1) -> OutcomeCounts:
    """I.i.d. singlet outcomes at one setting ``(i, j)``."""
    trials = _check_trials(trials)
    alpha, beta = _setting_angles(config, setting)
    probs = [singlet_joint(alpha, beta, x, y) for x, y in OUTCOMES]
    counts = _categorical_counts(rng, trials, probs, workers)
    return OutcomeCounts({tuple(setting): counts.reshape(2, 2)})


def sample_singlet_all(config: AngleConfig, trials_per_setting: int, rng: RngSpec,
                       workers: int = 1) -> OutcomeCounts:
    """All four settings, setting ``k`` of :data:`SETTINGS` on ``rng.child(k)``."""
    out = OutcomeCounts()
    for k, setting in enumerate(SETTINGS):
        out = out.merge(sample_singlet(config, setting, trials_per_setting, rng.child(k), workers))
    return out


@dataclass(frozen=True)
class ChEstimate:
    estimate: float
    standard_error: float
    breakdown: ChBreakdown
    counts: OutcomeCounts

    @property
    def lower_sigma(self) -> float:
        """How many standard errors the estimate lies below -1."""
        if self.standard_error == 0:
            return math.inf if self.estimate < -1 else 0.0
        return (-1 - self.estimate) / self.standard_error


def ch_from_counts(counts: OutcomeCounts) -> ChEstimate:
    """Plug empirical frequencies into the CH combination.

    The particle-1 marginal at alpha_1 pools settings (1,1) and (1,2); the
    particle-2 marginal at beta_2 pools (1,2) and (2,2).
    """
    P, M = Spin.PLUS, Spin.MINUS
    terms = []
    for setting in ((1, 1), (1, 2), (2, 2), (2, 1)):
        n = counts.trials(setting)
        terms.append((counts.count(setting, P, P), n))
    ma = sum(counts.count(s, P, P) + counts.count(s, P, M) for s in ((1, 1), (1, 2)))
    na = counts.trials((1, 1)) + counts.trials((1, 2))
    mb = sum(counts.count(s, P, P) + counts.count(s, M, P) for s in ((1, 2), (2, 2)))
    nb = counts.trials((1, 2)) + counts.trials((2, 2))
    terms += [(ma, na), (mb, nb)]

    freqs = [k / n for k, n in terms]
    variance = sum(p * (1 - p) / n for p, (_, n) in zip(freqs, terms))
    breakdown = ch_combination(*freqs)
    return ChEstimate(breakdown.total, math.sqrt(variance), breakdown, counts)


def empirical_ch(config: AngleConfig, trials_per_setting: int, rng: RngSpec,
                 workers: int = 1) -> ChEstimate:
    """CH estimate and standard error from sampled singlet pairs."""
    _check_trials(trials_per_setting, 100)
    return ch_from_counts(sample_singlet_all(config, trials_per_setting, rng, workers))


def _mixing_floats(mixing: Sequence) -> list[float]:
    if len(mixing) != 16:
        raise DomainError(f"an LHV mixing has 16 weights, got {len(mixing)}")
    if any(w < 0 for w in mixing):
        raise DomainError("LHV mixing weights must be nonnegative")
    if all(isinstance(w, (int, Fraction)) for w in mixing):
        if sum(mixing) != 1:
            raise DomainError(f"LHV mixing weights sum to {sum(mixing)}, not 1")
    elif abs(math.fsum(float(w) for w in mixing) - 1.0) > 1e-12:
        raise DomainError("LHV mixing weights must sum to 1")
    return [float(w) for w in mixing]


def sample_lhv(mixing: Sequence, trials_per_setting: int, rng: RngSpec,
               workers: int = 1) -> OutcomeCounts:
    """Local hidden-variable sampling over the 16 deterministic tables.

    Each trial picks a table ``(a1, a2, b1, b2)`` from ``mixing`` (ordered
    as :func:`~boolebell.quantum.lhv_assignments`) and reads off
    ``(a_i, b_j)`` for its setting, so each side's answer depends only on
    its own setting.
    """
    weights = _mixing_floats(mixing)
    trials = _check_trials(trials_per_setting)
    tables = lhv_assignments()
    out = {}
    for k, (i, j) in enumerate(SETTINGS):
        picked = _categorical_counts(rng.child(k), trials, weights, workers)
        table = np.zeros((2, 2), dtype=np.int64)
        for t, n in zip(tables, picked):
            if n:
                a = t[i - 1]
                b = t[2 + j - 1]
                table[_spin_index(a), _spin_index(b)] += n
        out[(i, j)] = table
    return OutcomeCounts(out)


def empirical_lhv_ch(mixing: Sequence, trials_per_setting: int, rng: RngSpec,
                     workers: int = 1) -> ChEstimate:
    return ch_from_counts(sample_lhv(mixing, trials_per_setting, rng, workers))


@dataclass(frozen=True)
class BellEffectFrequencies:
    counts: dict[str, int]
    trials: int

    def frequency(self, pair: str) -> Fraction:
        return Fraction(self.counts[pair], self.trials)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(self.frequency(x + y) for x, y in QUESTION_PAIRS)


def empirical_bell_effect(trials_per_question_pair: int, rng: RngSpec,
                          same_prob: Callable[[float, float], float] = bell_effect_same_prob,
                          workers: int = 1) -> BellEffectFrequencies:
    """Same-answer frequencies for (A,A), (A,B), (B,C), (A,C).

    Questions sit at angles 0, pi/3 and 2pi/3; each trial is one Bernoulli
    draw with success probability ``same_prob(theta_x, theta_y)``.
    """
    trials = _check_trials(trials_per_question_pair)
    counts = {}
    for k, (x, y) in enumerate(QUESTION_PAIRS):
        p = same_prob(float(BELL_EFFECT_ANGLES[x]) * math.pi, float(BELL_EFFECT_ANGLES[y]) * math.pi)
        drawn = _categorical_counts(rng.child(k), trials, [p, 1.0 - p], workers)
        counts[x + y] = int(drawn[0])
    return BellEffectFrequencies(counts, trials)
