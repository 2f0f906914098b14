import random
from fractions import Fraction

import numpy as np
import pytest

from boolebell.errors import DomainError, SizeError
from boolebell.montecarlo import (
    DEFAULT_SEED,
    empirical_bell_effect,
    empirical_ch,
    empirical_lhv_ch,
    sample_lhv,
    sample_singlet,
)
from boolebell.quantum import AngleConfig, Spin, deterministic_ch, lhv_assignments, lhv_ch
from boolebell.rng import RngSpec

P, M = Spin.PLUS, Spin.MINUS
DEFAULT = AngleConfig.default()


def test_equal_angles_never_agree():
    cfg = AngleConfig(1.0, 2.0, 1.0, 2.0)
    counts = sample_singlet(cfg, (1, 1), 50_000, RngSpec(3))
    assert counts.count((1, 1), P, P) == 0 and counts.count((1, 1), M, M) == 0
    assert counts.trials((1, 1)) == 50_000


def test_singlet_frequency_pi_over_3():
    cfg = AngleConfig.from_pi_multiples(Fraction(1, 3), 0, 0, 0)
    counts = sample_singlet(cfg, (1, 1), 10**6, RngSpec(DEFAULT_SEED))
    assert abs(float(counts.frequency((1, 1), P, P)) - 1 / 8) < 0.005


def test_determinism_and_parallel_agreement():
    spec = RngSpec(11, 4)
    a = sample_singlet(DEFAULT, (2, 1), 200_001, spec)
    b = sample_singlet(DEFAULT, (2, 1), 200_001, spec)
    c = sample_singlet(DEFAULT, (2, 1), 200_001, spec, workers=4)
    assert np.array_equal(a.tables[(2, 1)], b.tables[(2, 1)])
    assert np.array_equal(a.tables[(2, 1)], c.tables[(2, 1)])


def test_setting_validation():
    with pytest.raises(DomainError):
        sample_singlet(DEFAULT, (3, 1), 10, RngSpec(0))
    with pytest.raises(SizeError):
        sample_singlet(DEFAULT, (1, 1), 0, RngSpec(0))


def test_empirical_ch_small_sample_reports_error():
    est = empirical_ch(DEFAULT, 100, RngSpec(1))
    assert est.standard_error > 0
    with pytest.raises(SizeError):
        empirical_ch(DEFAULT, 99, RngSpec(1))


def test_degenerate_config_stays_on_boundary():
    cfg = AngleConfig(0.7, 0.7, 0.7, 0.7)
    for seed in range(100):
        est = empirical_ch(cfg, 20_000, RngSpec(seed))
        assert est.estimate >= -1 - 3 * est.standard_error


def test_lhv_point_mass():
    mixing = [1] + [0] * 15
    counts = sample_lhv(mixing, 1000, RngSpec(2))
    for setting, table in counts.tables.items():
        assert table[0, 0] == 1000
    expected = deterministic_ch(lhv_assignments()[0]).total
    assert empirical_lhv_ch(mixing, 1000, RngSpec(2)).estimate == expected


def test_lhv_mixing_validation():
    with pytest.raises(DomainError):
        sample_lhv([Fraction(1, 8)] * 16, 10, RngSpec(0))
    with pytest.raises(DomainError):
        sample_lhv([1, -1] + [Fraction(1, 14)] * 14, 10, RngSpec(0))


def test_lhv_estimates_track_exact_value():
    rng = random.Random(5)
    for k in range(5):
        raw = [rng.randint(0, 9) for _ in range(16)]
        raw[0] += 1
        mixing = [Fraction(r, sum(raw)) for r in raw]
        est = empirical_lhv_ch(mixing, 200_000, RngSpec(k))
        exact = lhv_ch(mixing).total
        assert abs(est.estimate - float(exact)) < 5 * est.standard_error + 1e-12
        assert est.estimate >= -1 - 3 * est.standard_error


def test_bell_effect_exact_condition_one():
    freqs = empirical_bell_effect(1000, RngSpec(8))
    assert freqs.frequency("AA") == 1


def test_bell_effect_deterministic():
    a = empirical_bell_effect(5000, RngSpec(8))
    b = empirical_bell_effect(5000, RngSpec(8), workers=3)
    assert a == b
