"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (with the tolerance and the
measured runtime where a limit applies) before asserting, so the verdicts are
visible in a plain ``pytest`` run. Run just this file with::

    pytest tests/test_acceptance.py -v
"""
import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from boolebell.bounds import bonferroni_inequality, complement_transform, generate_bonferroni_family
from boolebell.cli import main
from boolebell.core import (
    AtomDistribution,
    EventScenario,
    LinearInequality,
    ProbabilityAssignment,
    assignment_from_distribution,
    enumerate_atoms,
    inclusion_exclusion_union,
)
from boolebell.game import solve_mixing
from boolebell.montecarlo import DEFAULT_SEED, empirical_bell_effect, empirical_ch, empirical_lhv_ch
from boolebell.polytope import (
    check_membership,
    extremize_over_polytope,
    intersection_objective,
    union_objective,
    verify_certificate,
)
from boolebell.quantum import (
    AngleConfig,
    ch_inequalities,
    ch_scenario,
    ch_value,
    deterministic_ch,
    lhv_assignments,
    lhv_ch,
    quantum_assignment,
)
from boolebell.rng import RngSpec

from conftest import random_distribution, random_rational

F = Fraction


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail="", elapsed=None, limit=None):
        timing = ""
        if elapsed is not None:
            timing = f" [{elapsed:.2f} s" + (f", limit {limit} s]" if limit else "]")
            if limit is not None and elapsed >= limit:
                ok = False
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title}: {detail}{timing}")
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def test_criterion_01_game_infeasibility(report):
    t0 = time.perf_counter()
    sol = solve_mixing((1, F(3, 4), F(3, 4), F(1, 4)))
    elapsed = time.perf_counter() - t0
    ok = (sol.weights == (F(3, 8), F(3, 8), F(-1, 8), F(3, 8))
          and sol.feasible is False and sol.negative_components == ("gamma",))
    report(1, "game infeasibility", ok,
           f"weights {tuple(map(str, sol.weights))}, flagged {sol.negative_components}, exact",
           elapsed, 1)


def test_criterion_02_bell_violation(report):
    t0 = time.perf_counter()
    config = AngleConfig.default()
    exact = ch_value(config, exact=True)
    floating = ch_value(config)
    elapsed = time.perf_counter() - t0
    ok = (exact.total == F(-9, 8) and exact.lower_violation == F(1, 8)
          and abs(floating.total - (-9 / 8)) <= 1e-12
          and abs(floating.lower_violation - 1 / 8) <= 1e-12)
    report(2, "Bell violation", ok,
           f"exact total {exact.total}, float total {floating.total!r} (tol 1e-12), "
           f"lower_violation {exact.lower_violation}", elapsed, 1)


def test_criterion_03_classical_bound(report):
    rng = random.Random(3)
    tables = lhv_assignments()
    ok = len(tables) == 16 and len(set(tables)) == 16
    for t in tables:
        # oracle: the CH combination written out on 0/1 indicators
        a1, a2, b1, b2 = (int(s == "+") for s in t)
        direct = a1 * b1 + a1 * b2 + a2 * b2 - a2 * b1 - a1 - b2
        value = deterministic_ch(t).total
        ok &= value == direct and -1 <= value <= 0
    lo, hi = F(0), F(-1)
    for _ in range(1000):
        raw = [rng.randint(0, 20) for _ in range(16)]
        raw[rng.randrange(16)] += 1
        mixing = [F(r, sum(raw)) for r in raw]
        value = lhv_ch(mixing).total
        lo, hi = min(lo, value), max(hi, value)
        ok &= isinstance(value, Fraction) and -1 <= value <= 0
    report(3, "classical bound", ok,
           f"16 tables and 1000 mixings in [-1, 0] exactly; observed range [{lo}, {hi}]")


def _vertex_mixture(rng, scenario):
    atoms = rng.sample(enumerate_atoms(scenario.n), rng.randint(1, 1 << scenario.n))
    raw = {a: rng.randint(1, 9) for a in atoms}
    total = sum(raw.values())
    dist = AtomDistribution.from_mapping(scenario.n, {a: F(w, total) for a, w in raw.items()})
    return assignment_from_distribution(dist, scenario)


def _witness_reproduces(verdict):
    w = verdict.witness
    return (verdict.inside and w is not None
            and assignment_from_distribution(w, verdict.assignment.scenario) == verdict.assignment)


def test_criterion_04_polytope_rejection(report):
    t0 = time.perf_counter()
    scenario = ch_scenario()
    q = quantum_assignment()
    expected = ProbabilityAssignment(scenario, (F(1, 2),) * 4 + (F(1, 8), F(1, 8), F(1, 2), F(1, 8)))
    verdict = check_membership(q)
    lower, _ = ch_inequalities()
    ok = (q == expected and not verdict.inside
          and verify_certificate(q, verdict.certificate)
          and verify_certificate(q, verdict.farkas)
          and verdict.violation == F(1, 8)
          and verdict.certificate.equivalent(lower))

    rng = random.Random(4)
    vertices_ok = all(
        _witness_reproduces(check_membership(
            assignment_from_distribution(AtomDistribution.point_mass(4, a), scenario)))
        for a in enumerate_atoms(4)
    )
    mixtures_ok = all(_witness_reproduces(check_membership(_vertex_mixture(rng, scenario)))
                      for _ in range(1000))
    elapsed = time.perf_counter() - t0
    report(4, "polytope rejection", ok and vertices_ok and mixtures_ok,
           f"certificate '{verdict.certificate}' violation {verdict.violation}; "
           f"16 vertices ok={vertices_ok}, 1000 mixtures ok={mixtures_ok}", elapsed, 5)


def test_criterion_05_boole_tightness(report):
    t0 = time.perf_counter()
    rng = random.Random(5)
    failures = 0
    for _ in range(200):
        n = rng.randint(1, 4)
        p = [random_rational(rng, 12) for _ in range(n)]
        scenario = EventScenario.singletons(n)
        union = extremize_over_polytope(scenario, union_objective(n), p).interval
        inter = extremize_over_polytope(scenario, intersection_objective(n), p).interval
        # closed-form oracle
        u_ok = (union.lower, union.upper) == (max(p), min(F(1), sum(p)))
        i_ok = (inter.lower, inter.upper) == (max(F(0), sum(p) - (n - 1)), min(p))
        failures += not (u_ok and i_ok)
    elapsed = time.perf_counter() - t0
    report(5, "Boole tightness", failures == 0,
           f"{200 - failures}/200 marginal vectors match both closed forms exactly", elapsed, 30)


def test_criterion_06_bonferroni_family(report):
    details, ok = [], True
    for n in (2, 3, 4):
        family = generate_bonferroni_family(n)
        canon = {ineq.canonical() for ineq in family}
        valid = all(ineq.holds_on_atoms() for ineq in family)
        ok &= len(family) == 2**n and len(canon) == 2**n and valid
        details.append(f"n={n}: {len(canon)} distinct of {2**n} expected, valid={valid}")
    wigner = LinearInequality.from_terms(
        EventScenario.pairwise(3), {(1, 3): 1, (2, 3): 1, (1, 2): -1, (3,): -1}, 0)
    s3 = generate_bonferroni_family(3)[3]  # order: {}, {1}, {2}, {3}, ...
    wigner_ok = s3.canonical() == wigner.canonical()
    details.append(f"S={{3}} variant '{s3.canonical()}' wigner={wigner_ok}")
    report(6, "Bonferroni family", ok and wigner_ok, "; ".join(details))


def test_criterion_07_inclusion_exclusion(report):
    rng = random.Random(7)
    failures = 0
    for _ in range(100):
        n = rng.randint(1, 6)
        dist = random_distribution(rng, n)
        assignment = assignment_from_distribution(dist, EventScenario.full(n))
        brute = sum((w for a, w in enumerate(dist.weights) if a), F(0))
        failures += inclusion_exclusion_union(assignment) != brute
    report(7, "inclusion-exclusion oracle", failures == 0,
           f"{100 - failures}/100 distributions agree exactly with atom summation")


def test_criterion_08_monte_carlo_quantum_gap(report):
    t0 = time.perf_counter()
    trials = 10**6
    est = empirical_ch(AngleConfig.default(), trials, RngSpec(DEFAULT_SEED))
    freqs = empirical_bell_effect(trials, RngSpec(DEFAULT_SEED))
    elapsed = time.perf_counter() - t0
    target = (1, 0.75, 0.75, 0.25)
    got = [float(f) for f in freqs.as_tuple()]
    ok = (abs(est.estimate + 9 / 8) <= 0.005 and est.estimate < -1.1
          and all(abs(g - t) <= 0.005 for g, t in zip(got, target))
          and freqs.frequency("AA") == 1)
    report(8, "Monte Carlo quantum gap", ok,
           f"seed {DEFAULT_SEED}: CH {est.estimate:.6f} +- {est.standard_error:.6f} "
           f"(tol 0.005, < -1.1); frequencies {[round(g, 6) for g in got]} (tol 0.005, AA exact)",
           elapsed, 30)


def test_criterion_09_monte_carlo_classical_ceiling(report):
    rng = random.Random(9)
    worst = math.inf
    for k in range(50):
        # sparse supports so that some mixtures sit on the -1 facet
        support = rng.sample(range(16), rng.randint(1, 16))
        raw = [rng.randint(1, 10) if i in support else 0 for i in range(16)]
        mixing = [F(r, sum(raw)) for r in raw]
        est = empirical_lhv_ch(mixing, 10**6, RngSpec(DEFAULT_SEED, k), workers=4)
        worst = min(worst, est.estimate)
    report(9, "Monte Carlo classical ceiling", worst >= -1.02,
           f"lowest of 50 estimates {worst:.6f} (floor -1.02)")


def test_criterion_10_cli_golden_files(report, golden_dir, capsys):
    cases = [
        (["game"], "game.txt"),
        (["bell", "--paper-angles"], "bell_default.txt"),
        (["check", str(golden_dir / "game_mapped.txt")], "check_game.txt"),
    ]
    codes, same = [], []
    for argv, golden in cases:
        capsys.readouterr()
        codes.append(main(argv))
        same.append(capsys.readouterr().out == (golden_dir / golden).read_text())
    report(10, "CLI golden files", codes == [1, 1, 1] and all(same),
           f"exit codes {tuple(codes)}, byte-identical {same}")


def test_criterion_06_family_members_are_complement_variants():
    # supporting check, not a criterion: each member is a complement variant of Bonferroni
    for n in (2, 3, 4):
        family = generate_bonferroni_family(n)
        subsets = [c for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)]
        expected = [bonferroni_inequality(n).canonical()] + [
            complement_transform(bonferroni_inequality(n), s).canonical() for s in subsets[1:]]
        assert family == expected
