"""Membership in the correlation polytope, with witnesses and certificates.

A probability assignment over a family of subsets is classically realizable
iff some distribution over atoms reproduces it, i.e. iff the vector lies in
the convex hull of the atom vertices. ``check_membership`` decides this with
the exact simplex and returns either the realizing distribution or a valid
linear inequality that the assignment violates.

Certificates come from a second LP that shoots a ray from the polytope's
centroid through the queried point and returns the supporting inequality
where the ray leaves the polytope. An optimal basic solution of that LP is a
facet, so the reported inequality is a sharp Boole-type condition rather
than an arbitrary separating hyperplane. The raw phase-one Farkas vector is
kept on the verdict as well.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import (
    MAX_ATOM_EVENTS,
    AtomDistribution,
    EventScenario,
    Interval,
    LinearInequality,
    ProbabilityAssignment,
    as_rational,
    assignment_from_distribution,
    atom_coordinates,
    enumerate_atoms,
    subset_mask,
)
from .errors import ScenarioError, SizeError
from .simplex import OPTIMAL, solve_lp

INSIDE = "inside"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Vertex:
    atom: int
    coordinates: tuple[int, ...]


@dataclass(frozen=True)
class MembershipVerdict:
    status: str
    assignment: ProbabilityAssignment
    witness: AtomDistribution | None = None
    certificate: LinearInequality | None = None
    violation: Fraction | None = None
    farkas: LinearInequality | None = None

    @property
    def inside(self) -> bool:
        return self.status == INSIDE


def enumerate_vertices(scenario: EventScenario) -> list[Vertex]:
    if scenario.n > MAX_ATOM_EVENTS:
        raise SizeError(f"vertex enumeration needs n <= {MAX_ATOM_EVENTS}")
    family = scenario.family
    return [Vertex(a, atom_coordinates(a, family)) for a in enumerate_atoms(scenario.n)]


def _constraint_matrix(scenario: EventScenario):
    # row 0 is normalization, row k+1 is family subset k; one column per atom
    atoms = enumerate_atoms(scenario.n)
    masks = [subset_mask(s) for s in scenario.family]
    A = [[Fraction(1)] * len(atoms)]
    for m in masks:
        A.append([Fraction(int(a & m == m)) for a in atoms])
    return A


def _inequality_from_dual(scenario: EventScenario, y: Sequence[Fraction]) -> LinearInequality:
    # y.(1, v) <= 0 on every vertex  <=>  sum_S y_S v_S <= -y_0
    return LinearInequality(scenario, tuple(y[1:]), -y[0])


def _centroid(scenario: EventScenario) -> tuple[Fraction, ...]:
    return assignment_from_distribution(AtomDistribution.uniform(scenario.n), scenario).values


def separating_inequality(assignment: ProbabilityAssignment) -> LinearInequality | None:
    """Facet crossed by the segment from the centroid to ``assignment``.

    Returns ``None`` when the assignment is inside the polytope. The LP is
    ``max mu  s.t.  (1, p) - mu (1, q) in cone(vertices)`` with ``q`` the
    centroid; its optimal dual ``y`` is normalized by ``y.(1, q) = -1`` and
    gives the inequality.
    """
    scenario = assignment.scenario
    A = _constraint_matrix(scenario)
    q = (Fraction(1),) + _centroid(scenario)
    for row, qk in zip(A, q):
        row.extend((qk, -qk))
    n_atoms = 1 << scenario.n
    cost = [Fraction(0)] * n_atoms + [Fraction(-1), Fraction(1)]
    b = (Fraction(1),) + assignment.values
    result = solve_lp(A, b, cost)
    if result.status != OPTIMAL:
        raise RuntimeError(f"separation LP ended {result.status}")
    mu = result.x[n_atoms] - result.x[n_atoms + 1]
    if mu >= 0:
        return None
    return _inequality_from_dual(scenario, result.duals).canonical()


def check_membership(assignment: ProbabilityAssignment) -> MembershipVerdict:
    """Decide exactly whether some atom distribution reproduces ``assignment``."""
    scenario = assignment.scenario
    A = _constraint_matrix(scenario)
    b = (Fraction(1),) + assignment.values
    result = solve_lp(A, b)
    if result.status == OPTIMAL:
        witness = AtomDistribution(scenario.n, result.x)
        return MembershipVerdict(INSIDE, assignment, witness=witness)

    farkas = _inequality_from_dual(scenario, result.farkas).canonical()
    certificate = separating_inequality(assignment)
    if certificate is None:
        raise RuntimeError("phase one reported infeasible but the separation LP did not")
    violation = certificate.violation(assignment)
    return MembershipVerdict(OUTSIDE, assignment, certificate=certificate,
                             violation=violation, farkas=farkas)


def verify_certificate(assignment: ProbabilityAssignment, certificate: LinearInequality) -> bool:
    """True iff ``certificate`` holds on every vertex and fails on ``assignment``.

    Independent of the LP: a plain loop over all 2**n atoms.
    """
    if certificate.scenario != assignment.scenario:
        raise ScenarioError("certificate and assignment use different scenarios")
    return certificate.holds_on_atoms() and certificate.violation(assignment) > 0


def derive_bell_wigner() -> LinearInequality:
    """``P(1,3) + P(2,3) - P(1,2) <= P(3)`` obtained from Bonferroni at n = 3."""
    from .bounds import bonferroni_inequality, complement_transform

    return complement_transform(bonferroni_inequality(3), (3,)).canonical()


# -- extremization ---------------------------------------------------------

def union_objective(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(a != 0)) for a in enumerate_atoms(n))


def intersection_objective(n: int) -> tuple[Fraction, ...]:
    full = (1 << n) - 1
    return tuple(Fraction(int(a == full)) for a in enumerate_atoms(n))


def subset_objective(n: int, subset: Sequence[int]) -> tuple[Fraction, ...]:
    m = subset_mask(subset)
    return tuple(Fraction(int(a & m == m)) for a in enumerate_atoms(n))


@dataclass(frozen=True)
class ExtremizeResult:
    feasible: bool
    interval: Interval | None = None
    minimizer: AtomDistribution | None = None
    maximizer: AtomDistribution | None = None
    infeasibility: MembershipVerdict | None = None


def extremize_over_polytope(scenario: EventScenario,
                            objective: Sequence | Callable[[int], object],
                            known) -> ExtremizeResult:
    """Exact range of a per-atom objective over distributions matching ``known``.

    ``objective`` gives the value of the target on each atom (a sequence of
    2**n numbers or a callable on the atom bitmask); see
    :func:`union_objective` and friends. ``known`` is a
    :class:`ProbabilityAssignment` over ``scenario`` or a plain sequence of
    values aligned with ``scenario.family``. Inconsistent data is not an
    error: the result carries the membership verdict with its certificate.
    """
    if not isinstance(known, ProbabilityAssignment):
        known = ProbabilityAssignment(scenario, tuple(known))
    elif known.scenario != scenario:
        raise ScenarioError("known values belong to a different scenario")
    atoms = enumerate_atoms(scenario.n)
    if callable(objective):
        coeffs = [as_rational(objective(a)) for a in atoms]
    else:
        coeffs = [as_rational(v) for v in objective]
    if len(coeffs) != len(atoms):
        raise SizeError(f"objective needs {len(atoms)} per-atom values, got {len(coeffs)}")

    A = _constraint_matrix(scenario)
    b = (Fraction(1),) + known.values
    low = solve_lp(A, b, coeffs)
    if low.status != OPTIMAL:
        return ExtremizeResult(False, infeasibility=check_membership(known))
    high = solve_lp(A, b, [-v for v in coeffs])
    return ExtremizeResult(
        True,
        interval=Interval(low.objective, -high.objective),
        minimizer=AtomDistribution(scenario.n, low.x),
        maximizer=AtomDistribution(scenario.n, high.x),
    )
