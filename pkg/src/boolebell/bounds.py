"""Boole's union/intersection bounds and the Bonferroni pairwise family."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import (
    AtomDistribution,
    EventScenario,
    Interval,
    LinearInequality,
    as_rational,
    check_probability,
)
from .errors import DomainError, MissingDataError, SizeError, UnsupportedError

UNION = "union"
INTERSECTION = "intersection"

MAX_FAMILY_EVENTS = 10


@dataclass(frozen=True)
class BoundsReport:
    target: str
    interval: Interval
    witnesses: tuple[AtomDistribution, AtomDistribution] | None = None


def _marginals(marginals: Sequence) -> list[Fraction]:
    values = [as_rational(p) for p in marginals]
    if not values:
        raise SizeError("at least one marginal is required")
    for i, p in enumerate(values, 1):
        check_probability(p, f"P({i})")
    return values


def _witnesses(values, target):
    from .polytope import extremize_over_polytope, intersection_objective, union_objective

    n = len(values)
    objective = union_objective(n) if target == UNION else intersection_objective(n)
    result = extremize_over_polytope(EventScenario.singletons(n), objective, values)
    return result.minimizer, result.maximizer


def boole_union_bounds(marginals: Sequence, witnesses: bool = False) -> BoundsReport:
    """``max p_i <= P(union) <= min(1, sum p_i)``.

    With ``witnesses=True`` the report also carries atom distributions
    attaining each endpoint (found by exact LP, so this is the slow path).
    """
    p = _marginals(marginals)
    interval = Interval(max(p), min(Fraction(1), sum(p)))
    return BoundsReport(UNION, interval, _witnesses(p, UNION) if witnesses else None)


def boole_intersection_bounds(marginals: Sequence, witnesses: bool = False) -> BoundsReport:
    """``max(0, sum p_i - n + 1) <= P(intersection) <= min p_i``."""
    p = _marginals(marginals)
    interval = Interval(max(Fraction(0), sum(p) - len(p) + 1), min(p))
    return BoundsReport(INTERSECTION, interval, _witnesses(p, INTERSECTION) if witnesses else None)


def bonferroni_inequality(n: int) -> LinearInequality:
    """Checkable form ``sum p_i - sum p_ij <= 1`` over the pairwise scenario."""
    scenario = EventScenario.pairwise(n)
    coeffs = tuple(Fraction(1) if len(s) == 1 else Fraction(-1) for s in scenario.family)
    return LinearInequality(scenario, coeffs, Fraction(1))


def bonferroni_lower(singles: Sequence, pairs: Mapping) -> tuple[Fraction, LinearInequality]:
    """Bonferroni's lower bound on the union from singles and pairwise intersections.

    ``pairs`` maps index pairs ``(i, j)`` (1-based, either order) to
    ``P(A_i and A_j)``. Returns the bound together with its checkable
    inequality; since P(union) <= 1, data whose bound exceeds one cannot
    come from any distribution.
    """
    p = _marginals(singles)
    n = len(p)
    table = {}
    for key, value in pairs.items():
        i, j = sorted(key)
        table[(i, j)] = check_probability(as_rational(value), f"P({i},{j})")
    needed = list(itertools.combinations(range(1, n + 1), 2))
    missing = [pair for pair in needed if pair not in table]
    if missing:
        raise MissingDataError(
            "Bonferroni bound needs every pair; missing "
            + ", ".join(f"P({i},{j})" for i, j in missing),
            missing,
        )
    value = sum(p) - sum(table[pair] for pair in needed)
    return value, bonferroni_inequality(n)


def complement_transform(ineq: LinearInequality, complemented: Iterable[int]) -> LinearInequality:
    """Rewrite ``ineq`` with each event in ``complemented`` replaced by its complement.

    Uses ``P(not A_i) = 1 - p_i``, ``P(not A_i and A_j) = p_j - p_ij`` and
    ``P(not A_i and not A_j) = 1 - p_i - p_j + p_ij``, then collects terms
    over the original family. The map is an involution and preserves
    validity on all atoms.
    """
    S = set(complemented)
    scenario = ineq.scenario
    if not S:
        raise DomainError("the complemented set must be nonempty")
    if min(S) < 1 or max(S) > scenario.n:
        raise DomainError(f"complemented indices must lie in 1..{scenario.n}")
    if scenario.max_order > 2:
        raise UnsupportedError("complementation is implemented for singles and pairs only")

    coeffs: dict[tuple[int, ...], Fraction] = {}
    shift = Fraction(0)

    def add(subset, c):
        coeffs[subset] = coeffs.get(subset, Fraction(0)) + c

    for subset, c in ineq.terms().items():
        flipped = [i in S for i in subset]
        if not any(flipped):
            add(subset, c)
        elif len(subset) == 1:
            shift += c
            add(subset, -c)
        elif all(flipped):
            i, j = subset
            shift += c
            add((i,), -c)
            add((j,), -c)
            add(subset, c)
        else:
            kept = subset[1] if flipped[0] else subset[0]
            add((kept,), c)
            add(subset, -c)

    missing = [s for s in coeffs if s not in scenario]
    if missing:
        raise MissingDataError("substitution needs singleton probabilities absent from the family",
                               missing)
    return LinearInequality.from_terms(scenario, coeffs, ineq.constant - shift)


def generate_bonferroni_family(n: int) -> list[LinearInequality]:
    """The Bonferroni inequality and its ``2**n - 1`` complement variants, canonical.

    Ordered by complemented set: the empty set first, then by size and
    lexicographically.
    """
    if not 2 <= n <= MAX_FAMILY_EVENTS:
        raise SizeError(f"family generation supports 2 <= n <= {MAX_FAMILY_EVENTS}, got {n}")
    base = bonferroni_inequality(n)
    family = [base.canonical()]
    for k in range(1, n + 1):
        for S in itertools.combinations(range(1, n + 1), k):
            family.append(complement_transform(base, S).canonical())
    return family
