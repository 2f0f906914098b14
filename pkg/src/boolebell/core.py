"""Exact event algebra over n abstract events.

Events are numbered 1..n. An *atom* is one truth assignment to all n events,
encoded as a bitmask where bit ``i - 1`` is set iff event ``i`` occurs. Every
probability here is a :class:`fractions.Fraction`; floats are rejected at the
boundary so nothing is ever rounded.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, MissingDataError, ScenarioError, SizeError

Rational = Fraction
Subset = tuple[int, ...]

MAX_ATOM_EVENTS = 20

LE = "<="
GE = ">="


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction without any rounding.

    Accepts ints, Fractions and strings such as ``"3/8"`` or ``"0.125"``.
    Floats are refused: use a string if a decimal literal is intended.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(f"float {value!r} would be inexact; pass a string or Fraction")
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def check_probability(value: Fraction, what: str = "probability") -> Fraction:
    if not 0 <= value <= 1:
        raise DomainError(f"{what} {value} is outside [0, 1]")
    return value


def subset_mask(subset: Iterable[int]) -> int:
    mask = 0
    for i in subset:
        mask |= 1 << (i - 1)
    return mask


def mask_subset(mask: int) -> Subset:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def format_subset(subset: Subset) -> str:
    return "P(" + ",".join(str(i) for i in subset) + ")"


def _canonical_key(subset: Subset):
    return (len(subset), subset)


def enumerate_atoms(n: int) -> list[int]:
    """All 2**n atom bitmasks in ascending order."""
    if not 1 <= n <= MAX_ATOM_EVENTS:
        raise SizeError(f"atom enumeration needs 1 <= n <= {MAX_ATOM_EVENTS}, got {n}")
    return list(range(1 << n))


def atom_coordinates(atom: int, family: Sequence[Subset]) -> tuple[int, ...]:
    """0/1 indicator, per family subset, that the atom contains the subset."""
    return tuple(int(atom & subset_mask(s) == subset_mask(s)) for s in family)


@dataclass(frozen=True)
class EventScenario:
    """``n`` events plus the family of index subsets whose probabilities are known.

    The family is stored in canonical order (by size, then lexicographic)
    regardless of the order it was given in.
    """

    n: int
    family: tuple[Subset, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise SizeError(f"event count must be a positive integer, got {self.n!r}")
        cleaned = []
        for raw in self.family:
            subset = tuple(int(i) for i in raw)
            if not subset:
                raise ScenarioError("empty subset in family")
            if any(b <= a for a, b in zip(subset, subset[1:])):
                raise ScenarioError(f"indices of {subset} are not strictly increasing")
            if subset[0] < 1 or subset[-1] > self.n:
                raise ScenarioError(f"subset {subset} has an index outside 1..{self.n}")
            cleaned.append(subset)
        if len(set(cleaned)) != len(cleaned):
            raise ScenarioError("family contains a repeated subset")
        object.__setattr__(self, "family", tuple(sorted(cleaned, key=_canonical_key)))

    @classmethod
    def full(cls, n: int) -> EventScenario:
        """Every nonempty subset of 1..n."""
        return cls.up_to_order(n, n)

    @classmethod
    def up_to_order(cls, n: int, order: int) -> EventScenario:
        family = [
            s
            for k in range(1, order + 1)
            for s in itertools.combinations(range(1, n + 1), k)
        ]
        return cls(n, tuple(family))

    @classmethod
    def pairwise(cls, n: int) -> EventScenario:
        """Singletons plus all pairs: the data of the Bonferroni bound."""
        return cls.up_to_order(n, 2)

    @classmethod
    def singletons(cls, n: int) -> EventScenario:
        return cls.up_to_order(n, 1)

    def __len__(self):
        return len(self.family)

    def index(self, subset: Iterable[int]) -> int:
        key = tuple(subset)
        try:
            return self._positions[key]
        except KeyError:
            raise MissingDataError(f"{format_subset(key)} is not in the family", [key]) from None

    def __contains__(self, subset) -> bool:
        return tuple(subset) in self._positions

    @property
    def _positions(self) -> dict[Subset, int]:
        cache = self.__dict__.get("_pos_cache")
        if cache is None:
            cache = {s: k for k, s in enumerate(self.family)}
            object.__setattr__(self, "_pos_cache", cache)
        return cache

    @property
    def max_order(self) -> int:
        return max((len(s) for s in self.family), default=0)

    def is_full(self) -> bool:
        return len(self.family) == (1 << self.n) - 1


@dataclass(frozen=True)
class ProbabilityAssignment:
    """One exact probability per subset of ``scenario.family``, aligned by position."""

    scenario: EventScenario
    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        if len(values) != len(self.scenario.family):
            raise ScenarioError(
                f"{len(values)} values for a family of {len(self.scenario.family)} subsets"
            )
        for subset, v in zip(self.scenario.family, values):
            check_probability(v, format_subset(subset))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[Iterable[int], object]) -> ProbabilityAssignment:
        items = {tuple(k): as_rational(v) for k, v in mapping.items()}
        scenario = EventScenario(n, tuple(items))
        return cls(scenario, tuple(items[s] for s in scenario.family))

    def value(self, subset: Iterable[int]) -> Fraction:
        return self.values[self.scenario.index(subset)]

    def __getitem__(self, subset) -> Fraction:
        if isinstance(subset, int):
            subset = (subset,)
        return self.value(subset)

    def as_dict(self) -> dict[Subset, Fraction]:
        return dict(zip(self.scenario.family, self.values))


@dataclass(frozen=True)
class AtomDistribution:
    """Exact weights over the 2**n atoms; nonnegative and summing to one."""

    n: int
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ATOM_EVENTS:
            raise SizeError(f"atom distributions need 1 <= n <= {MAX_ATOM_EVENTS}")
        weights = tuple(as_rational(w) for w in self.weights)
        if len(weights) != 1 << self.n:
            raise SizeError(f"expected {1 << self.n} weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise DomainError("atom weights must be nonnegative")
        if sum(weights) != 1:
            raise DomainError(f"atom weights sum to {sum(weights)}, not 1")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, n: int) -> AtomDistribution:
        w = Fraction(1, 1 << n)
        return cls(n, (w,) * (1 << n))

    @classmethod
    def point_mass(cls, n: int, atom: int) -> AtomDistribution:
        weights = [Fraction(0)] * (1 << n)
        weights[atom] = Fraction(1)
        return cls(n, tuple(weights))

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, object]) -> AtomDistribution:
        weights = [Fraction(0)] * (1 << n)
        for atom, w in mapping.items():
            weights[atom] = as_rational(w)
        return cls(n, tuple(weights))

    def support(self) -> dict[int, Fraction]:
        return {a: w for a, w in enumerate(self.weights) if w}

    def probability_of_mask(self, mask: int) -> Fraction:
        """P(all events in ``mask`` occur)."""
        return sum((w for a, w in enumerate(self.weights) if a & mask == mask), Fraction(0))

    def union_probability(self) -> Fraction:
        return 1 - self.weights[0]

    def intersection_probability(self) -> Fraction:
        return self.weights[-1]


@dataclass(frozen=True)
class Interval:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise DomainError(f"empty interval [{self.lower}, {self.upper}]")

    def __contains__(self, x) -> bool:
        return self.lower <= x <= self.upper

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


@dataclass(frozen=True)
class LinearInequality:
    """``sum(coefficients[k] * p[family[k]]) <= constant`` over a scenario.

    A ``>=`` inequality is stored negated, so ``sense`` is always ``"<="``
    after construction.
    """

    scenario: EventScenario
    coefficients: tuple[Fraction, ...]
    constant: Fraction
    sense: str = LE

    def __post_init__(self):
        coeffs = tuple(as_rational(c) for c in self.coefficients)
        constant = as_rational(self.constant)
        if len(coeffs) != len(self.scenario.family):
            raise ScenarioError(
                f"{len(coeffs)} coefficients for a family of {len(self.scenario.family)} subsets"
            )
        if self.sense == GE:
            coeffs = tuple(-c for c in coeffs)
            constant = -constant
        elif self.sense != LE:
            raise ValueError(f"sense must be '<=' or '>=', got {self.sense!r}")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "constant", constant)
        object.__setattr__(self, "sense", LE)

    @classmethod
    def from_terms(cls, scenario: EventScenario, terms: Mapping[Iterable[int], object],
                   constant=0, sense: str = LE) -> LinearInequality:
        coeffs = [Fraction(0)] * len(scenario.family)
        for subset, c in terms.items():
            coeffs[scenario.index(tuple(subset))] += as_rational(c)
        return cls(scenario, tuple(coeffs), as_rational(constant), sense)

    def terms(self) -> dict[Subset, Fraction]:
        return {s: c for s, c in zip(self.scenario.family, self.coefficients) if c}

    def lhs(self, values) -> Fraction:
        if isinstance(values, ProbabilityAssignment):
            if values.scenario != self.scenario:
                raise ScenarioError("assignment and inequality use different scenarios")
            values = values.values
        return sum((c * v for c, v in zip(self.coefficients, values) if c), Fraction(0))

    def violation(self, values) -> Fraction:
        """``lhs - constant``; positive exactly when the inequality fails."""
        return self.lhs(values) - self.constant

    def holds(self, values) -> bool:
        return self.violation(values) <= 0

    def holds_on_atoms(self) -> bool:
        """Exhaustive check over all 2**n atom vertices."""
        family = self.scenario.family
        return all(
            self.holds(atom_coordinates(a, family)) for a in enumerate_atoms(self.scenario.n)
        )

    def canonical(self) -> LinearInequality:
        """Scale by a positive factor to coprime integer coefficients and constant."""
        numbers = list(self.coefficients) + [self.constant]
        lcm = 1
        for x in numbers:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ints = [int(x * lcm) for x in numbers]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g == 0:
            return self
        return LinearInequality(
            self.scenario, tuple(Fraction(v, g) for v in ints[:-1]), Fraction(ints[-1], g)
        )

    def equivalent(self, other: LinearInequality) -> bool:
        """Same inequality up to positive scaling."""
        return self.scenario == other.scenario and self.canonical() == other.canonical()

    def __str__(self):
        return format_inequality(self)


def format_inequality(ineq: LinearInequality) -> str:
    parts = []
    for subset, c in ineq.terms().items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_subset(subset) if mag == 1 else f"{mag}*{format_subset(subset)}"
        parts.append((sign, body))
    if not parts:
        text = "0"
    else:
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
    return f"{text} <= {ineq.constant}"


def assignment_from_distribution(dist: AtomDistribution,
                                 scenario: EventScenario) -> ProbabilityAssignment:
    """Marginalize atom weights onto every subset of the scenario family."""
    if dist.n != scenario.n:
        raise ScenarioError(f"distribution has n={dist.n}, scenario has n={scenario.n}")
    return ProbabilityAssignment(
        scenario, tuple(dist.probability_of_mask(subset_mask(s)) for s in scenario.family)
    )


def inclusion_exclusion_union(assignment: ProbabilityAssignment) -> Fraction:
    """P(A_1 or ... or A_n) from the probabilities of every intersection.

    Alternating sum over subset sizes: singles minus pairs plus triples and
    so on. Raises :class:`MissingDataError` naming the absent subsets when
    the family is not complete.
    """
    scenario = assignment.scenario
    n = scenario.n
    missing = [
        s
        for k in range(1, n + 1)
        for s in itertools.combinations(range(1, n + 1), k)
        if s not in scenario
    ]
    if missing:
        shown = ", ".join(format_subset(s) for s in missing[:8])
        more = f" and {len(missing) - 8} more" if len(missing) > 8 else ""
        raise MissingDataError(f"inclusion-exclusion needs every intersection; missing {shown}{more}",
                               missing)
    total = Fraction(0)
    for subset, value in assignment.as_dict().items():
        total += value if len(subset) % 2 else -value
    return total
