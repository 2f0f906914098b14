"""Boole-type probability bounds, exact correlation-polytope membership and the Bell effect."""

__version__ = "0.1.0"

from .bounds import (
    BoundsReport,
    bonferroni_inequality,
    bonferroni_lower,
    boole_intersection_bounds,
    boole_union_bounds,
    complement_transform,
    generate_bonferroni_family,
)
from .core import (
    AtomDistribution,
    EventScenario,
    Interval,
    LinearInequality,
    ProbabilityAssignment,
    Rational,
    assignment_from_distribution,
    enumerate_atoms,
    inclusion_exclusion_union,
)
from .game import (
    CorrelationTarget,
    MixingSolution,
    enumerate_joint_strategies,
    reduce_strategies,
    same_result_profile,
    solve_mixing,
)
from .polytope import (
    MembershipVerdict,
    check_membership,
    derive_bell_wigner,
    enumerate_vertices,
    extremize_over_polytope,
    verify_certificate,
)
from .quantum import (
    AngleConfig,
    ChBreakdown,
    Spin,
    bell_effect_same_prob,
    ch_value,
    scan_ch,
    singlet_joint,
    singlet_marginal,
)
from .rng import RngSpec
from .montecarlo import (
    empirical_bell_effect,
    empirical_ch,
    sample_lhv,
    sample_singlet,
)

__all__ = [
    "__version__",
    "BoundsReport",
    "bonferroni_inequality",
    "bonferroni_lower",
    "boole_intersection_bounds",
    "boole_union_bounds",
    "complement_transform",
    "generate_bonferroni_family",
    "AtomDistribution",
    "EventScenario",
    "Interval",
    "LinearInequality",
    "ProbabilityAssignment",
    "Rational",
    "assignment_from_distribution",
    "enumerate_atoms",
    "inclusion_exclusion_union",
    "CorrelationTarget",
    "MixingSolution",
    "enumerate_joint_strategies",
    "reduce_strategies",
    "same_result_profile",
    "solve_mixing",
    "MembershipVerdict",
    "check_membership",
    "derive_bell_wigner",
    "enumerate_vertices",
    "extremize_over_polytope",
    "verify_certificate",
    "AngleConfig",
    "ChBreakdown",
    "Spin",
    "bell_effect_same_prob",
    "ch_value",
    "scan_ch",
    "singlet_joint",
    "singlet_marginal",
    "RngSpec",
    "empirical_bell_effect",
    "empirical_ch",
    "sample_lhv",
    "sample_singlet",
]
