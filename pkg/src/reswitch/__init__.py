"""Exact-arithmetic analysis of technique choice in dated-labor production
models: cost polynomials, switch points, dominance and reswitching over the
interest axis, factor-price aggregation with single-switch verification,
complementary input detection, and a seeded falsification harness.
"""

from .complementarity import (
    ComplementarityWitness,
    TechniqueChoice,
    chosen_input_vector,
    complementarity_witness,
    find_complementary_pair,
)
from .errors import (
    DivisionByZeroError,
    DomainError,
    HorizonMismatchError,
    IdenticalTechniquesError,
    ModelFormatError,
    NoRootError,
    NonScalarComplementError,
    NotAggregableError,
    ReswitchError,
    ZeroPolynomialError,
)
from .factorspace import (
    AggregateCurvePoint,
    Crossing,
    CurveMinimum,
    FactorGroup,
    TheoremVerdict,
    aggregate_price,
    curve_minimum,
    interest_rates_for_relative_price,
    leontief_sono_check,
    relative_price_curve,
    scalar_complement_lag,
    support_groups,
    symmetric_interest_pairs,
    verify_single_switch,
)
from .harness import (
    FalsificationReport,
    GeneratorConfig,
    generate_technology,
    run_falsification,
    trial_seed,
)
from .model import FactorPricePoint, Technique, TechnologySet, samuelson_example
from .polynomial import (
    EVEN,
    ODD,
    Polynomial,
    RootInterval,
    isolate_real_roots,
    isolate_roots_closed,
    refine_root,
)
from .rationals import format_fixed, parse_rational, round_half_away
from .switching import (
    Boundary,
    DominanceMap,
    ReswitchReport,
    Segment,
    SwitchPoint,
    Tangency,
    cost_ratio_curve,
    detect_reswitching,
    dominance_map,
    pairwise_switch_points,
    pairwise_tangencies,
)

__all__ = [
    "AggregateCurvePoint",
    "Boundary",
    "ComplementarityWitness",
    "Crossing",
    "CurveMinimum",
    "DivisionByZeroError",
    "DominanceMap",
    "DomainError",
    "EVEN",
    "FactorGroup",
    "FactorPricePoint",
    "FalsificationReport",
    "GeneratorConfig",
    "HorizonMismatchError",
    "IdenticalTechniquesError",
    "ModelFormatError",
    "NoRootError",
    "NonScalarComplementError",
    "NotAggregableError",
    "ODD",
    "Polynomial",
    "ReswitchError",
    "ReswitchReport",
    "RootInterval",
    "Segment",
    "SwitchPoint",
    "Tangency",
    "Technique",
    "TechniqueChoice",
    "TechnologySet",
    "TheoremVerdict",
    "ZeroPolynomialError",
    "aggregate_price",
    "chosen_input_vector",
    "complementarity_witness",
    "cost_ratio_curve",
    "curve_minimum",
    "detect_reswitching",
    "dominance_map",
    "find_complementary_pair",
    "format_fixed",
    "generate_technology",
    "interest_rates_for_relative_price",
    "isolate_real_roots",
    "isolate_roots_closed",
    "leontief_sono_check",
    "pairwise_switch_points",
    "pairwise_tangencies",
    "parse_rational",
    "refine_root",
    "relative_price_curve",
    "round_half_away",
    "run_falsification",
    "samuelson_example",
    "scalar_complement_lag",
    "support_groups",
    "symmetric_interest_pairs",
    "trial_seed",
    "verify_single_switch",
]
