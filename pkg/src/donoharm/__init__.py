"""Exact decision analysis under an asymmetric, status-quo-favoring utility.

The library evaluates binary treatment choices in three ways that agree
under symmetric preferences and can disagree, even in sign, under
asymmetric ones, depending on whether outcome randomness lives within
units or across units.  All core arithmetic is exact rational; a seeded
Monte Carlo oracle provides an independent approximate check.
"""

from .engine import (
    DEFAULT_ASYMMETRY,
    DEFAULT_UTILITY,
    EvaluationResult,
    ParadoxReport,
    asymmetric_relative_utility,
    classical_expected_utility,
    deterministic_view_of,
    evaluate_deterministic,
    evaluate_population,
    evaluate_stochastic_unit,
    paradox_report,
    population_marginals,
)
from .lottery import (
    Chance,
    CoherenceReport,
    Leaf,
    LotteryTree,
    PenaltySpec,
    chance,
    coherence_check,
    nm_value,
    outcome_distribution,
    penalized_value,
    reduce_compound,
)
from .model import (
    AsymmetricUtilitySpec,
    Bernoulli,
    Degenerate,
    ModelError,
    OutcomeUtility,
    PopulationModel,
    Rational,
    StrataDistribution,
    UnitType,
    probability,
    rational,
    validate_population,
)
from .scenario import (
    LotteryPair,
    Report,
    ScenarioError,
    ScenarioFile,
    as_deterministic_view,
    as_population,
    builtin,
    builtin_scenarios,
    load_scenario,
    parse_scenario,
    render_report,
    serialize_scenario,
)
from .simulate import (
    SimulationConfig,
    SimulationEstimate,
    simulate_deterministic,
    simulate_population,
)
from .strata import (
    ChamberParameterization,
    marginals_of,
    strata_from_chambers,
    strata_from_independent_marginals,
    strata_from_joint,
)

__version__ = "0.1.0"
